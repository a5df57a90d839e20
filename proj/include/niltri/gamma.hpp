#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "niltri/scalar.hpp"

namespace niltri {

/// Dense m x n scalar matrix; column j holds the coordinates of the image of
/// the j-th source generator. 1-based accessors.
class GammaMatrix {
public:
  GammaMatrix(int rows, int cols, const FieldSpec& field);

  static GammaMatrix identity(int n, const FieldSpec& field);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  const Scalar& at(int i, int j) const { return entries_[index(i, j)]; }
  void set(int i, int j, const Scalar& v);

  GammaMatrix operator*(const GammaMatrix& o) const;
  bool operator==(const GammaMatrix& o) const;
  bool operator!=(const GammaMatrix& o) const { return !(*this == o); }

  /// Exact determinant by Gaussian elimination (square only).
  Scalar determinant() const;

  /// Exact inverse; throws Singular.
  GammaMatrix inverse() const;

  nlohmann::json to_json() const;
  static GammaMatrix from_json(const nlohmann::json& j, const FieldSpec& field);

  std::string to_string() const;

private:
  std::size_t index(int i, int j) const;

  int rows_;
  int cols_;
  FieldSpec field_;
  std::vector<Scalar> entries_;
};

}  // namespace niltri
