#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "niltri/scalar.hpp"

namespace niltri {

/// Strictly lower triangular n x n matrix over a fixed field; the object
/// codifying an algebra. Only the n(n-1)/2 below-diagonal entries are stored
/// (row-major). Entries use 1-based indices throughout.
class Sltm {
public:
  Sltm(int n, const FieldSpec& field);

  int size() const { return n_; }
  const FieldSpec& field() const { return field_; }

  /// t_{ij}; requires 1 <= j < i <= n.
  const Scalar& at(int i, int j) const;
  void set(int i, int j, const Scalar& v);

  /// t_{ij} extended by zero on and above the diagonal (any 1-based i, j).
  Scalar get(int i, int j) const;

  bool is_zero() const;
  bool operator==(const Sltm& o) const;
  bool operator!=(const Sltm& o) const { return !(*this == o); }

  /// Lexicographic on the stored triangle, row-major, scalars in field order.
  int compare(const Sltm& o) const;
  bool operator<(const Sltm& o) const { return compare(o) < 0; }

  /// Leading k x k submatrix T|_k.
  Sltm restrict_to(int k) const;

  std::string to_text() const;
  nlohmann::json to_json() const;
  static Sltm from_text(const std::string& text);
  static Sltm from_json(const nlohmann::json& j);

private:
  int tri_index(int i, int j) const;  // validates 1 <= j < i <= n

  int n_;
  FieldSpec field_;
  std::vector<Scalar> entries_;
};

/// alpha * u_{ki} + u_{kj} * u_{ji}; requires i < j < k.
Scalar delta(const Sltm& u, const Scalar& alpha, int i, int j, int k);

/// The matrix with ones at (n,1)..(n,l) and zeros elsewhere; 1 <= l < n.
Sltm b_matrix(int n, int l, const FieldSpec& field);

/// All q^{n(n-1)/2} matrices in lexicographic order (finite fields only).
std::vector<Sltm> enumerate_sltm(int n, const FieldSpec& field);

/// Rank of a matrix within the enumerate_sltm order.
std::uint64_t sltm_rank(const Sltm& t);

}  // namespace niltri
