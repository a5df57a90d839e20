#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "niltri/error.hpp"

namespace niltri {

using BigRational = boost::multiprecision::cpp_rational;

enum class FieldKind { prime, rational };

/// Handle for the ground field: F_p with p an odd prime, or the rationals.
/// Characteristic 2 is rejected at construction.
class FieldSpec {
public:
  static FieldSpec prime(std::int64_t p);
  static FieldSpec rationals();

  /// Accepts "q<p>" (e.g. "q5") or "rational".
  static FieldSpec parse(const std::string& text);

  FieldKind kind() const { return kind_; }
  bool is_finite() const { return kind_ == FieldKind::prime; }
  std::int64_t characteristic() const { return kind_ == FieldKind::prime ? p_ : 0; }
  std::int64_t p() const { return p_; }

  std::string to_string() const;

  bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

private:
  FieldSpec(FieldKind k, std::int64_t p) : kind_(k), p_(p) {}
  FieldKind kind_;
  std::int64_t p_;  // 0 in rational mode
};

/// Immutable exact field element in canonical form: residue 0..p-1 for prime
/// fields, reduced fraction for rationals. Equality is structural.
class Scalar {
public:
  Scalar() : field_(FieldSpec::rationals()) {}

  static Scalar zero(const FieldSpec& f);
  static Scalar one(const FieldSpec& f);
  static Scalar from_int(const FieldSpec& f, std::int64_t v);
  static Scalar from_rational(const FieldSpec& f, const BigRational& q);

  /// Scalar text syntax: optional sign, decimal integer, optional "/den".
  /// Prime-field values reduce mod p; fractions embed via the modular
  /// inverse of the denominator.
  static Scalar parse(const FieldSpec& f, const std::string& text);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inv() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Total order used for canonical/lexicographic comparisons:
  /// residue order for prime fields, numeric order for rationals.
  int compare(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return compare(o) < 0; }

  std::string to_string() const;

  std::int64_t residue() const { return res_; }
  const BigRational& rational() const { return rat_; }

private:
  Scalar(const FieldSpec& f) : field_(f) {}
  void check_same_field(const Scalar& o) const;

  FieldSpec field_;
  std::int64_t res_ = 0;  // prime mode
  BigRational rat_;       // rational mode
};

/// All p elements of a finite field in residue order 0..p-1.
std::vector<Scalar> enumerate_elements(const FieldSpec& field);

}  // namespace niltri
