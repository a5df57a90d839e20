#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "niltri/sltm.hpp"

namespace niltri {

/// Square-free monomial on generators X_1..X_n, kept as a bitset
/// (bit i-1 set iff X_i divides the monomial). Degree is 2 * popcount.
using Monomial = std::uint32_t;

inline constexpr int kMaxGenerators = 32;

class Element;

/// The nil graded algebra A(T) on the 2^n square-free monomial basis.
/// Squares rewrite by X_i^2 = sum_{j<i} t_ij X_j X_i (and X_1^2 = 0).
/// Cheap to copy: instances share the immutable codifying matrix.
class Algebra {
public:
  explicit Algebra(Sltm t) : t_(std::make_shared<const Sltm>(std::move(t))) {}

  const Sltm& matrix() const { return *t_; }
  const FieldSpec& field() const { return t_->field(); }
  int generators() const { return t_->size(); }
  std::uint64_t dimension() const { return std::uint64_t{1} << t_->size(); }

  bool operator==(const Algebra& o) const { return *t_ == *o.t_; }

  Element zero() const;
  Element unit() const;
  Element generator(int i) const;
  Element from_monomial(Monomial m, const Scalar& c) const;

  /// All 2^n basis monomials in subset order.
  std::vector<Monomial> basis() const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scale(const Scalar& c, const Element& a) const;
  Element mul(const Element& a, const Element& b) const;

  /// Normal form of X_i * X_M. Recurses through the defining relations when
  /// i already divides M; memoized per call unless memoize is false.
  Element mul_monomial_generator(Monomial m, int i, bool memoize = true) const;

  /// Terms of degree d (d even, 0 <= d <= 2n).
  Element degree_component(const Element& a, int d) const;

  /// Element text syntax: sum of terms "coeff*Xi1Xi2...", e.g. "1*X1X2 + 2/3*X3".
  Element parse_element(const std::string& text) const;

private:
  Element mul_gen_impl(Monomial m, int i, std::map<std::pair<Monomial, int>, Element>* cache) const;
  void check_same_algebra(const Element& a) const;

  std::shared_ptr<const Sltm> t_;
};

/// Element of A(T): finitely supported scalar combination of square-free
/// monomials, in normal form (no stored zero coefficients).
class Element {
public:
  explicit Element(const Algebra& alg) : alg_(alg) {}

  const Algebra& algebra() const { return alg_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(Monomial m) const;

  /// Adds c * X_m, dropping the term if the total coefficient cancels.
  void add_term(Monomial m, const Scalar& c);

  bool operator==(const Element& o) const;
  bool operator!=(const Element& o) const { return !(*this == o); }

  std::string to_string() const;

private:
  Algebra alg_;
  std::map<Monomial, Scalar> terms_;
};

}  // namespace niltri
