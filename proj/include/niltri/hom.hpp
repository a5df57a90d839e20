#pragma once

#include <cstdint>
#include <optional>

#include "niltri/algebra.hpp"
#include "niltri/gamma.hpp"
#include "niltri/sltm.hpp"

namespace niltri {

/// Quadratic criterion for Gamma to define a preserving-degree homomorphism
/// A(T) -> A(S): for all 1<=r<=n, 1<=i<k<=m,
///   2 g_ir g_kr + g_kr^2 s_ki = sum_{j<r} t_rj (g_kj g_kr s_ki + g_kj g_ir + g_ij g_kr).
bool key_eq_check(const Sltm& t, const Sltm& s, const GammaMatrix& gamma);

struct DirectHomResult {
  bool ok = false;
  int offending_r = 0;  // first generator whose relation fails, when !ok
};

/// Independent oracle: evaluates the defining relations of A(T) literally on
/// the image elements inside A(S).
DirectHomResult direct_hom_check_detail(const Sltm& t, const Sltm& s, const GammaMatrix& gamma);
bool direct_hom_check(const Sltm& t, const Sltm& s, const GammaMatrix& gamma);

/// True iff gamma is invertible and key_eq_check passes (square case).
bool is_isomorphism(const Sltm& t, const Sltm& s, const GammaMatrix& gamma);

enum class Verified { none, hom, iso };

/// A candidate morphism A(source) -> A(target) with its verification level.
/// Flags are always recomputed from the data, never trusted from input.
struct Morphism {
  Sltm source;
  Sltm target;
  GammaMatrix gamma;
  Verified verified = Verified::none;

  static Morphism make(const Sltm& source, const Sltm& target, const GammaMatrix& gamma);
  static Morphism identity(const Sltm& t);
};

/// Image of an element of A(source) under a verified homomorphism.
Element apply_morphism(const Morphism& f, const Element& a);

/// Inverse morphism with matrix gamma^{-1}; requires verified iso.
Morphism invert_isomorphism(const Morphism& f);

/// g after f; matrix product gamma_g * gamma_f.
Morphism compose(const Morphism& g, const Morphism& f);

enum class IsoSearchStatus { found, exhausted, budget_exceeded };

struct IsoSearchResult {
  IsoSearchStatus status = IsoSearchStatus::exhausted;
  std::optional<GammaMatrix> gamma;
  std::uint64_t nodes = 0;   // visited partial columns
  std::uint64_t prunes = 0;  // partial columns rejected by Key-EQ or rank
};

inline constexpr std::uint64_t kDefaultIsoBudget = 100'000'000;

/// Exhaustive column-wise backtracking search for an isomorphism over a
/// finite field. "exhausted" certifies that no isomorphism exists.
IsoSearchResult iso_search(const Sltm& t, const Sltm& s,
                           std::uint64_t budget = kDefaultIsoBudget);

}  // namespace niltri
