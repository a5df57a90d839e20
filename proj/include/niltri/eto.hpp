#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "niltri/gamma.hpp"
#include "niltri/sltm.hpp"

namespace niltri {

/// One elementary triangular operation.
struct EtoStep {
  struct P {
    int r;
    Scalar alpha;  // nonzero
  };
  struct F {
    int r1;
    int r2;  // r1 < r2
  };
  struct Q {
    int r0;
    int k0;  // k0 < r0
    Scalar beta;
  };

  std::variant<P, F, Q> op;

  static EtoStep p(int r, const Scalar& alpha);
  static EtoStep f(int r1, int r2);
  static EtoStep q(int r0, int k0, const Scalar& beta);

  std::string to_string() const;
  nlohmann::json to_json() const;
  static EtoStep from_json(const nlohmann::json& j, const FieldSpec& field);

  /// "P r alpha" | "F r1 r2" | "Q r0 k0 beta".
  static EtoStep parse(const std::string& text, const FieldSpec& field);
};

/// Row r1 divided by alpha, column r1 multiplied by alpha.
Sltm apply_p(const Sltm& t, int r1, const Scalar& alpha);

/// F admissibility: t_{r2,j} = 0 for j >= r1 and t_{r,r1} = 0 for r1 < r < r2.
bool f_well_defined(const Sltm& t, int r1, int r2);
Sltm apply_f(const Sltm& t, int r1, int r2);

/// Q admissibility: row r0 vanishes right of k0, and k0 = 1 or
/// Delta^(1)_{i,k0,r0}(T) = beta * t_{k0,i} for all i < k0.
bool q_well_defined(const Sltm& t, int r0, int k0, const Scalar& beta);
Sltm apply_q(const Sltm& t, int r0, int k0, const Scalar& beta);

bool step_well_defined(const Sltm& t, const EtoStep& step);
Sltm apply_step(const Sltm& t, const EtoStep& step);

/// The elementary matrix of the isomorphism attached to a step:
/// identity with alpha at (r,r); the (r1,r2) transposition; identity with
/// beta at (k0,r0).
GammaMatrix step_gamma(const EtoStep& step, int n, const FieldSpec& field);

EtoStep invert_step(const EtoStep& step);

struct EtoSequence {
  std::vector<EtoStep> steps;
  GammaMatrix accumulated_gamma;  // target <- source, product of step matrices
};

/// Applies the steps in order; the accumulated Gamma defines an isomorphism
/// A(T) -> A(final). Throws RestrictionViolated naming the failing step.
std::pair<Sltm, EtoSequence> apply_sequence(const Sltm& t, const std::vector<EtoStep>& steps);

std::vector<EtoStep> parse_step_sequence(const std::string& text, const FieldSpec& field);
std::string steps_to_string(const std::vector<EtoStep>& steps);

struct EtoSearchResult {
  std::optional<std::vector<EtoStep>> path;  // T -> S when found
  std::uint64_t visited = 0;
};

/// Bidirectional breadth-first search over the ETO move graph of a finite
/// field; moves enumerate every admissible P, F and Q with scalars over the
/// whole field. depth bounds the total path length.
EtoSearchResult eto_equiv_search(const Sltm& t, const Sltm& s, int depth);

}  // namespace niltri
