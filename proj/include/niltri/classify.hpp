#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "niltri/eto.hpp"
#include "niltri/hom.hpp"
#include "niltri/sltm.hpp"

namespace niltri {

/// Leaders of U: per nonzero row k, the pair (k, j) with j the rightmost
/// nonzero column. Sorted by k.
std::vector<std::pair<int, int>> leaders(const Sltm& u);

struct LeaderGraph {
  struct Chain {
    bool simple = true;
    std::vector<std::pair<int, int>> arrows;
  };

  int n = 0;
  std::vector<std::pair<int, int>> arrows;   // k -> j, one per nonzero row
  std::vector<int> minimal_vertices;         // exactly the zero rows
  std::vector<std::vector<int>> components;  // partition of {1..n}
  std::vector<Chain> chains;                 // one per component, same order

  /// The simple chain C_k from a vertex down to its unique minimal element.
  std::vector<std::pair<int, int>> chain_from(int k) const;

  /// One "k -> j" line per arrow.
  std::string to_edge_text() const;
};

LeaderGraph leader_graph(const Sltm& u);

struct ZeroClassResult {
  bool in_class = false;
  bool condition1 = false;  // support only in column 1
  bool condition2 = false;  // Delta^(2) vanishes at every leader with j > 1
};

/// Decides A(U) ~ A(0_n).
ZeroClassResult zero_class_check(const Sltm& u);

/// Lower-unitriangular isomorphism A(0_n) -> A(U): gamma(X_k) = Y_k on
/// minimal vertices, gamma(X_k) = -(u_kj/2) gamma(X_j) + Y_k along arrows.
/// Throws NotInZeroClass when the criterion fails.
Morphism zero_class_certificate(const Sltm& u);

/// Q-step sequence carrying U to 0_n: repeatedly clear the smallest nonzero
/// row r0 at its leader (r0,c0) with Q_{(r0,c0)}(., u_{r0c0}/2).
EtoSequence zero_eto_path(const Sltm& u);

/// The canonical isomorphism A(T) -> A(S) for size-2 matrices,
/// Gamma = [[1,(t-s)/2],[0,1]].
Morphism classify_n2(const Sltm& t, const Sltm& s);

enum class N3Class { zero_class, b32_class };

struct N3Result {
  N3Class cls;
  Morphism certificate;  // A(U) -> A(representative)
};

/// Full classification at size 3: B32Class iff u32 != 0 and
/// Delta = 2 u31 + u32 u21 != 0; otherwise the zero class.
N3Result classify_n3(const Sltm& u);

struct CensusOptions {
  std::uint64_t iso_budget = kDefaultIsoBudget;
  bool collect_eto_evidence = false;
  int eto_evidence_depth = 8;
  int members_sample_cap = 5;
};

struct CensusClass {
  Sltm representative;  // lexicographically smallest member
  std::uint64_t size = 0;
  std::vector<std::uint64_t> members_sample;  // enumeration ranks
};

struct MergeCertificate {
  Sltm a;
  Sltm b;
  GammaMatrix gamma;  // verified isomorphism A(a) -> A(b)
  std::optional<std::vector<EtoStep>> eto_path;
};

struct ClassReport {
  int n = 0;
  FieldSpec field = FieldSpec::rationals();
  bool complete = true;  // false when a pair search ran out of budget
  std::vector<CensusClass> classes;
  std::vector<MergeCertificate> phase2_merges;
  std::uint64_t phase1_unions = 0;
  std::uint64_t pair_searches = 0;
  std::uint64_t search_nodes = 0;
  bool eto_evidence_complete = true;

  nlohmann::json to_json() const;
};

/// Exhaustive partition of all strictly lower triangular matrices of size n
/// over a finite field into isomorphism classes. Phase 1 unions single-ETO
/// images; phase 2 settles the remaining representative pairs by exhaustive
/// search, certifying every split.
ClassReport census(int n, const FieldSpec& field, const CensusOptions& opts = {});

struct LowerBoundReport {
  int n = 0;
  FieldSpec field = FieldSpec::rationals();
  bool b1_in_zero_class = false;
  bool verified = false;  // every pair certified non-isomorphic
  std::vector<std::tuple<int, int, bool>> pairs;  // (l, m, exhausted)
  std::uint64_t search_nodes = 0;

  nlohmann::json to_json() const;
};

/// Certifies B_{n,1},...,B_{n,n-1} pairwise non-isomorphic by exhaustion.
LowerBoundReport lower_bound_witnesses(int n, const FieldSpec& field,
                                       std::uint64_t budget = kDefaultIsoBudget);

}  // namespace niltri
