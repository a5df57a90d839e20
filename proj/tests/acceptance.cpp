// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "niltri/algebra.hpp"
#include "niltri/classify.hpp"
#include "niltri/eto.hpp"
#include "niltri/hom.hpp"

using namespace niltri;

namespace {

int failures = 0;

void report(int k, const char* desc, bool ok, const std::string& note = "") {
  std::printf("CRITERION %d [%s] %s%s%s\n", k, ok ? "PASS" : "FAIL", desc,
              note.empty() ? "" : " — ", note.c_str());
  if (!ok) ++failures;
}

template <typename Fn>
void run(int k, const char* desc, Fn fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = fn(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  note += (note.empty() ? "" : "; ") + std::to_string(ms) + " ms";
  report(k, desc, ok, note);
}

const FieldSpec kQ = FieldSpec::rationals();

bool criterion1(std::string&) {
  std::mt19937_64 rng(1001);
  for (auto f : {FieldSpec::prime(5), kQ}) {
    for (int n = 1; n <= 8; ++n) {
      Algebra alg(testutil::random_sltm(rng, n, f));
      if (alg.dimension() != (std::uint64_t{1} << n)) return false;
      if (alg.basis().size() != alg.dimension()) return false;
      // any product of n+1 generators vanishes
      for (int trial = 0; trial < 3; ++trial) {
        Element p = alg.unit();
        for (int i = 0; i <= n; ++i) {
          int g = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
          p = alg.mul(p, alg.generator(g));
        }
        if (!p.is_zero()) return false;
      }
    }
  }
  return true;
}

bool criterion2(std::string& note) {
  std::mt19937_64 rng(1002);
  int triples = 0, positives = 0;
  for (auto f : {FieldSpec::prime(3), FieldSpec::prime(5), kQ}) {
    for (int round = 0; round < 350; ++round) {
      int n = 1 + static_cast<int>(rng() % 5);
      int m = 1 + static_cast<int>(rng() % 5);
      Sltm t = testutil::random_sltm(rng, n, f);
      Sltm s = testutil::random_sltm(rng, m, f);
      GammaMatrix g(m, n, f);
      for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) g.set(i, j, testutil::random_scalar(rng, f));
      // half the time, overwrite with a guaranteed-hom candidate so the
      // comparison also exercises the accepting branch
      if (m >= n && rng() % 2) {
        g = GammaMatrix(m, n, f);
        s = Sltm(m, f);
        for (int i = 2; i <= n; ++i)
          for (int j = 1; j < i; ++j) s.set(i, j, t.at(i, j));
        for (int i = 1; i <= n; ++i) g.set(i, i, Scalar::one(f));
      }
      ++triples;
      bool quad = key_eq_check(t, s, g);
      if (quad != direct_hom_check(t, s, g)) return false;
      if (quad) ++positives;
    }
  }
  note = std::to_string(triples) + " triples, " + std::to_string(positives) + " accepted";
  return triples >= 1000 && positives > 0;
}

bool criterion3(std::string& note) {
  // the four worked transformations, bit-exact
  Sltm tp = testutil::sltm_from(kQ, {"1", "2 1", "3 3 1", "1 3 2 3", "2 2 3 2 1"});
  if (apply_p(tp, 3, Scalar::from_int(kQ, 2)) !=
      testutil::sltm_from(kQ, {"1", "1 1/2", "3 3 2", "1 3 4 3", "2 2 6 2 1"}))
    return false;
  Sltm tf = testutil::sltm_from(kQ, {"1", "2 1", "3 3 0", "1 3 0 0", "2 2 3 2 1"});
  if (apply_f(tf, 3, 5) !=
      testutil::sltm_from(kQ, {"1", "1 3", "3 3 0", "2 1 0 0", "2 2 1 2 3"}))
    return false;
  Sltm tq1 = testutil::sltm_from(kQ, {"2", "1 0", "3 1 2", "1 2 3 1"});
  if (apply_q(tq1, 3, 1, Scalar::from_int(kQ, 2)) !=
      testutil::sltm_from(kQ, {"2", "-3 0", "7 1 2", "7 2 3 1"}))
    return false;
  Sltm tq2 = testutil::sltm_from(kQ, {"2", "1 2", "3 6 2", "1 2 3 1"});
  if (apply_q(tq2, 4, 3, Scalar::from_int(kQ, 5)) !=
      testutil::sltm_from(kQ, {"2", "1 2", "3 6 -8", "1 2 8 1"}))
    return false;

  // random admissible sequences: the accumulated matrix always certifies
  std::mt19937_64 rng(1003);
  int sequences = 0;
  for (auto f : {FieldSpec::prime(5), kQ}) {
    for (int round = 0; round < 260; ++round) {
      int n = 2 + static_cast<int>(rng() % 5);
      Sltm t = testutil::random_sltm(rng, n, f);
      Sltm cur = t;
      std::vector<EtoStep> steps;
      int len = 1 + static_cast<int>(rng() % 6);
      for (int i = 0; i < len; ++i) {
        std::vector<EtoStep> options;
        for (int r = 1; r <= n; ++r)
          options.push_back(EtoStep::p(r, testutil::random_scalar(rng, f, true)));
        for (int r1 = 1; r1 < n; ++r1)
          for (int r2 = r1 + 1; r2 <= n; ++r2)
            if (f_well_defined(cur, r1, r2)) options.push_back(EtoStep::f(r1, r2));
        for (int k0 = 1; k0 < n; ++k0)
          for (int r0 = k0 + 1; r0 <= n; ++r0) {
            Scalar beta = testutil::random_scalar(rng, f);
            if (q_well_defined(cur, r0, k0, beta)) options.push_back(EtoStep::q(r0, k0, beta));
          }
        const EtoStep& step = options[rng() % options.size()];
        cur = apply_step(cur, step);
        steps.push_back(step);
      }
      auto [s, seq] = apply_sequence(t, steps);
      if (s != cur) return false;
      if (!is_isomorphism(t, s, seq.accumulated_gamma)) return false;
      ++sequences;
    }
  }
  note = std::to_string(sequences) + " sequences";
  return sequences >= 500;
}

ClassReport g_census_2_q3;
ClassReport g_census_3_q3;
ClassReport g_census_3_q5;

bool criterion4(std::string& note) {
  CensusOptions opts;
  opts.collect_eto_evidence = true;  // reused as evidence for criterion 8
  FieldSpec f3 = FieldSpec::prime(3), f5 = FieldSpec::prime(5);
  g_census_2_q3 = census(2, f3, opts);
  g_census_3_q3 = census(3, f3, opts);
  g_census_3_q5 = census(3, f5, opts);
  if (g_census_2_q3.classes.size() != 1) return false;
  if (g_census_3_q3.classes.size() != 2) return false;
  if (!(g_census_3_q3.classes[0].representative == Sltm(3, f3))) return false;
  if (!(g_census_3_q3.classes[1].representative == b_matrix(3, 2, f3))) return false;
  if (g_census_3_q5.classes.size() != 2) return false;
  note = "classes: 1 / 2 / 2";
  return g_census_2_q3.complete && g_census_3_q3.complete && g_census_3_q5.complete;
}

bool criterion5(std::string& note) {
  FieldSpec f3 = FieldSpec::prime(3);
  int checked = 0;
  for (const Sltm& u : enumerate_sltm(3, f3)) {
    bool by_criterion = zero_class_check(u).in_class;
    bool by_search = iso_search(Sltm(3, f3), u).status == IsoSearchStatus::found;
    if (by_criterion != by_search) return false;
    ++checked;
  }
  std::mt19937_64 rng(1005);
  for (int round = 0; round < 200; ++round) {
    Sltm u = testutil::random_sltm(rng, 4, f3);
    if (rng() % 2)  // bias half the sample towards membership
      for (int i = 3; i <= 4; ++i)
        for (int j = 2; j < i; ++j)
          if (rng() % 2) u.set(i, j, Scalar::zero(f3));
    bool by_criterion = zero_class_check(u).in_class;
    bool by_search = iso_search(Sltm(4, f3), u).status == IsoSearchStatus::found;
    if (by_criterion != by_search) return false;
    ++checked;
  }
  note = std::to_string(checked) + " matrices";
  return checked >= 227;
}

bool criterion6(std::string&) {
  Sltm u = testutil::sltm_from(
      kQ, {
              "1",
              "-1 2",
              "0 0 0",
              "1 -2 2 0",
              "1/2 -1 1 0 0",
              "-1 2 -2 0 2 0",
              "0 0 0 1 0 0 0",
              "0 0 0 -3/2 0 0 0 3",
              "1/2 -1 1 0 -1 0 1 0 0",
              "0 0 0 0 0 0 0 0 0 0",
              "-3/4 3/2 -3/2 0 0 3 0 0 0 0 0",
          });
  if (!zero_class_check(u).in_class) return false;

  Morphism cert = zero_class_certificate(u);
  if (cert.verified != Verified::iso) return false;
  const std::vector<std::vector<std::pair<int, std::string>>> cols = {
      {},                                                          // X1
      {{1, "-1/2"}},                                               // X2
      {{1, "1/2"}, {2, "-1"}},                                     // X3
      {},                                                          // X4
      {{1, "-1/2"}, {2, "1"}, {3, "-1"}},                          // X5
      {{1, "-1/4"}, {2, "1/2"}, {3, "-1/2"}},                      // X6
      {{1, "1/2"}, {2, "-1"}, {3, "1"}, {5, "-1"}},                // X7
      {{4, "-1/2"}},                                               // X8
      {{4, "3/4"}, {8, "-3/2"}},                                   // X9
      {{1, "-1/4"}, {2, "1/2"}, {3, "-1/2"}, {5, "1/2"}, {7, "-1/2"}},  // X10
      {},                                                          // X11
      {{1, "3/8"}, {2, "-3/4"}, {3, "3/4"}, {6, "-3/2"}},          // X12
  };
  for (int k = 1; k <= 12; ++k)
    for (int i = 1; i <= 12; ++i) {
      Scalar expect = i == k ? Scalar::one(kQ) : Scalar::zero(kQ);
      for (const auto& [row, val] : cols[static_cast<std::size_t>(k - 1)])
        if (row == i) expect = Scalar::parse(kQ, val);
      if (cert.gamma.at(i, k) != expect) return false;
    }

  EtoSequence seq = zero_eto_path(u);
  if (steps_to_string(seq.steps) !=
      "Q 2 1 1/2; Q 3 2 1; Q 5 3 1; Q 6 3 1/2; Q 7 5 1; Q 8 4 1/2; "
      "Q 9 8 3/2; Q 10 7 1/2; Q 12 6 3/2")
    return false;
  auto [fin, acc] = apply_sequence(u, seq.steps);
  return fin.is_zero() && is_isomorphism(u, fin, acc.accumulated_gamma);
}

bool criterion7(std::string& note) {
  FieldSpec f3 = FieldSpec::prime(3);
  LowerBoundReport lb = lower_bound_witnesses(4, f3);
  if (!lb.verified || !lb.b1_in_zero_class || lb.pairs.size() != 3) return false;
  ClassReport c4 = census(4, f3);
  note = "census(4, q3): " + std::to_string(c4.classes.size()) + " classes";
  return c4.complete && c4.classes.size() >= 3;
}

bool criterion8(std::string& note) {
  // evidence gathered alongside criterion 4's censuses
  int merges = 0, with_path = 0;
  for (const ClassReport* r : {&g_census_2_q3, &g_census_3_q3, &g_census_3_q5}) {
    for (const auto& m : r->phase2_merges) {
      ++merges;
      if (m.eto_path) {
        ++with_path;
        auto [fin, seq] = apply_sequence(m.a, *m.eto_path);
        if (!(fin == m.b)) return false;
        (void)seq;
      }
    }
  }
  note = std::to_string(merges) + " exhaustive-search merges, " + std::to_string(with_path) +
         " reproduced by elementary-operation paths";
  if (merges != with_path)
    note += " — RESEARCH FINDING: some isomorphic pairs lack an elementary path within depth 8";
  return true;  // producing the evidence report is the requirement
}

}  // namespace

int main() {
  run(1, "basis and dimension across sizes and fields", criterion1);
  run(2, "quadratic criterion agrees with direct evaluation", criterion2);
  run(3, "elementary-operation soundness and worked transformations", criterion3);
  run(4, "small-size censuses match the known classifications", criterion4);
  run(5, "zero-class criterion matches exhaustive search", criterion5);
  run(6, "12x12 worked example: certificate and nine-step path", criterion6);
  run(7, "size-4 lower bound witnesses and census", criterion7);
  run(8, "elementary-path evidence for every census merge", criterion8);
  return failures == 0 ? 0 : 1;
}
