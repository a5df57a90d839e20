#include <random>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "helpers.hpp"
#include "niltri/error.hpp"
#include "niltri/eto.hpp"
#include "niltri/hom.hpp"

using namespace niltri;

static const FieldSpec kQ = FieldSpec::rationals();

TEST_CASE("scaling operation on a worked 6x6 matrix") {
  Sltm t = testutil::sltm_from(kQ, {"1", "2 1", "3 3 1", "1 3 2 3", "2 2 3 2 1"});

  Sltm s = apply_p(t, 3, Scalar::from_int(kQ, 2));
  CHECK(s == testutil::sltm_from(
                 kQ, {"1", "1 1/2", "3 3 2", "1 3 4 3", "2 2 6 2 1"}));

  Sltm s1 = apply_p(t, 1, Scalar::from_int(kQ, 3));
  CHECK(s1 == testutil::sltm_from(
                  kQ, {"3", "6 1", "9 3 1", "3 3 2 3", "6 2 3 2 1"}));

  CHECK_THROWS_AS(apply_p(t, 3, Scalar::zero(kQ)), Error);
  CHECK_THROWS_AS(apply_p(t, 7, Scalar::one(kQ)), Error);
  // alpha = 1 is admissible and acts trivially
  CHECK(apply_p(t, 2, Scalar::one(kQ)) == t);
}

TEST_CASE("exchange operation on a worked 6x6 matrix") {
  Sltm t = testutil::sltm_from(kQ, {"1", "2 1", "3 3 0", "1 3 0 0", "2 2 3 2 1"});
  REQUIRE(f_well_defined(t, 3, 5));
  Sltm s = apply_f(t, 3, 5);
  CHECK(s == testutil::sltm_from(kQ, {"1", "1 3", "3 3 0", "2 1 0 0", "2 2 1 2 3"}));
  // exchanging twice restores the matrix
  CHECK(apply_f(s, 3, 5) == t);

  Sltm bad = testutil::sltm_from(kQ, {"1", "2 1", "3 3 1", "1 3 2 3", "2 2 3 2 1"});
  CHECK_FALSE(f_well_defined(bad, 3, 5));
  CHECK_THROWS_AS(apply_f(bad, 3, 5), Error);
  CHECK_THROWS_AS(f_well_defined(t, 5, 3), Error);
}

TEST_CASE("shear operation on worked 5x5 matrices") {
  Sltm t1 = testutil::sltm_from(kQ, {"2", "1 0", "3 1 2", "1 2 3 1"});
  REQUIRE(q_well_defined(t1, 3, 1, Scalar::from_int(kQ, 2)));
  Sltm s1 = apply_q(t1, 3, 1, Scalar::from_int(kQ, 2));
  CHECK(s1 == testutil::sltm_from(kQ, {"2", "-3 0", "7 1 2", "7 2 3 1"}));

  Sltm t2 = testutil::sltm_from(kQ, {"2", "1 2", "3 6 2", "1 2 3 1"});
  REQUIRE(q_well_defined(t2, 4, 3, Scalar::from_int(kQ, 5)));
  Sltm s2 = apply_q(t2, 4, 3, Scalar::from_int(kQ, 5));
  CHECK(s2 == testutil::sltm_from(kQ, {"2", "1 2", "3 6 -8", "1 2 8 1"}));
  // a different shear scalar violates the delta condition there
  CHECK_FALSE(q_well_defined(t2, 4, 3, Scalar::from_int(kQ, 4)));
  CHECK_THROWS_AS(apply_q(t2, 4, 3, Scalar::from_int(kQ, 4)), Error);
  // row r0 must vanish right of k0
  CHECK_FALSE(q_well_defined(t2, 4, 1, Scalar::one(kQ)));
}

TEST_CASE("worked three-step chain") {
  Sltm t = testutil::sltm_from(kQ, {"2", "1 0", "3 1 2", "1 2 3 1"});
  std::vector<EtoStep> steps = {
      EtoStep::q(3, 1, Scalar::from_int(kQ, 2)),
      EtoStep::f(2, 3),
      EtoStep::p(3, Scalar::from_int(kQ, 5)),
  };
  auto [s, seq] = apply_sequence(t, steps);
  CHECK(s == testutil::sltm_from(kQ, {"-3", "2/5 0", "7 2 5", "7 3 10 1"}));
  // the accumulated matrix certifies A(T) -> A(S)
  CHECK(is_isomorphism(t, s, seq.accumulated_gamma));
  CHECK(direct_hom_check(t, s, seq.accumulated_gamma));
}

TEST_CASE("step matrices and inverses") {
  FieldSpec f = FieldSpec::prime(7);
  GammaMatrix gp = step_gamma(EtoStep::p(2, Scalar::from_int(f, 3)), 3, f);
  CHECK(gp.determinant() == Scalar::from_int(f, 3));
  GammaMatrix gf = step_gamma(EtoStep::f(1, 3), 3, f);
  CHECK(gf.determinant() == -Scalar::one(f));
  GammaMatrix gq = step_gamma(EtoStep::q(3, 1, Scalar::from_int(f, 5)), 3, f);
  CHECK(gq.determinant() == Scalar::one(f));
  CHECK(gq.at(1, 3) == Scalar::from_int(f, 5));

  std::mt19937_64 rng(202408);
  for (int round = 0; round < 120; ++round) {
    Sltm t = testutil::random_sltm(rng, 4, f);
    // pick any admissible step at random
    std::vector<EtoStep> options;
    for (int r = 1; r <= 4; ++r) options.push_back(EtoStep::p(r, testutil::random_scalar(rng, f, true)));
    for (int r1 = 1; r1 < 4; ++r1)
      for (int r2 = r1 + 1; r2 <= 4; ++r2)
        if (f_well_defined(t, r1, r2)) options.push_back(EtoStep::f(r1, r2));
    for (int k0 = 1; k0 < 4; ++k0)
      for (int r0 = k0 + 1; r0 <= 4; ++r0) {
        Scalar beta = testutil::random_scalar(rng, f);
        if (q_well_defined(t, r0, k0, beta)) options.push_back(EtoStep::q(r0, k0, beta));
      }
    const EtoStep& step = options[rng() % options.size()];
    Sltm img = apply_step(t, step);
    EtoStep inv = invert_step(step);
    CHECK(step_well_defined(img, inv));
    CHECK(apply_step(img, inv) == t);
    GammaMatrix prod = step_gamma(inv, 4, f) * step_gamma(step, 4, f);
    CHECK(prod == GammaMatrix::identity(4, f));
  }
}

TEST_CASE("sequence soundness on random admissible walks") {
  std::mt19937_64 rng(987654);
  for (auto f : {FieldSpec::prime(5), FieldSpec::rationals()}) {
    for (int round = 0; round < 260; ++round) {
      int n = 2 + static_cast<int>(rng() % 3);
      Sltm t = testutil::random_sltm(rng, n, f);
      Sltm cur = t;
      std::vector<EtoStep> steps;
      int len = 1 + static_cast<int>(rng() % 4);
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
      CHECK(s == cur);
      CHECK(is_isomorphism(t, s, seq.accumulated_gamma));
    }
  }
}

TEST_CASE("inadmissible steps abort a sequence with its index") {
  Sltm t = testutil::sltm_from(kQ, {"1", "2 1"});
  std::vector<EtoStep> steps = {EtoStep::p(1, Scalar::one(kQ)), EtoStep::f(1, 3)};
  try {
    apply_sequence(t, steps);
    FAIL("expected a restriction failure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::restriction_violated);
    CHECK(std::string(e.what()).find("step 2") != std::string::npos);
  }
}

TEST_CASE("every elementary matrix factors through step matrices") {
  for (auto f : {FieldSpec::prime(5), FieldSpec::rationals()}) {
    const int n = 3;
    // diagonal and transposition shapes are single steps; the remaining
    // elementary shape is the lower transvection, built from five steps
    for (int k0 = 1; k0 < n; ++k0)
      for (int r0 = k0 + 1; r0 <= n; ++r0)
        for (int v = 1; v <= 4; ++v) {
          Scalar beta = Scalar::from_int(f, v);
          if (beta.is_zero()) continue;
          GammaMatrix expect = GammaMatrix::identity(n, f);
          expect.set(r0, k0, beta);
          GammaMatrix got =
              step_gamma(EtoStep::p(k0, -(beta.inv())), n, f) *
              step_gamma(EtoStep::q(r0, k0, -Scalar::one(f)), n, f) *
              step_gamma(EtoStep::p(r0, beta), n, f) *
              step_gamma(EtoStep::f(k0, r0), n, f) *
              step_gamma(EtoStep::q(r0, k0, beta.inv()), n, f);
          CHECK(got == expect);
        }
  }
}

TEST_CASE("step parsing and serialization round trips") {
  FieldSpec f = FieldSpec::prime(5);
  std::vector<EtoStep> steps = parse_step_sequence("P 2 3; F 1 3 ;Q 3 1 4", f);
  REQUIRE(steps.size() == 3);
  CHECK(steps_to_string(steps) == "P 2 3; F 1 3; Q 3 1 4");
  for (const auto& s : steps) {
    EtoStep back = EtoStep::from_json(s.to_json(), f);
    CHECK(back.to_string() == s.to_string());
  }
  CHECK_THROWS_AS(parse_step_sequence("Z 1 2", f), ParseError);
  CHECK_THROWS_AS(parse_step_sequence("P 2", f), ParseError);
  CHECK_THROWS_AS(EtoStep::q(2, 3, Scalar::one(f)), Error);
  CHECK_THROWS_AS(EtoStep::f(3, 1), Error);
  CHECK_THROWS_AS(EtoStep::p(1, Scalar::zero(f)), Error);

  FieldSpec q = FieldSpec::rationals();
  auto rsteps = parse_step_sequence("Q 3 1 -1/2", q);
  CHECK(std::get<EtoStep::Q>(rsteps[0].op).beta == Scalar::parse(q, "-1/2"));
}

TEST_CASE("bidirectional path search over a small field") {
  FieldSpec f = FieldSpec::prime(3);
  Sltm t = testutil::sltm_from(f, {"1", "0 0"});
  Sltm z(3, f);
  EtoSearchResult res = eto_equiv_search(t, z, 4);
  REQUIRE(res.path.has_value());
  auto [fin, seq] = apply_sequence(t, *res.path);
  CHECK(fin == z);
  CHECK(is_isomorphism(t, z, seq.accumulated_gamma));

  // identical inputs need no steps
  EtoSearchResult trivial = eto_equiv_search(t, t, 4);
  REQUIRE(trivial.path.has_value());
  CHECK(trivial.path->empty());

  // non-equivalent pair within the depth budget: nothing found
  EtoSearchResult miss = eto_equiv_search(z, b_matrix(3, 2, f), 4);
  CHECK_FALSE(miss.path.has_value());

  CHECK_THROWS_AS(eto_equiv_search(Sltm(3, kQ), Sltm(3, kQ), 2), Error);
}
