#include "doctest.h"
#include "support.hpp"

#include "symdisc/counterexample.hpp"

#include <numbers>

using namespace symdisc;
using namespace symdisc::testing;

namespace {

bool exactly_zero(const ComplexMatrix& a) { return (a.array() == cplx(0.0)).all(); }

}  // namespace

TEST_CASE("case A structure") {
  for (int N : {2, 3, 8}) {
    const TruncatedModel m = build_case_a(N, 0.25);
    CHECK(m.tuple.dim() == 8 * N);
    CHECK(exactly_zero(m.S2));
    CHECK(operator_norm(m.S1) == doctest::Approx(0.25));
    CHECK(operator_norm(m.P) == doctest::Approx(1.0));
    CHECK(exactly_zero(m.X * m.X));
    CHECK(exactly_zero(m.X * m.V));
    CHECK(normality_defect(m.X) > 0.0);
    const std::vector<const ComplexMatrix*> mats{&m.S1, &m.S2, &m.P};
    for (const auto* a : mats)
      for (const auto* b : mats) CHECK(exactly_zero((*a) * (*b)));
  }
  CHECK_THROWS_AS(build_case_a(1), Error);
  CHECK_THROWS_AS(build_case_a(4, 0.0), Error);
  CHECK_THROWS_AS(build_case_a(4, 1.5), Error);
}

TEST_CASE("case B structure") {
  const TruncatedModel b4 = build_case_b(4, 3);
  CHECK(b4.tuple.n() == 4);
  CHECK(b4.tuple.P() == ComplexMatrix::Zero(24, 24));
  CHECK(b4.tuple.S(3) == b4.P);
  const TruncatedModel b5 = build_case_b(5, 3);
  CHECK(exactly_zero(b5.tuple.S(4)));
  CHECK_THROWS_AS(build_case_b(3, 3), Error);
}

TEST_CASE("linear collapse") {
  const TruncatedModel m = build_case_a(4);
  const std::vector<ComplexMatrix> mats{m.S1, m.S2, m.P};
  const MonomialTable table(mats, 2);
  CHECK(exactly_zero(table.evaluate(monomial_polynomial(3, {1, 1, 0}))));
  CHECK(exactly_zero(table.evaluate(monomial_polynomial(3, {0, 0, 2}))));
  CHECK(linear_collapse_check(m, 500, 6, 42) == 0.0);
  CHECK(linear_collapse_check(build_case_b(5, 2), 100, 6, 7) == 0.0);
}

TEST_CASE("obstruction on the default model") {
  const TruncatedModel m = build_case_a(8);
  ObstructionOptions o;
  o.vn_trials = 100;
  const ObstructionReport r = verify_obstruction(m, o);
  for (const auto& c : r.hypothesis_checks) {
    INFO(c.name);
    CHECK(c.passed);
    CHECK(c.value <= 1e-10);
  }
  for (const auto& c : r.fot_checks) {
    INFO(c.name);
    CHECK(c.passed);
  }
  CHECK_FALSE(r.almost_normal);
  CHECK(r.pair_defect_interior == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(r.linear_collapse_residual == 0.0);
  CHECK(r.contraction_evidence.kind == CertKind::GammaContractionConsistent);
  CHECK(r.obstruction_confirmed);
}

TEST_CASE("property: obstruction persists across depth and eta") {
  for (int N : {2, 4, 8, 16}) {
    for (double eta : {0.125, 0.25, 0.5}) {
      ObstructionOptions o;
      o.vn_trials = 20;
      o.collapse_trials = 20;
      const ObstructionReport r = verify_obstruction(build_case_a(N, eta), o);
      INFO("N=" << N << " eta=" << eta);
      REQUIRE_FALSE(r.almost_normal);
      REQUIRE(std::abs(r.pair_defect_interior - eta * eta) <= 1e-12);
      REQUIRE(r.obstruction_confirmed);
    }
  }
}

TEST_CASE("case B obstruction for n = 4, 5") {
  for (int n : {4, 5}) {
    ObstructionOptions o;
    o.vn_trials = 50;
    const ObstructionReport r = verify_obstruction(build_case_b(n, 4), o);
    INFO("n=" << n);
    CHECK_FALSE(r.almost_normal);
    CHECK(r.pair_defect_interior == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(r.obstruction_confirmed);
    for (const auto& c : r.fot_checks) CHECK(c.passed);
  }
}

TEST_CASE("property: doubling the torus grid keeps consistency") {
  const TruncatedModel m = build_case_a(4);
  for (int grid : {12, 24, 48}) {
    VonNeumannOptions o;
    o.trials = 100;
    o.degree = 6;
    o.torus_grid = grid;
    REQUIRE(von_neumann_sample(m.tuple, o).kind == CertKind::GammaContractionConsistent);
  }
}

TEST_CASE("Caratheodory-Fejer device") {
  CHECK(cf_two_by_two(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(cf_two_by_two(0.0, 1.0) == doctest::Approx(1.0));
  CHECK(std::abs(cf_two_by_two(1.0, 1.0) - std::numbers::phi) <= 1e-12);

  // r = 0, (0, 1): sup |z| = 1
  CHECK(circle_sup({0.0, 1.0}, 64) == doctest::Approx(1.0).epsilon(1e-12));
  CfOptions o;
  o.trials = 1;
  CHECK(cf_lower_bound_check(0.0, 1.0, o).worst_gap == doctest::Approx(0.0).epsilon(1e-12));

  o.trials = 500;
  const CfReport r10 = cf_lower_bound_check(1.0, 0.0, o);
  CHECK(r10.worst_gap >= -1e-12);
  const CfReport r11 = cf_lower_bound_check(1.0, 1.0, o);
  CHECK(r11.worst_gap >= -1e-6);
}

TEST_CASE("property: circle_sup refinement only increases the estimate") {
  Rng rng(60);
  for (int t = 0; t < 100; ++t) {
    std::vector<cplx> c(uniform_int(rng, 1, 7));
    for (auto& v : c) v = gaussian(rng);
    REQUIRE(circle_sup(c, 2048) >= circle_sup(c, 16) - 1e-9);
    double direct = 0.0;
    for (int k = 0; k < 4096; ++k) {
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / 4096);
      cplx v = 0.0, zp = 1.0;
      for (const cplx a : c) {
        v += a * zp;
        zp *= z;
      }
      direct = std::max(direct, std::abs(v));
    }
    REQUIRE(circle_sup(c, 64) >= direct - 1e-6 * (1.0 + direct));
  }
}

TEST_CASE("comparison matrices") {
  // |a0| <= |a1|: ||[[|a0|,0],[|a3|,|a0|+|a1|/4]]|| <= ||[[|a0|,0],[|a1|+|a3|,|a0|]]||
  const ComparisonOrdering s = comparison_ordering(0.1, 1.0, 0.5);
  CHECK(s.small_a0);
  CHECK(s.holds);
  CHECK(s.first == doctest::Approx(comparison_first(0.1, 1.0, 0.5)));
  CHECK(s.bound == doctest::Approx(comparison_second(0.1, 1.0, 0.5)));
  const ComparisonOrdering l = comparison_ordering(1.0, 0.1, 0.5);
  CHECK_FALSE(l.small_a0);
  CHECK(l.holds);
  CHECK(comparison_first(1.0, 0.1, 0.5) <= comparison_middle_large_a0(1.0, 0.5));
  CHECK(comparison_middle_large_a0(1.0, 0.5) <= comparison_second_large_a0(1.0, 0.5));

  Rng rng(61);
  for (int t = 0; t < 2000; ++t) {
    const ComparisonOrdering o = comparison_ordering(gaussian(rng), gaussian(rng), gaussian(rng));
    REQUIRE(o.holds);
  }
}
