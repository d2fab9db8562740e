#include <random>

#include "doctest.h"
#include "jsv/degeneration/witness.hpp"
#include "jsv/exact/parse.hpp"
#include "random_structure.hpp"

using namespace jsv;

namespace {

LaurentPoly L(const char* text) { return parse_laurent(text); }

SuperStructure two_idempotents() {
  SuperStructure s({2, 0});
  s.set(1, 1, 1, MPoly(1));
  s.set(2, 2, 2, MPoly(1));
  return s;
}

// k[x]/(x^2): u1 unit, u2 square zero
SuperStructure dual_numbers() {
  SuperStructure s({2, 0});
  s.set(1, 1, 1, MPoly(1));
  s.set_symmetric(1, 2, 2, MPoly(1));
  return s;
}

}  // namespace

TEST_CASE("scaling to zero is confirmed for every source") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto r = testing::random_structure(rng, 3, 1, 0.5);
    Witness w{CurveChange::scalar({3, 1}, L("t^-1")), r.structure, SuperStructure({3, 1})};
    CHECK(verify_witness(w).outcome == WitnessOutcome::Confirmed);
  }
}

TEST_CASE("identity curve") {
  auto s = two_idempotents();
  CHECK(verify_witness({CurveChange::identity({2, 0}), s, s}).outcome == WitnessOutcome::Confirmed);
  auto result = verify_witness({CurveChange::identity({2, 0}), s, dual_numbers()});
  CHECK(result.outcome == WitnessOutcome::LimitMismatch);
  CHECK_FALSE(result.mismatches.empty());
}

TEST_CASE("poles and singular curves") {
  auto s = two_idempotents();
  auto result = verify_witness({CurveChange::scalar({2, 0}, L("t")), s, SuperStructure({2, 0})});
  CHECK(result.outcome == WitnessOutcome::LimitMissing);
  CHECK(result.poles.size() == 2);
  CurveChange singular = CurveChange::identity({2, 0});
  singular.even(1, 1) = LaurentPoly();
  CHECK_THROWS_AS(verify_witness({singular, s, s}), ArithmeticError);
  CHECK_THROWS_AS(verify_witness({CurveChange::identity({2, 0}), s, SuperStructure({1, 1})}), std::invalid_argument);
}

TEST_CASE("two idempotents degenerate to the dual numbers") {
  // new basis e1 + e2, t(e1 - e2); g is the inverse of that basis matrix
  CurveChange g = CurveChange::identity({2, 0});
  g.even(0, 0) = L("1/2");
  g.even(0, 1) = L("1/2");
  g.even(1, 0) = L("1/2*t^-1");
  g.even(1, 1) = L("-1/2*t^-1");
  auto result = verify_witness({g, two_idempotents(), dual_numbers()});
  CHECK(result.outcome == WitnessOutcome::Confirmed);
  REQUIRE(result.limit.has_value());
  CHECK(check_jordan_superidentity(*result.limit).passed());

  // transitivity: follow the curve by a rescaling h of the target
  ScalarChange h = ScalarChange::identity({2, 0});
  h.even(1, 1) = Rational(3);
  auto moved = act(h, dual_numbers());
  CHECK(orbit_equal_test(dual_numbers(), moved, h));
  auto composed = verify_witness({as_curve(h) * g, two_idempotents(), moved});
  CHECK(composed.outcome == WitnessOutcome::Confirmed);
}

TEST_CASE("orbit equality") {
  SuperStructure e({1, 0});
  e.set(1, 1, 1, MPoly(1));
  CHECK(orbit_equal_test(e, e, ScalarChange::identity({1, 0})));
  ScalarChange d = ScalarChange::scalar({1, 0}, Rational(5));
  SuperStructure rescaled({1, 0});
  rescaled.set(1, 1, 1, MPoly(Rational(1, 5)));
  CHECK(orbit_equal_test(e, rescaled, d));
  CHECK_FALSE(orbit_equal_test(e, e, d));
  ScalarChange g = ScalarChange::identity({2, 2});
  g.even(0, 1) = Rational(7);
  g.odd(1, 0) = Rational(-2);
  CHECK(orbit_equal_test(SuperStructure({2, 2}), SuperStructure({2, 2}), g));
  ScalarChange singular{Matrix<Rational>(1, 1), Matrix<Rational>(0, 0)};
  CHECK_THROWS_AS(orbit_equal_test(e, e, singular), ArithmeticError);
}

TEST_CASE("confirmed targets of Jordan sources are Jordan") {
  std::mt19937 rng(4);
  int confirmed = 0;
  for (int trial = 0; trial < 100 && confirmed < 10; ++trial) {
    auto r = testing::random_structure(rng, 2, 1, 0.3);
    if (!check_jordan_superidentity(r.structure).passed()) continue;
    // diagonal curve diag(1, t^-1 | t^-1): keep whatever has a limit
    CurveChange g = CurveChange::identity({2, 1});
    g.even(1, 1) = L("t^-1");
    g.odd(0, 0) = L("t^-1");
    auto probe = verify_witness({g, r.structure, r.structure});
    if (!probe.limit) continue;
    auto w = verify_witness({g, r.structure, *probe.limit});
    CHECK(w.outcome == WitnessOutcome::Confirmed);
    CHECK(check_jordan_superidentity(*w.limit).passed());
    ++confirmed;
  }
  CHECK(confirmed > 0);
}
