#include <random>

#include "doctest.h"
#include "jsv/exact/parse.hpp"
#include "jsv/groebner/groebner.hpp"
#include "oracles.hpp"
#include "random_poly.hpp"

using namespace jsv;

namespace {

MonomialOrder drl(std::vector<std::string> vars) { return {OrderKind::DegRevLex, std::move(vars)}; }

std::vector<MPoly> polys(std::initializer_list<const char*> texts) {
  std::vector<MPoly> out;
  for (const char* t : texts) out.push_back(parse_poly(t));
  return out;
}

std::vector<MPoly> basis_of(std::initializer_list<const char*> gens, MonomialOrder order) {
  auto r = groebner_basis(Ideal(polys(gens), std::move(order)));
  REQUIRE_FALSE(r.timeout);
  return r.basis;
}

}  // namespace

TEST_CASE("monomial orders") {
  MonomialOrder o = drl({"x", "y", "z"});
  CHECK(o.compare({1, 0, 0}, {0, 1, 0}) > 0);
  CHECK(o.compare({0, 0, 2}, {1, 0, 0}) > 0);   // degree first
  CHECK(o.compare({1, 0, 1}, {0, 2, 0}) < 0);   // revlex tie-break on z
  MonomialOrder lex(OrderKind::Lex, {"x", "y", "z"});
  CHECK(lex.compare({1, 0, 0}, {0, 3, 3}) > 0);
  // compatible with multiplication on random samples
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::uint32_t> e(0, 3);
  for (int k = 0; k < 200; ++k) {
    Exponents u{e(rng), e(rng), e(rng)}, v{e(rng), e(rng), e(rng)}, w{e(rng), e(rng), e(rng)};
    Exponents uw(3), vw(3);
    for (int i = 0; i < 3; ++i) {
      uw[i] = u[i] + w[i];
      vw[i] = v[i] + w[i];
    }
    for (const auto* ord : {&o, &lex}) {
      int c = ord->compare(u, v);
      CHECK(ord->compare(uw, vw) == c);
      CHECK(ord->compare(v, u) == -c);
    }
  }
}

TEST_CASE("textbook bases") {
  // hand elimination: x = y turns x^2 + y^2 - 1 into 2y^2 - 1
  auto b1 = basis_of({"x - y", "x^2 + y^2 - 1"}, drl({"x", "y"}));
  CHECK(b1 == polys({"y^2 - 1/2", "x - y"}));

  auto b2 = basis_of({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}, drl({"x", "y"}));
  CHECK(b2 == polys({"x^2", "x*y", "y^2 - 1/2*x"}));

  auto b3 = basis_of({"x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"},
                     MonomialOrder(OrderKind::Lex, {"x", "y", "z"}));
  CHECK(b3 == polys({"x + y + z^2 - 1", "y^2 - y - z^2 + z", "y*z^2 + 1/2*z^4 - 1/2*z^2",
                     "z^6 - 4*z^4 + 4*z^3 - z^2"}));

  CHECK(basis_of({"x", "x - 1"}, drl({"x"})) == polys({"1"}));
  CHECK(basis_of({"0"}, drl({"x"})).empty());
  CHECK(groebner_basis(Ideal({}, drl({}))).basis.empty());
}

TEST_CASE("textbook bases generate the same ideal (cofactor oracle)") {
  auto gens = polys({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"});
  auto basis = basis_of({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}, drl({"x", "y"}));
  for (const auto& b : basis) CHECK(testing::in_ideal_bounded(b, gens, 3));
  for (const auto& g : gens) CHECK(testing::in_ideal_bounded(g, basis, 3));
}

TEST_CASE("reduction") {
  Ideal ix(polys({"x"}), drl({"x"}));
  CHECK(reduce(parse_poly("x^2"), ix).remainder.is_zero());
  CHECK(reduce(parse_poly("x + 1"), ix).remainder == MPoly(1));
  CHECK(ix.has_cached_basis());

  std::mt19937 rng(11);
  std::vector<std::string> vars = {"x", "y", "z"};
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<MPoly> gens = {testing::random_poly(rng, vars, 3, 2), testing::random_poly(rng, vars, 3, 2)};
    Ideal ideal(gens, drl(vars));
    auto p = testing::random_poly(rng, vars, 3, 2);
    auto r = testing::random_poly(rng, vars, 3, 2);
    auto lhs = reduce(p * gens[0] + r, ideal);
    auto rhs = reduce(r, ideal);
    REQUIRE_FALSE(lhs.timeout);
    CHECK(lhs.remainder == rhs.remainder);
    CHECK(reduce(rhs.remainder, ideal).remainder == rhs.remainder);
  }
}

TEST_CASE("triviality") {
  CHECK(is_trivial(Ideal(polys({"x^2 + 1"}), drl({"x"}))) == Triviality::NonTrivial);
  CHECK(is_trivial(Ideal(polys({"x", "x - 1"}), drl({"x"}))) == Triviality::Trivial);
  CHECK(is_trivial(Ideal(polys({"x*y - 1", "x"}), drl({"x", "y"}))) == Triviality::Trivial);
  // substituting x = 0 into xy - 1 leaves -1
  CHECK(parse_poly("x*y - 1").substitute({{"x", MPoly()}}) == MPoly(-1));
}

TEST_CASE("saturation by a unit") {
  Ideal ix(polys({"x"}), drl({"x"}));
  CHECK(is_trivial(saturate_by_unit(ix, parse_poly("x"))) == Triviality::Trivial);

  Ideal ixx(polys({"x*(x - 1)"}), drl({"x"}));
  Ideal sat = saturate_by_unit(ixx, parse_poly("x"));
  CHECK(is_trivial(sat) == Triviality::NonTrivial);
  CHECK(reduce(parse_poly("x - 1"), sat).remainder.is_zero());
  // the only surviving zero is x = 1: adding x - 1 keeps it solvable, x - 2 does not
  auto with = [&](const char* extra) {
    auto gens = sat.generators();
    gens.push_back(parse_poly(extra));
    return is_trivial(Ideal(gens, sat.order()));
  };
  CHECK(with("x - 1") == Triviality::NonTrivial);
  CHECK(with("x - 2") == Triviality::Trivial);

  CHECK(is_trivial(saturate_by_unit(Ideal({}, drl({})), MPoly(1))) == Triviality::NonTrivial);
  CHECK_THROWS(saturate_by_unit(ix, MPoly()));
}

TEST_CASE("returned bases satisfy the Buchberger criterion and are deterministic") {
  std::mt19937 rng(21);
  std::vector<std::string> vars = {"x", "y", "z"};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<MPoly> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(testing::random_poly(rng, vars, 3, 1));
    for (auto kind : {OrderKind::DegRevLex, OrderKind::Lex}) {
      MonomialOrder order(kind, vars);
      auto a = groebner_basis(Ideal(gens, order));
      auto b = groebner_basis(Ideal(gens, order));
      REQUIRE_FALSE(a.timeout);
      CHECK(a.basis == b.basis);
      CHECK(satisfies_buchberger_criterion(a.basis, order));
      for (const auto& g : gens) CHECK(normal_form(g, a.basis, order).is_zero());
      // reduced basis is idempotent under recomputation
      auto again = groebner_basis(Ideal(a.basis, order));
      CHECK(again.basis == a.basis);
    }
  }
}

TEST_CASE("membership agrees with a bounded cofactor search") {
  std::mt19937 rng(2024);
  std::vector<std::string> vars = {"x", "y", "z"};
  int members = 0, non_members = 0;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<MPoly> gens = {testing::random_poly(rng, vars, 2, 1) + testing::random_poly(rng, vars, 2, 2),
                               testing::random_poly(rng, vars, 3, 1)};
    Ideal ideal(gens, drl(vars));
    // constructed member
    auto f = testing::random_poly(rng, vars, 2, 1) * gens[0] + testing::random_poly(rng, vars, 2, 1) * gens[1];
    CHECK(reduce(f, ideal).remainder.is_zero());
    CHECK(testing::in_ideal_bounded(f, gens, 3));
    // perturbed candidate: both decision procedures must agree
    auto g = f + testing::random_poly(rng, vars, 1, 1);
    bool gb = reduce(g, ideal).remainder.is_zero();
    bool oracle = testing::in_ideal_bounded(g, gens, 4);
    CHECK(gb == oracle);
    (gb ? members : non_members)++;
  }
  CHECK(non_members > 0);
}

TEST_CASE("resource caps yield timeouts, never answers") {
  auto gens = polys({"x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"});
  Ideal ideal(gens, MonomialOrder(OrderKind::Lex, {"x", "y", "z"}));
  GroebnerLimits tiny;
  tiny.max_basis_size = 1;
  auto r = groebner_basis(ideal, tiny);
  CHECK(r.timeout);
  CHECK(r.basis.empty());
  CHECK(is_trivial(ideal, tiny) == Triviality::Timeout);
  CHECK(reduce(parse_poly("x"), ideal, tiny).timeout);
  GroebnerLimits low_degree;
  low_degree.max_degree = 2;
  CHECK(groebner_basis(ideal, low_degree).timeout);
  // a failed run is not cached; a later run with normal limits succeeds
  CHECK(is_trivial(ideal) == Triviality::NonTrivial);
}

TEST_CASE("modular pre-check is diagnostic only") {
  GroebnerLimits limits;
  limits.modular_precheck = true;
  auto trivial = groebner_basis(Ideal(polys({"x*y - 1", "x"}), drl({"x", "y"})), limits);
  REQUIRE(trivial.modular_trivial.has_value());
  CHECK(*trivial.modular_trivial);
  CHECK(trivial.basis == polys({"1"}));
  auto solvable = groebner_basis(Ideal(polys({"x^2 + 1"}), drl({"x"})), limits);
  CHECK_FALSE(solvable.modular_trivial.value());
  CHECK(default_prime() == 2147483647ULL);
}
