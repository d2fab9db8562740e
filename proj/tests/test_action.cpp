#include <random>

#include "doctest.h"
#include "jsv/action/action.hpp"
#include "jsv/exact/parse.hpp"
#include "random_poly.hpp"
#include "random_structure.hpp"

using namespace jsv;

namespace {

template <class Rng>
Matrix<Rational> random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix<Rational> m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = testing::random_rational(rng, 3, 2);
    if (!(m.determinant() == Rational(0))) return m;
  }
}

template <class Rng>
ScalarChange random_change(Rng& rng, const SuperType& type) {
  return {random_invertible(rng, static_cast<std::size_t>(type.m)), random_invertible(rng, static_cast<std::size_t>(type.n))};
}

/// Direct conjugation x_i, x_j -> g mu(g^-1 x_i, g^-1 x_j) on coordinate vectors.
SuperStructure conjugate_oracle(const ScalarChange& g, const testing::DenseTable& t) {
  const int d = t.dim();
  Matrix<Rational> G(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int r = 1; r <= d; ++r)
    for (int c = 1; c <= d; ++c) G(r - 1, c - 1) = g.entry(r, c);
  Matrix<Rational> H = inverse(G);
  SuperStructure out({t.m, t.n});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> x(d), y(d);
      for (int r = 0; r < d; ++r) {
        x[r] = H(r, i);
        y[r] = H(r, j);
      }
      auto prod = t.mul(x, y);
      for (int k = 0; k < d; ++k) {
        Rational v;
        for (int r = 0; r < d; ++r) v += G(k, r) * prod[r];
        out.set(i + 1, j + 1, k + 1, MPoly(v));
      }
    }
  return out;
}

SuperStructure idempotent() {
  SuperStructure s({1, 0});
  s.set(1, 1, 1, MPoly(1));
  return s;
}

}  // namespace

TEST_CASE("identity acts trivially") {
  std::mt19937 rng(1);
  auto r = testing::random_structure(rng, 2, 2, 0.5);
  CHECK(act(ScalarChange::identity({2, 2}), r.structure) == r.structure);
}

TEST_CASE("t^-1 times the identity scales every constant by t") {
  std::mt19937 rng(2);
  auto r = testing::random_structure(rng, 3, 1, 0.5);
  auto tinv = LaurentPoly::monomial(MPoly(1), -1);
  auto f = act_curve(CurveChange::scalar({3, 1}, tinv), r.structure);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        CHECK(f.num(i, j, k) == LaurentPoly::t() * LaurentPoly(r.structure.at(i, j, k)) * f.denominator(i, j, k));
}

TEST_CASE("one-dimensional idempotent under a scalar block") {
  SymbolicChange g{Matrix<MPoly>(1, 1), Matrix<MPoly>(0, 0)};
  g.even(0, 0) = MPoly::variable("lambda");
  auto f = act_symbolic(g, idempotent());
  for (long n : {2L, 3L, -5L}) {
    Rational lambda(n, 2);
    Rational symbolic = f.num(1, 1, 1).evaluate({{"lambda", lambda}}) / f.denominator(1, 1, 1).evaluate({{"lambda", lambda}});
    ScalarChange s{Matrix<Rational>(1, 1), Matrix<Rational>(0, 0)};
    s.even(0, 0) = lambda;
    testing::DenseTable dense{1, 0, {{{Rational(1)}}}};
    CHECK(act(s, idempotent()).at(1, 1, 1) == MPoly(symbolic));
    CHECK(conjugate_oracle(s, dense).at(1, 1, 1) == MPoly(symbolic));
    CHECK(symbolic == Rational(1) / lambda);
  }
}

TEST_CASE("scalar action agrees with direct conjugation") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 3, n = 1 + trial % 2;
    auto r = testing::random_structure(rng, m, n, 0.5);
    auto g = random_change(rng, {m, n});
    CHECK(act(g, r.structure) == conjugate_oracle(g, r.dense));
  }
}

TEST_CASE("group action laws") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 15; ++trial) {
    SuperType type{2, 1 + trial % 2};
    auto r = testing::random_structure(rng, type.m, type.n, 0.5);
    auto g = random_change(rng, type);
    auto h = random_change(rng, type);
    CHECK(act(g, act(h, r.structure)) == act(g * h, r.structure));
    CHECK(act(inverse(g), act(g, r.structure)) == r.structure);
  }
  ScalarChange singular{Matrix<Rational>(2, 2), Matrix<Rational>::identity(1)};
  CHECK_THROWS_AS(act(singular, SuperStructure({2, 1})), ArithmeticError);
}

TEST_CASE("diagonal changes rescale monomially") {
  std::mt19937 rng(5);
  auto r = testing::random_structure(rng, 2, 2, 0.7);
  ScalarChange g = ScalarChange::identity({2, 2});
  std::vector<Rational> d = {Rational(2), Rational(-3), Rational(1, 2), Rational(5)};
  g.even(0, 0) = d[0];
  g.even(1, 1) = d[1];
  g.odd(0, 0) = d[2];
  g.odd(1, 1) = d[3];
  auto out = act(g, r.structure);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        CHECK(out.at(i, j, k) == r.structure.at(i, j, k).scaled(d[k - 1] / (d[i - 1] * d[j - 1])));
}

TEST_CASE("Jordan identities and derivations are invariant under basis change") {
  std::mt19937 rng(6);
  int jordan = 0;
  for (int trial = 0; trial < 200 && jordan < 15; ++trial) {
    auto r = testing::random_structure(rng, 2, 1, 0.2);
    if (!check_jordan_superidentity(r.structure).passed()) continue;
    ++jordan;
    auto g = random_change(rng, {2, 1});
    auto moved = act(g, r.structure);
    CHECK(check_jordan_superidentity(moved).passed());
    CHECK(derivation_dimension(moved) == derivation_dimension(r.structure));
  }
  CHECK(jordan >= 5);
}

TEST_CASE("generic Borel elements") {
  auto b31 = generic_borel({3, 1});
  CHECK(b31.variables.size() == 7);
  CHECK(b31.diagonal_variables.size() == 4);
  CHECK(b31.g.even(1, 0).is_zero());
  CHECK_FALSE(b31.g.even(0, 1).is_zero());
  auto b22 = generic_borel({2, 2});
  CHECK(b22.variables.size() == 6);
  auto b11 = generic_borel({1, 1});
  CHECK(b11.variables.size() == 2);
  CHECK(b11.diagonal_variables.size() == 2);
  auto lower = generic_borel({3, 1}, Triangle::Lower, Triangle::Lower);
  CHECK(lower.g.even(0, 1).is_zero());
  CHECK_FALSE(lower.g.even(1, 0).is_zero());
}

TEST_CASE("denominator-cleared symbolic action") {
  auto b = generic_borel({3, 1});
  auto zero = act_symbolic_cleared(b.g, SuperStructure({3, 1}));
  CHECK(zero.table.is_zero());
  CHECK(zero.denominator == parse_poly("b_e_1_1^2*b_e_2_2^2*b_e_3_3^2*b_o_1_1^2"));

  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    SuperType type{2, 2};
    auto r = testing::random_structure(rng, 2, 2, 0.4);
    std::vector<std::string> vars;
    auto g = generic_change(type, "a", &vars);
    auto cleared = act_symbolic_cleared(g, r.structure);
    for (int attempt = 0; attempt < 3; ++attempt) {
      std::map<std::string, Rational> values;
      for (const auto& v : vars) values[v] = testing::random_rational(rng, 3, 2);
      auto concrete = specialize(g, values);
      Rational den = cleared.denominator.evaluate(values);
      if (den.is_zero()) continue;
      auto direct = act(concrete, r.structure);
      for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
          for (int k = 1; k <= 4; ++k)
            CHECK(MPoly(cleared.table.at(i, j, k).evaluate(values) / den) == direct.at(i, j, k));
    }
  }
}

TEST_CASE("inverse-parametrized action") {
  std::mt19937 rng(8);
  auto r = testing::random_structure(rng, 3, 1, 0.4);
  std::vector<std::string> vars;
  auto a = generic_change({3, 1}, "a", &vars);
  auto f = act_inverse_symbolic(a, r.structure);
  std::map<std::string, Rational> values;
  for (const auto& v : vars) values[v] = testing::random_rational(rng, 3, 2);
  auto concrete = specialize(a, values);
  auto direct = act(inverse(concrete), r.structure);
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        CHECK(MPoly(f.num(i, j, k).evaluate(values) / f.denominator(i, j, k).evaluate(values)) == direct.at(i, j, k));
}
