#include "jsv/action/action.hpp"

#include <algorithm>

namespace jsv {

namespace {

using Index = std::size_t;

Index at(int i) { return static_cast<Index>(i - 1); }

template <class T>
T lift(const MPoly& p) {
  if constexpr (std::is_same_v<T, MPoly>)
    return p;
  else
    return T(p);
}

/// Full block-diagonal matrix.
template <class T>
Matrix<T> block_diagonal(const Matrix<T>& even, const Matrix<T>& odd) {
  const Index m = even.rows(), n = odd.rows();
  Matrix<T> out(m + n, m + n);
  for (Index r = 0; r < m; ++r)
    for (Index c = 0; c < m; ++c) out(r, c) = even(r, c);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(m + r, m + c) = odd(r, c);
  return out;
}

/// W_ij^k = sum H_pi H_qj G_kr c_pq^r over a ring T, evaluated in three
/// passes so each costs d^4 products.
template <class T>
std::vector<T> conjugate(const Matrix<T>& G, const Matrix<T>& H, const SuperStructure& s) {
  const int d = s.dim();
  const auto D = static_cast<Index>(d);
  auto idx = [&](int a, int b, int c) { return (at(a) * D + at(b)) * D + at(c); };
  std::vector<T> u(D * D * D, T(0)), v(D * D * D, T(0)), w(D * D * D, T(0));
  for (int p = 1; p <= d; ++p)
    for (int q = 1; q <= d; ++q)
      for (int r = 1; r <= d; ++r) {
        const MPoly& c = s.at(p, q, r);
        if (c.is_zero()) continue;
        T cr = lift<T>(c);
        for (int k = 1; k <= d; ++k)
          if (!(G(at(k), at(r)) == T(0))) u[idx(p, q, k)] += G(at(k), at(r)) * cr;
      }
  for (int p = 1; p <= d; ++p)
    for (int q = 1; q <= d; ++q)
      for (int k = 1; k <= d; ++k) {
        const T& x = u[idx(p, q, k)];
        if (x == T(0)) continue;
        for (int j = 1; j <= d; ++j)
          if (!(H(at(q), at(j)) == T(0))) v[idx(p, j, k)] += H(at(q), at(j)) * x;
      }
  for (int p = 1; p <= d; ++p)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        const T& x = v[idx(p, j, k)];
        if (x == T(0)) continue;
        for (int i = 1; i <= d; ++i)
          if (!(H(at(p), at(i)) == T(0))) w[idx(i, j, k)] += H(at(p), at(i)) * x;
      }
  return w;
}

template <class T>
void require_shape(const BasisChange<T>& g, const SuperStructure& s) {
  if (g.even.rows() != g.even.cols() || g.odd.rows() != g.odd.cols())
    throw std::invalid_argument("basis change blocks must be square");
  if (!(g.type() == s.type())) throw std::invalid_argument("basis change of type " + g.type().str() + " applied to a structure of type " + s.type().str());
}

/// inverse_form = false: g*s.  inverse_form = true: g^-1 * s.
template <class T>
FractionTable<T> fraction_action(const BasisChange<T>& g, const SuperStructure& s, bool inverse_form) {
  require_shape(g, s);
  FractionTable<T> out;
  out.type = s.type();
  out.det_even = g.even.determinant();
  out.det_odd = g.odd.determinant();
  if (out.det_even == T(0) || out.det_odd == T(0)) throw ArithmeticError("singular basis change");
  Matrix<T> full = block_diagonal(g.even, g.odd);
  Matrix<T> adj = block_diagonal(g.even.adjugate(), g.odd.adjugate());
  out.numerator = inverse_form ? conjugate(adj, full, s) : conjugate(full, adj, s);
  const int d = s.dim();
  const auto& type = s.type();
  out.power.resize(out.numerator.size());
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        std::array<unsigned, 2> p{0, 0};
        if (inverse_form) {
          ++p[static_cast<Index>(type.parity(k))];
        } else {
          ++p[static_cast<Index>(type.parity(i))];
          ++p[static_cast<Index>(type.parity(j))];
        }
        out.power[out.slot(i, j, k)] = p;
      }
  return out;
}

}  // namespace

ScalarChange inverse(const ScalarChange& g) {
  return {jsv::inverse(g.even), jsv::inverse(g.odd)};
}

SuperStructure act(const ScalarChange& g, const SuperStructure& s) {
  require_shape(g, s);
  ScalarChange h = inverse(g);
  auto to_poly = [](const Matrix<Rational>& m) {
    Matrix<MPoly> out(m.rows(), m.cols());
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) out(r, c) = MPoly(m(r, c));
    return out;
  };
  auto w = conjugate(to_poly(block_diagonal(g.even, g.odd)), to_poly(block_diagonal(h.even, h.odd)), s);
  SuperStructure out(s.type(), s.parameters());
  const int d = s.dim();
  std::size_t n = 0;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) out.set(i, j, k, std::move(w[n++]));
  return out;
}

FractionTable<MPoly> act_symbolic(const SymbolicChange& g, const SuperStructure& s) {
  return fraction_action(g, s, false);
}

FractionTable<LaurentPoly> act_curve(const CurveChange& g, const SuperStructure& s) {
  return fraction_action(g, s, false);
}

FractionTable<MPoly> act_inverse_symbolic(const SymbolicChange& a, const SuperStructure& s) {
  return fraction_action(a, s, true);
}

ClearedAction act_symbolic_cleared(const SymbolicChange& g, const SuperStructure& s) {
  auto f = act_symbolic(g, s);
  std::array<unsigned, 2> top{0, 0};
  if (s.type().m > 0) top[0] = 2;
  if (s.type().n > 0) top[1] = 2;
  ClearedAction out{SuperStructure(s.type(), s.parameters()), f.det_even.pow(top[0]) * f.det_odd.pow(top[1])};
  const int d = s.dim();
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        const auto& p = f.power[f.slot(i, j, k)];
        const MPoly& num = f.num(i, j, k);
        if (num.is_zero()) continue;
        out.table.set(i, j, k, num * f.det_even.pow(top[0] - p[0]) * f.det_odd.pow(top[1] - p[1]));
      }
  return out;
}

std::string to_string(Triangle t) { return t == Triangle::Upper ? "upper" : "lower"; }

FlagOrder flag_order(Triangle t, int size) {
  FlagOrder order;
  for (int i = 1; i <= size; ++i) order.push_back(i);
  if (t == Triangle::Lower) std::reverse(order.begin(), order.end());
  return order;
}

std::string flag_name(const FlagOrder& order) {
  const int n = static_cast<int>(order.size());
  if (order == flag_order(Triangle::Upper, n)) return "upper";
  if (order == flag_order(Triangle::Lower, n)) return "lower";
  std::string out;
  for (int v : order) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

BorelElement generic_borel(const SuperType& type, Triangle even, Triangle odd) {
  return generic_borel(type, flag_order(even, type.m), flag_order(odd, type.n));
}

BorelElement generic_borel(const SuperType& type, const FlagOrder& even, const FlagOrder& odd) {
  if (static_cast<int>(even.size()) != type.m || static_cast<int>(odd.size()) != type.n)
    throw std::invalid_argument("flag ordering does not match type " + type.str());
  BorelElement b;
  b.even_order = even;
  b.odd_order = odd;
  b.g = SymbolicChange{Matrix<MPoly>(static_cast<Index>(type.m), static_cast<Index>(type.m)),
                       Matrix<MPoly>(static_cast<Index>(type.n), static_cast<Index>(type.n))};
  auto fill = [&](Matrix<MPoly>& block, const char* tag, const FlagOrder& order) {
    std::vector<Index> rank(block.rows());
    for (Index pos = 0; pos < order.size(); ++pos) {
      const int v = order[pos];
      if (v < 1 || v > static_cast<int>(block.rows())) throw std::invalid_argument("flag ordering is not a permutation");
      rank[static_cast<Index>(v - 1)] = pos;
    }
    for (Index r = 0; r < block.rows(); ++r)
      for (Index c = 0; c < block.cols(); ++c) {
        if (rank[r] > rank[c]) continue;
        std::string name = std::string("b_") + tag + "_" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
        block(r, c) = MPoly::variable(name);
        b.variables.push_back(name);
        if (r == c) b.diagonal_variables.push_back(name);
      }
  };
  fill(b.g.even, "e", even);
  fill(b.g.odd, "o", odd);
  return b;
}

SymbolicChange generic_change(const SuperType& type, const std::string& prefix, std::vector<std::string>* variables) {
  SymbolicChange g{Matrix<MPoly>(static_cast<Index>(type.m), static_cast<Index>(type.m)),
                   Matrix<MPoly>(static_cast<Index>(type.n), static_cast<Index>(type.n))};
  auto fill = [&](Matrix<MPoly>& block, const char* tag) {
    for (Index r = 0; r < block.rows(); ++r)
      for (Index c = 0; c < block.cols(); ++c) {
        std::string name = prefix + "_" + tag + "_" + std::to_string(r + 1) + "_" + std::to_string(c + 1);
        block(r, c) = MPoly::variable(name);
        if (variables) variables->push_back(name);
      }
  };
  fill(g.even, "e");
  fill(g.odd, "o");
  return g;
}

ScalarChange specialize(const SymbolicChange& g, const std::map<std::string, Rational>& values) {
  auto at = [&](const Matrix<MPoly>& m) {
    Matrix<Rational> out(m.rows(), m.cols());
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).evaluate(values);
    return out;
  };
  return {at(g.even), at(g.odd)};
}

}  // namespace jsv
