#pragma once

#include <array>
#include <string>
#include <vector>

#include "jsv/exact/laurent.hpp"
#include "jsv/exact/matrix.hpp"
#include "jsv/superalgebra/structure.hpp"

namespace jsv {

enum class EntryDomain { Scalar, Symbolic, Laurent };

template <class T>
constexpr EntryDomain domain_of() {
  if constexpr (std::is_same_v<T, Rational>)
    return EntryDomain::Scalar;
  else if constexpr (std::is_same_v<T, MPoly>)
    return EntryDomain::Symbolic;
  else
    return EntryDomain::Laurent;
}

/// Element of GL(V0) x GL(V1): column i of a block is the image of the i-th
/// basis vector of that parity.
template <class T>
struct BasisChange {
  Matrix<T> even;
  Matrix<T> odd;

  static constexpr EntryDomain domain = domain_of<T>();

  static BasisChange identity(const SuperType& type) {
    return {Matrix<T>::identity(static_cast<std::size_t>(type.m)), Matrix<T>::identity(static_cast<std::size_t>(type.n))};
  }
  static BasisChange scalar(const SuperType& type, const T& lambda) {
    auto g = identity(type);
    for (std::size_t i = 0; i < g.even.rows(); ++i) g.even(i, i) = lambda;
    for (std::size_t i = 0; i < g.odd.rows(); ++i) g.odd(i, i) = lambda;
    return g;
  }

  SuperType type() const { return {static_cast<int>(even.rows()), static_cast<int>(odd.rows())}; }

  /// Entry of the full block-diagonal matrix, 1-based.
  T entry(int row, int col) const {
    const int m = static_cast<int>(even.rows());
    if (row <= m && col <= m) return even(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1));
    if (row > m && col > m) return odd(static_cast<std::size_t>(row - m - 1), static_cast<std::size_t>(col - m - 1));
    return T(0);
  }

  friend BasisChange operator*(const BasisChange& a, const BasisChange& b) { return {a.even * b.even, a.odd * b.odd}; }
  friend bool operator==(const BasisChange&, const BasisChange&) = default;
};

using ScalarChange = BasisChange<Rational>;
using SymbolicChange = BasisChange<MPoly>;
using CurveChange = BasisChange<LaurentPoly>;

/// Throws ArithmeticError if g is singular.
ScalarChange inverse(const ScalarChange& g);

/// (g*mu)(x, y) = g mu(g^-1 x, g^-1 y). Throws ArithmeticError for singular g.
SuperStructure act(const ScalarChange& g, const SuperStructure& s);

/// Transformed table as numerator / (det_even^p0 * det_odd^p1), entrywise.
template <class T>
struct FractionTable {
  SuperType type;
  T det_even{1};
  T det_odd{1};
  std::vector<T> numerator;
  std::vector<std::array<unsigned, 2>> power;

  std::size_t slot(int i, int j, int k) const {
    const auto d = static_cast<std::size_t>(type.dim());
    return (static_cast<std::size_t>(i - 1) * d + static_cast<std::size_t>(j - 1)) * d + static_cast<std::size_t>(k - 1);
  }
  const T& num(int i, int j, int k) const { return numerator[slot(i, j, k)]; }
  T denominator(int i, int j, int k) const {
    const auto& p = power[slot(i, j, k)];
    return det_even.pow(p[0]) * det_odd.pow(p[1]);
  }
};

/// g*s with g^-1 = adj(g)/det: entry (i,j,k) has denominator det_{|i|} det_{|j|}.
FractionTable<MPoly> act_symbolic(const SymbolicChange& g, const SuperStructure& s);
FractionTable<LaurentPoly> act_curve(const CurveChange& g, const SuperStructure& s);

/// a^-1 * s, which needs only one determinant per entry: det_{|k|}.
/// Used where g ranges over a group, so parametrizing by its inverse is free.
FractionTable<MPoly> act_inverse_symbolic(const SymbolicChange& a, const SuperStructure& s);

struct ClearedAction {
  SuperStructure table;  // D * (g*s)
  MPoly denominator;     // D, a product of block-determinant powers
};

/// The single-denominator form D * (g*s).
ClearedAction act_symbolic_cleared(const SymbolicChange& g, const SuperStructure& s);

enum class Triangle { Upper, Lower };

std::string to_string(Triangle t);

/// Ordering of one block's basis vectors; the Borel element is upper
/// triangular with respect to it. {1,2,...} is upper, its reverse is lower.
using FlagOrder = std::vector<int>;

FlagOrder flag_order(Triangle t, int size);
/// "upper", "lower", or the ordering itself such as "2,1,3".
std::string flag_name(const FlagOrder& order);

struct BorelElement {
  SymbolicChange g;
  FlagOrder even_order;
  FlagOrder odd_order;
  std::vector<std::string> variables;           // every symbolic entry
  std::vector<std::string> diagonal_variables;  // must be invertible
};

/// Generic triangular element of G with fresh variables b_e_i_j / b_o_i_j.
BorelElement generic_borel(const SuperType& type, Triangle even = Triangle::Upper, Triangle odd = Triangle::Upper);
BorelElement generic_borel(const SuperType& type, const FlagOrder& even, const FlagOrder& odd);

/// Fully generic element of G with variables `prefix`_e_i_j / `prefix`_o_i_j.
SymbolicChange generic_change(const SuperType& type, const std::string& prefix, std::vector<std::string>* variables = nullptr);

/// Substitutes concrete values into a symbolic change.
ScalarChange specialize(const SymbolicChange& g, const std::map<std::string, Rational>& values);

}  // namespace jsv
