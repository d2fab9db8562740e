#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jsv/exact/rational.hpp"

namespace jsv {

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial over the rationals in named variables.
///
/// Canonical form: `variables()` lists exactly the variables that occur, sorted
/// by name; terms are sorted by exponent vector in descending lexicographic
/// order and carry nonzero coefficients. Two polynomials are equal iff their
/// canonical forms coincide.
class MPoly {
 public:
  struct Term {
    Exponents exponents;
    Rational coef;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MPoly(int c) : MPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static MPoly variable(const std::string& name);
  /// Builds from (possibly unsorted, duplicated, zero) terms over `vars`.
  static MPoly from_terms(std::vector<std::string> vars, std::vector<Term> terms);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return vars_.empty(); }
  /// Coefficient of the empty monomial.
  Rational constant_term() const;
  /// Value if the polynomial is constant.
  std::optional<Rational> as_constant() const;
  unsigned total_degree() const;
  unsigned degree_in(const std::string& var) const;
  bool contains(const std::string& var) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator-() const;
  MPoly scaled(const Rational& c) const;
  MPoly pow(unsigned e) const;

  friend bool operator==(const MPoly&, const MPoly&) = default;
  /// Deterministic total order on canonical forms (for use as map keys).
  friend bool operator<(const MPoly& a, const MPoly& b);

  /// Simultaneous substitution; unbound variables are kept.
  MPoly substitute(const std::map<std::string, MPoly>& bindings) const;
  /// Full evaluation; throws std::out_of_range if a variable is unbound.
  Rational evaluate(const std::map<std::string, Rational>& point) const;

  /// Splits p = sum_m m * coeff_m where m ranges over monomials in `vars`.
  std::map<Exponents, MPoly> coefficients_in(const std::vector<std::string>& vars) const;

  /// Text form in the polynomial syntax (structure constants as cIJ^K).
  std::string str() const;

 private:
  void prune();

  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

/// Internal identifier of the structure constant c_{ij}^k.
std::string structure_constant_name(int i, int j, int k);
/// Inverse of structure_constant_name; nullopt for other identifiers.
std::optional<std::array<int, 3>> parse_structure_constant_name(const std::string& name);
/// Surface rendering of a variable name (c_I_J_K -> cIJ^K).
std::string render_variable(const std::string& name);

}  // namespace jsv
