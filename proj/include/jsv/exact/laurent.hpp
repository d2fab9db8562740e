#pragma once

#include <map>
#include <optional>
#include <string>

#include "jsv/exact/mpoly.hpp"

namespace jsv {

/// Laurent polynomial in the curve parameter t with MPoly coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const MPoly& constant);  // NOLINT(google-explicit-constructor)
  LaurentPoly(long c) : LaurentPoly(MPoly(c)) {}  // NOLINT(google-explicit-constructor)

  /// coef * t^exponent.
  static LaurentPoly monomial(const MPoly& coef, int exponent);
  static LaurentPoly t() { return monomial(MPoly(1), 1); }

  const std::map<int, MPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Minimal exponent; nullopt for the zero polynomial.
  std::optional<int> order() const;
  MPoly coefficient(int exponent) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  LaurentPoly pow(int e) const;
  /// Inverse of c*t^k for a nonzero constant c; nullopt otherwise.
  std::optional<LaurentPoly> inverse() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string str() const;

 private:
  std::map<int, MPoly> terms_;
};

/// Value at t = 0 when there is no pole; nullopt signals "no limit".
std::optional<MPoly> laurent_limit(const LaurentPoly& p);

/// Limit as t -> 0 of num/den. Requires the lowest coefficient of `den` to be
/// a nonzero rational; throws ArithmeticError if den is zero or that
/// coefficient is symbolic.
std::optional<MPoly> laurent_ratio_limit(const LaurentPoly& num, const LaurentPoly& den);

}  // namespace jsv
