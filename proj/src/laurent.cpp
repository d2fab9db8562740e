#include "jsv/exact/laurent.hpp"

#include <sstream>

namespace jsv {

LaurentPoly::LaurentPoly(const MPoly& constant) {
  if (!constant.is_zero()) terms_.emplace(0, constant);
}

LaurentPoly LaurentPoly::monomial(const MPoly& coef, int exponent) {
  LaurentPoly p;
  if (!coef.is_zero()) p.terms_.emplace(exponent, coef);
  return p;
}

std::optional<int> LaurentPoly::order() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

MPoly LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? MPoly() : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    MPoly sum = coefficient(e) + c;
    if (sum.is_zero())
      terms_.erase(e);
    else
      terms_[e] = std::move(sum);
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) p += LaurentPoly::monomial(ca * cb, ea + eb);
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

std::optional<LaurentPoly> LaurentPoly::inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  auto value = c.as_constant();
  if (!value) return std::nullopt;
  return monomial(MPoly(Rational(1) / *value), -e);
}

LaurentPoly LaurentPoly::pow(int e) const {
  LaurentPoly base = *this;
  if (e < 0) {
    auto inv = inverse();
    if (!inv) throw ArithmeticError("negative power of a non-invertible Laurent polynomial");
    base = *inv;
    e = -e;
  }
  LaurentPoly result(1);
  for (int i = 0; i < e; ++i) result = result * base;
  return result;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (e == 0) {
      os << '(' << c.str() << ')';
    } else {
      os << '(' << c.str() << ")*t^" << e;
    }
  }
  return os.str();
}

std::optional<MPoly> laurent_limit(const LaurentPoly& p) {
  auto ord = p.order();
  if (!ord) return MPoly();
  if (*ord < 0) return std::nullopt;
  return p.coefficient(0);
}

std::optional<MPoly> laurent_ratio_limit(const LaurentPoly& num, const LaurentPoly& den) {
  auto dord = den.order();
  if (!dord) throw ArithmeticError("limit of a ratio with zero denominator");
  auto lead = den.coefficient(*dord).as_constant();
  if (!lead) throw ArithmeticError("symbolic leading coefficient in denominator: " + den.str());
  auto nord = num.order();
  if (!nord) return MPoly();
  if (*nord < *dord) return std::nullopt;
  if (*nord > *dord) return MPoly();
  return num.coefficient(*nord).scaled(Rational(1) / *lead);
}

}  // namespace jsv
