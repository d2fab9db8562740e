#include "jsv/exact/rational.hpp"

#include <cctype>

namespace jsv {

Rational::Rational(long num, long den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class v) : value_(std::move(v)) {
  if (value_.get_den() == 0) throw ArithmeticError("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto valid_int = [](std::string_view s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!valid_int(num, true)) throw std::invalid_argument("malformed rational: " + std::string(text));
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  if (slash == std::string_view::npos) return Rational(mpz_class(num_str));
  std::string_view den = text.substr(slash + 1);
  if (!valid_int(den, false)) throw std::invalid_argument("malformed rational: " + std::string(text));
  mpz_class d(std::string{den});
  if (d == 0) throw ArithmeticError("rational with zero denominator: " + std::string(text));
  return Rational(mpq_class(mpz_class(num_str), d));
}

std::optional<Rational> Rational::checked_div(const Rational& a, const Rational& b) {
  if (b.is_zero()) return std::nullopt;
  return Rational(mpq_class(a.value_ / b.value_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ArithmeticError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), value_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), value_.get_den_mpz_t(), e);
  return Rational(mpq_class(n, d));
}

}  // namespace jsv
