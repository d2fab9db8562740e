#include "jsv/exact/mpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace jsv {
namespace {

using Terms = std::vector<MPoly::Term>;

std::vector<std::string> union_vars(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Position of every variable of `from` inside the sorted superset `to`.
std::vector<std::size_t> positions(const std::vector<std::string>& from,
                                   const std::vector<std::string>& to) {
  std::vector<std::size_t> idx;
  idx.reserve(from.size());
  for (const auto& v : from) {
    auto it = std::lower_bound(to.begin(), to.end(), v);
    idx.push_back(static_cast<std::size_t>(it - to.begin()));
  }
  return idx;
}

// Remapping into a sorted superset of variables preserves lex order.
Terms align(const std::vector<std::string>& from, const Terms& terms,
            const std::vector<std::string>& to) {
  if (from.size() == to.size()) return terms;
  auto idx = positions(from, to);
  Terms out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    Exponents e(to.size(), 0);
    for (std::size_t i = 0; i < idx.size(); ++i) e[idx[i]] = t.exponents[i];
    out.push_back({std::move(e), t.coef});
  }
  return out;
}

Terms add_aligned(const Terms& a, const Terms& b, bool subtract) {
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponents > b[j].exponents)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponents > a[i].exponents) {
      out.push_back({b[j].exponents, subtract ? -b[j].coef : b[j].coef});
      ++j;
    } else {
      Rational c = subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
      if (!c.is_zero()) out.push_back({a[i].exponents, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

using Accumulator = std::map<Exponents, Rational, std::greater<>>;

void accumulate(Accumulator& acc, Exponents e, const Rational& c) {
  auto [it, inserted] = acc.try_emplace(std::move(e), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

Terms flatten(Accumulator& acc) {
  Terms out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc) out.push_back({e, std::move(c)});
  return out;
}

Terms mul_aligned(const Terms& a, const Terms& b) {
  if (a.empty() || b.empty()) return {};
  Accumulator acc;
  const std::size_t n = a.front().exponents.size();
  Exponents e(n);
  for (const auto& x : a) {
    for (const auto& y : b) {
      for (std::size_t k = 0; k < n; ++k) e[k] = x.exponents[k] + y.exponents[k];
      accumulate(acc, e, x.coef * y.coef);
    }
  }
  return flatten(acc);
}

}  // namespace

MPoly::MPoly(const Rational& c) {
  if (!c.is_zero()) terms_.push_back({{}, c});
}

MPoly MPoly::variable(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  MPoly p;
  p.vars_ = {name};
  p.terms_.push_back({{1}, Rational(1)});
  return p;
}

MPoly MPoly::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
  std::vector<std::size_t> order(vars.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return vars[x] < vars[y]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (vars[order[i]] == vars[order[i - 1]])
      throw std::invalid_argument("duplicate variable " + vars[order[i]]);
  Accumulator acc;
  for (auto& t : terms) {
    if (t.exponents.size() != vars.size())
      throw std::invalid_argument("exponent vector length does not match variables");
    if (t.coef.is_zero()) continue;
    Exponents e(vars.size());
    for (std::size_t i = 0; i < order.size(); ++i) e[i] = t.exponents[order[i]];
    accumulate(acc, std::move(e), t.coef);
  }
  MPoly p;
  for (auto i : order) p.vars_.push_back(vars[i]);
  p.terms_ = flatten(acc);
  p.prune();
  return p;
}

void MPoly::prune() {
  std::vector<bool> used(vars_.size(), false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (t.exponents[i] != 0) used[i] = true;
  if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) return;
  std::vector<std::string> vars;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (used[i]) {
      vars.push_back(vars_[i]);
      keep.push_back(i);
    }
  for (auto& t : terms_) {
    Exponents e;
    e.reserve(keep.size());
    for (auto i : keep) e.push_back(t.exponents[i]);
    t.exponents = std::move(e);
  }
  vars_ = std::move(vars);
}

Rational MPoly::constant_term() const {
  if (terms_.empty()) return Rational(0);
  const auto& last = terms_.back();
  for (auto e : last.exponents)
    if (e != 0) return Rational(0);
  return last.coef;
}

std::optional<Rational> MPoly::as_constant() const {
  if (!is_constant()) return std::nullopt;
  return constant_term();
}

unsigned MPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (auto e : t.exponents) s += e;
    d = std::max(d, s);
  }
  return d;
}

unsigned MPoly::degree_in(const std::string& var) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it == vars_.end() || *it != var) return 0;
  auto k = static_cast<std::size_t>(it - vars_.begin());
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.exponents[k]);
  return d;
}

bool MPoly::contains(const std::string& var) const {
  return std::binary_search(vars_.begin(), vars_.end(), var);
}

MPoly& MPoly::operator+=(const MPoly& o) {
  auto vars = union_vars(vars_, o.vars_);
  terms_ = add_aligned(align(vars_, terms_, vars), align(o.vars_, o.terms_, vars), false);
  vars_ = std::move(vars);
  prune();
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  auto vars = union_vars(vars_, o.vars_);
  terms_ = add_aligned(align(vars_, terms_, vars), align(o.vars_, o.terms_, vars), true);
  vars_ = std::move(vars);
  prune();
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly p;
  if (a.is_zero() || b.is_zero()) return p;
  p.vars_ = union_vars(a.vars_, b.vars_);
  p.terms_ = mul_aligned(align(a.vars_, a.terms_, p.vars_), align(b.vars_, b.terms_, p.vars_));
  p.prune();
  return p;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly MPoly::operator-() const { return scaled(Rational(-1)); }

MPoly MPoly::scaled(const Rational& c) const {
  if (c.is_zero()) return {};
  MPoly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1);
  MPoly base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator<(const MPoly& a, const MPoly& b) {
  if (a.vars_ != b.vars_) return a.vars_ < b.vars_;
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
      [](const MPoly::Term& x, const MPoly::Term& y) {
        if (x.exponents != y.exponents) return x.exponents < y.exponents;
        return x.coef < y.coef;
      });
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& bindings) const {
  std::vector<std::string> result_vars;
  std::vector<const MPoly*> bound(vars_.size(), nullptr);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = bindings.find(vars_[i]);
    if (it == bindings.end()) {
      result_vars = union_vars(result_vars, {vars_[i]});
    } else {
      bound[i] = &it->second;
      result_vars = union_vars(result_vars, it->second.vars_);
    }
  }
  const std::size_t n = result_vars.size();
  // powers[i][e] is the aligned image of vars_[i]^e.
  std::vector<std::vector<Terms>> powers(vars_.size());
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    unsigned maxe = 0;
    for (const auto& t : terms_) maxe = std::max<unsigned>(maxe, t.exponents[i]);
    Terms base;
    if (bound[i] != nullptr) {
      base = align(bound[i]->vars_, bound[i]->terms_, result_vars);
    } else {
      Exponents e(n, 0);
      e[positions({vars_[i]}, result_vars)[0]] = 1;
      base.push_back({std::move(e), Rational(1)});
    }
    powers[i].push_back({{Exponents(n, 0), Rational(1)}});
    for (unsigned k = 1; k <= maxe; ++k) powers[i].push_back(mul_aligned(powers[i].back(), base));
  }
  Accumulator acc;
  for (const auto& t : terms_) {
    Terms prod = {{Exponents(n, 0), t.coef}};
    for (std::size_t i = 0; i < vars_.size() && !prod.empty(); ++i)
      if (t.exponents[i] != 0) prod = mul_aligned(prod, powers[i][t.exponents[i]]);
    for (auto& x : prod) accumulate(acc, std::move(x.exponents), x.coef);
  }
  MPoly p;
  p.vars_ = std::move(result_vars);
  p.terms_ = flatten(acc);
  p.prune();
  return p;
}

Rational MPoly::evaluate(const std::map<std::string, Rational>& point) const {
  std::vector<Rational> values;
  values.reserve(vars_.size());
  for (const auto& v : vars_) {
    auto it = point.find(v);
    if (it == point.end()) throw std::out_of_range("unbound variable " + v);
    values.push_back(it->second);
  }
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational prod = t.coef;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (t.exponents[i] != 0) prod *= values[i].pow(t.exponents[i]);
    sum += prod;
  }
  return sum;
}

std::map<Exponents, MPoly> MPoly::coefficients_in(const std::vector<std::string>& vars) const {
  std::vector<int> slot(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it != vars.end()) slot[i] = static_cast<int>(it - vars.begin());
  }
  std::map<Exponents, std::vector<Term>> parts;
  for (const auto& t : terms_) {
    Exponents key(vars.size(), 0);
    Exponents rest(vars_.size(), 0);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (slot[i] >= 0)
        key[static_cast<std::size_t>(slot[i])] = t.exponents[i];
      else
        rest[i] = t.exponents[i];
    }
    parts[key].push_back({std::move(rest), t.coef});
  }
  std::map<Exponents, MPoly> out;
  for (auto& [key, terms] : parts) out.emplace(key, from_terms(vars_, std::move(terms)));
  return out;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    bool negative = c.sign() < 0;
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    bool has_vars = std::any_of(t.exponents.begin(), t.exponents.end(), [](auto e) { return e != 0; });
    bool need_star = false;
    if (!c.is_one() || !has_vars) {
      os << c.str();
      need_star = true;
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (need_star) os << '*';
      need_star = true;
      std::string v = render_variable(vars_[i]);
      bool sc = parse_structure_constant_name(vars_[i]).has_value();
      if (t.exponents[i] == 1)
        os << v;
      else if (sc)
        os << '(' << v << ")^" << t.exponents[i];
      else
        os << v << '^' << t.exponents[i];
    }
  }
  return os.str();
}

std::string structure_constant_name(int i, int j, int k) {
  return "c_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}

std::optional<std::array<int, 3>> parse_structure_constant_name(const std::string& name) {
  if (name.size() < 7 || name[0] != 'c' || name[1] != '_') return std::nullopt;
  std::array<int, 3> idx{};
  std::size_t pos = 2;
  for (int part = 0; part < 3; ++part) {
    std::size_t start = pos;
    int value = 0;
    while (pos < name.size() && name[pos] >= '0' && name[pos] <= '9' && pos - start < 6)
      value = value * 10 + (name[pos++] - '0');
    if (pos == start) return std::nullopt;
    idx[static_cast<std::size_t>(part)] = value;
    if (part < 2) {
      if (pos >= name.size() || name[pos] != '_') return std::nullopt;
      ++pos;
    }
  }
  if (pos != name.size()) return std::nullopt;
  return idx;
}

std::string render_variable(const std::string& name) {
  auto idx = parse_structure_constant_name(name);
  if (!idx || (*idx)[0] > 9 || (*idx)[1] > 9 || (*idx)[2] > 9) return name;
  return "c" + std::to_string((*idx)[0]) + std::to_string((*idx)[1]) + "^" + std::to_string((*idx)[2]);
}

}  // namespace jsv
