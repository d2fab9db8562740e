#include "jsv/groebner/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jsv {

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::string> priority)
    : kind_(kind), vars_(std::move(priority)) {
  std::set<std::string> seen;
  for (const auto& v : vars_)
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable in order: " + v);
}

MonomialOrder MonomialOrder::extended_with(const std::vector<std::string>& extra) const {
  std::set<std::string> present(vars_.begin(), vars_.end());
  std::set<std::string> missing;
  for (const auto& v : extra)
    if (!present.count(v)) missing.insert(v);
  if (missing.empty()) return *this;
  MonomialOrder out = *this;
  out.vars_.insert(out.vars_.end(), missing.begin(), missing.end());
  return out;
}

int MonomialOrder::compare(const Exponents& a, const Exponents& b) const {
  const std::size_t n = vars_.size();
  if (kind_ == OrderKind::DegRevLex) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < n; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = n; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

std::string MonomialOrder::str() const {
  std::ostringstream os;
  os << (kind_ == OrderKind::DegRevLex ? "degrevlex" : "lex") << '(';
  for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? ">" : "") << render_variable(vars_[i]);
  os << ')';
  return os.str();
}

std::string to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial: return "Trivial";
    case Triviality::NonTrivial: return "NonTrivial";
    case Triviality::Timeout: return "Timeout";
  }
  return "?";
}

namespace {

// Slot 0 holds the total degree, slots 1..n the exponents.
using Mono = std::vector<std::uint16_t>;

struct Exhausted {
  std::string reason;
};

struct MonoOrder {
  OrderKind kind;
  std::size_t n;

  int operator()(const Mono& a, const Mono& b) const {
    if (kind == OrderKind::DegRevLex) {
      if (a[0] != b[0]) return a[0] > b[0] ? 1 : -1;
      for (std::size_t i = n; i >= 1; --i)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      return 0;
    }
    for (std::size_t i = 1; i <= n; ++i)
      if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
  }
};

struct Descending {
  MonoOrder order;
  bool operator()(const Mono& a, const Mono& b) const { return order(a, b) > 0; }
};

bool divides(const Mono& a, const Mono& b) {
  if (a[0] > b[0]) return false;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool coprime(const Mono& a, const Mono& b) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono m(a.size());
  std::uint32_t d = 0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    m[i] = std::max(a[i], b[i]);
    d += m[i];
  }
  if (d > 0xFFFF) throw Exhausted{"monomial degree overflow"};
  m[0] = static_cast<std::uint16_t>(d);
  return m;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint32_t s = std::uint32_t{a[i]} + b[i];
    if (s > 0xFFFF) throw Exhausted{"monomial degree overflow"};
    m[i] = static_cast<std::uint16_t>(s);
  }
  return m;
}

Mono mono_div(const Mono& a, const Mono& b) {
  Mono m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return m;
}

std::uint64_t divmask(const Mono& m) {
  std::uint64_t mask = 0;
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] != 0) mask |= std::uint64_t{1} << ((i - 1) % 64);
  return mask;
}

struct RationalField {
  using Elem = mpq_class;
  Elem from(const Rational& r) const { return r.raw(); }
  Rational to(const Elem& e) const { return Rational(e); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  Elem one() const { return 1; }
  Elem inv(const Elem& a) const { return Elem(1) / a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  void sub_mul(Elem& acc, const Elem& a, const Elem& b) const { acc -= a * b; }
  Elem neg(const Elem& a) const { return -a; }
};

struct PrimeField {
  using Elem = std::uint64_t;
  std::uint64_t p;

  Elem reduce_mpz(const mpz_class& z) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
    return r.get_ui();
  }
  Elem from(const Rational& r) const {
    Elem den = reduce_mpz(r.denominator());
    if (den == 0) throw Exhausted{"denominator divisible by the modulus"};
    return mul(reduce_mpz(r.numerator()), inv(den));
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  Elem one() const { return 1; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p; }
  Elem inv(Elem a) const {
    Elem result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
  void sub_mul(Elem& acc, Elem a, Elem b) const { acc = (acc + p - mul(a, b)) % p; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
};

template <class F>
struct Poly {
  std::vector<std::pair<Mono, typename F::Elem>> terms;  // descending
  bool empty() const { return terms.empty(); }
  const Mono& lm() const { return terms.front().first; }
};

class Clock {
 public:
  explicit Clock(double limit) : start_(std::chrono::steady_clock::now()), limit_(limit) {}
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void tick() {
    if (++ticks_ % 512 == 0 && elapsed() > limit_) throw Exhausted{"time limit exceeded"};
  }

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
  std::uint64_t ticks_ = 0;
};

// Fixed ring: variable i of the order lives in slot i+1.
struct RingMap {
  std::vector<std::string> vars;
  MonoOrder order;

  Mono to_mono(const MPoly& p, const MPoly::Term& t, const std::vector<std::size_t>& slots) const {
    (void)p;
    Mono m(vars.size() + 1, 0);
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (t.exponents[i] > 0xFFFF) throw Exhausted{"exponent overflow"};
      m[slots[i] + 1] = static_cast<std::uint16_t>(t.exponents[i]);
      d += t.exponents[i];
    }
    if (d > 0xFFFF) throw Exhausted{"monomial degree overflow"};
    m[0] = static_cast<std::uint16_t>(d);
    return m;
  }

  std::vector<std::size_t> slots_of(const MPoly& p) const {
    std::vector<std::size_t> slots;
    for (const auto& v : p.variables()) {
      auto it = std::find(vars.begin(), vars.end(), v);
      if (it == vars.end()) throw std::invalid_argument("variable outside ring: " + v);
      slots.push_back(static_cast<std::size_t>(it - vars.begin()));
    }
    return slots;
  }

  template <class F>
  Poly<F> convert(const MPoly& p, const F& field) const {
    Poly<F> out;
    auto slots = slots_of(p);
    for (const auto& t : p.terms()) out.terms.emplace_back(to_mono(p, t, slots), field.from(t.coef));
    Descending desc{order};
    std::sort(out.terms.begin(), out.terms.end(),
              [&](const auto& a, const auto& b) { return desc(a.first, b.first); });
    return out;
  }

  MPoly back(const Poly<RationalField>& p) const {
    std::vector<MPoly::Term> terms;
    for (const auto& [m, c] : p.terms) terms.push_back({Exponents(m.begin() + 1, m.end()), Rational(c)});
    return MPoly::from_terms(vars, std::move(terms));
  }
};

RingMap make_ring(const MonomialOrder& order) {
  return RingMap{order.variables(), MonoOrder{order.kind(), order.variables().size()}};
}

template <class F>
void make_monic(Poly<F>& p, const F& field) {
  if (p.empty() || field.is_one(p.terms.front().second)) return;
  auto inv = field.inv(p.terms.front().second);
  for (auto& [m, c] : p.terms) c = field.mul(c, inv);
}

template <class F>
class Engine {
 public:
  Engine(const F& field, MonoOrder order, const GroebnerLimits& limits, Clock& clock)
      : field_(field), order_(order), limits_(limits), clock_(clock) {}

  // Full reduction of p against the listed (monic) polynomials.
  Poly<F> normal_form(const Poly<F>& p, const std::vector<const Poly<F>*>& divisors) {
    std::vector<std::uint64_t> masks;
    masks.reserve(divisors.size());
    for (const auto* d : divisors) masks.push_back(divmask(d->lm()));
    std::map<Mono, typename F::Elem, Descending> work(Descending{order_});
    for (const auto& t : p.terms) work.emplace(t.first, t.second);
    Poly<F> rem;
    while (!work.empty()) {
      clock_.tick();
      auto it = work.begin();
      const Mono& m = it->first;
      std::uint64_t mask = divmask(m);
      const Poly<F>* divisor = nullptr;
      for (std::size_t k = 0; k < divisors.size(); ++k) {
        if ((masks[k] & ~mask) == 0 && divides(divisors[k]->lm(), m)) {
          divisor = divisors[k];
          break;
        }
      }
      if (divisor == nullptr) {
        rem.terms.emplace_back(it->first, std::move(it->second));
        work.erase(it);
        continue;
      }
      Mono q = mono_div(m, divisor->lm());
      auto c = std::move(it->second);
      work.erase(it);
      for (std::size_t k = 1; k < divisor->terms.size(); ++k) {
        const auto& [dm, dc] = divisor->terms[k];
        Mono prod = mono_mul(q, dm);
        auto [slot, inserted] = work.try_emplace(std::move(prod), typename F::Elem{});
        field_.sub_mul(slot->second, c, dc);
        if (field_.is_zero(slot->second)) work.erase(slot);
      }
    }
    return rem;
  }

  Poly<F> spoly(const Poly<F>& f, const Poly<F>& g) {
    Mono l = mono_lcm(f.lm(), g.lm());
    Mono qf = mono_div(l, f.lm());
    Mono qg = mono_div(l, g.lm());
    std::map<Mono, typename F::Elem, Descending> acc(Descending{order_});
    for (std::size_t k = 1; k < f.terms.size(); ++k) acc.emplace(mono_mul(qf, f.terms[k].first), f.terms[k].second);
    for (std::size_t k = 1; k < g.terms.size(); ++k) {
      auto [slot, inserted] = acc.try_emplace(mono_mul(qg, g.terms[k].first), typename F::Elem{});
      field_.sub_mul(slot->second, field_.one(), g.terms[k].second);
      if (field_.is_zero(slot->second)) acc.erase(slot);
    }
    Poly<F> out;
    for (auto& [m, c] : acc) out.terms.emplace_back(m, std::move(c));
    return out;
  }

  std::vector<Poly<F>> buchberger(std::vector<Poly<F>> input, GroebnerStats& stats) {
    store_.clear();
    active_.clear();
    pairs_.clear();
    for (auto& p : input) {
      if (p.empty()) continue;
      make_monic(p, field_);
      if (p.lm()[0] == 0) return {unit()};
      add(std::move(p), stats);
    }
    while (!pairs_.empty()) {
      clock_.tick();
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        const auto& a = pairs_[k];
        const auto& b = pairs_[best];
        if (std::tie(a.lcm[0], a.i, a.j) < std::tie(b.lcm[0], b.i, b.j)) best = k;
      }
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (pr.lcm[0] > limits_.max_degree) throw Exhausted{"degree cap exceeded"};
      ++stats.pairs_processed;
      Poly<F> h = normal_form(spoly(store_[pr.i], store_[pr.j]), active_polys());
      if (h.empty()) {
        ++stats.zero_reductions;
        continue;
      }
      make_monic(h, field_);
      if (h.lm()[0] == 0) return {unit()};
      add(std::move(h), stats);
    }
    return finish();
  }

 private:
  struct Pair {
    std::size_t i, j;
    Mono lcm;
  };

  Poly<F> unit() const {
    Poly<F> one;
    one.terms.emplace_back(Mono(order_.n + 1, 0), field_.one());
    return one;
  }

  std::vector<const Poly<F>*> active_polys() const {
    std::vector<const Poly<F>*> out;
    out.reserve(active_.size());
    for (auto idx : active_) out.push_back(&store_[idx]);
    return out;
  }

  // Gebauer-Moeller update with the product and chain criteria.
  void add(Poly<F> h, GroebnerStats& stats) {
    if (h.lm()[0] > limits_.max_degree) throw Exhausted{"degree cap exceeded"};
    stats.max_degree = std::max<unsigned>(stats.max_degree, h.lm()[0]);
    const std::size_t hi = store_.size();
    store_.push_back(std::move(h));
    const Mono& lh = store_[hi].lm();

    std::vector<Pair> candidates;
    for (auto g : active_) candidates.push_back({g, hi, mono_lcm(store_[g].lm(), lh)});
    std::vector<Pair> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const auto& c = candidates[k];
      bool keep = coprime(store_[c.i].lm(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < candidates.size() && keep; ++l)
          if (divides(candidates[l].lcm, c.lcm)) keep = false;
        for (std::size_t l = 0; l < kept.size() && keep; ++l)
          if (divides(kept[l].lcm, c.lcm)) keep = false;
      }
      if (keep)
        kept.push_back(c);
      else
        ++stats.pairs_pruned;
    }
    std::vector<Pair> fresh;
    for (auto& c : kept) {
      if (coprime(store_[c.i].lm(), lh))
        ++stats.pairs_pruned;
      else
        fresh.push_back(std::move(c));
    }
    std::vector<Pair> remaining;
    for (auto& p : pairs_) {
      bool drop = divides(lh, p.lcm) && mono_lcm(store_[p.i].lm(), lh) != p.lcm &&
                  mono_lcm(lh, store_[p.j].lm()) != p.lcm;
      if (drop)
        ++stats.pairs_pruned;
      else
        remaining.push_back(std::move(p));
    }
    pairs_ = std::move(remaining);
    for (auto& p : fresh) pairs_.push_back(std::move(p));

    std::vector<std::size_t> next;
    for (auto g : active_)
      if (!divides(lh, store_[g].lm())) next.push_back(g);
    next.push_back(hi);
    active_ = std::move(next);
    if (active_.size() > limits_.max_basis_size) throw Exhausted{"basis size cap exceeded"};
    stats.max_basis_size = std::max(stats.max_basis_size, active_.size());
  }

  std::vector<Poly<F>> finish() {
    std::vector<std::size_t> minimal;
    for (std::size_t a = 0; a < active_.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < active_.size() && !redundant; ++b) {
        if (a == b) continue;
        const Mono& la = store_[active_[a]].lm();
        const Mono& lb = store_[active_[b]].lm();
        if (divides(lb, la) && (la != lb || b < a)) redundant = true;
      }
      if (!redundant) minimal.push_back(active_[a]);
    }
    std::vector<Poly<F>> reduced;
    for (auto idx : minimal) {
      std::vector<const Poly<F>*> others;
      for (auto o : minimal)
        if (o != idx) others.push_back(&store_[o]);
      Poly<F> g = normal_form(store_[idx], others);
      make_monic(g, field_);
      reduced.push_back(std::move(g));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const Poly<F>& a, const Poly<F>& b) { return order_(a.lm(), b.lm()) > 0; });
    return reduced;
  }

  const F& field_;
  MonoOrder order_;
  const GroebnerLimits& limits_;
  Clock& clock_;
  std::vector<Poly<F>> store_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

std::optional<bool> modular_triviality(const Ideal& ideal, const GroebnerLimits& limits) {
  try {
    PrimeField field{limits.prime != 0 ? limits.prime : default_prime()};
    RingMap ring = make_ring(ideal.order());
    std::vector<Poly<PrimeField>> input;
    for (const auto& g : ideal.generators()) input.push_back(ring.convert(g, field));
    Clock clock(limits.time_limit_seconds);
    Engine<PrimeField> engine(field, ring.order, limits, clock);
    GroebnerStats stats;
    auto basis = engine.buchberger(std::move(input), stats);
    return basis.size() == 1 && basis.front().lm()[0] == 0;
  } catch (const Exhausted&) {
    return std::nullopt;
  }
}

}  // namespace

Ideal::Ideal(std::vector<MPoly> generators, MonomialOrder order) : generators_(std::move(generators)) {
  std::vector<std::string> vars;
  for (const auto& g : generators_) vars.insert(vars.end(), g.variables().begin(), g.variables().end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  order_ = order.extended_with(vars);
}

BasisResult Ideal::basis(const GroebnerLimits& limits) const {
  std::lock_guard lock(cache_->mutex);
  if (cache_->result) return *cache_->result;
  BasisResult r = groebner_basis(*this, limits);
  if (!r.timeout) cache_->result = r;
  return r;
}

bool Ideal::has_cached_basis() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->result.has_value();
}

BasisResult groebner_basis(const Ideal& ideal, const GroebnerLimits& limits) {
  BasisResult result;
  if (limits.modular_precheck) result.modular_trivial = modular_triviality(ideal, limits);
  Clock clock(limits.time_limit_seconds);
  try {
    RationalField field;
    RingMap ring = make_ring(ideal.order());
    std::vector<Poly<RationalField>> input;
    for (const auto& g : ideal.generators()) input.push_back(ring.convert(g, field));
    Engine<RationalField> engine(field, ring.order, limits, clock);
    auto basis = engine.buchberger(std::move(input), result.stats);
    for (const auto& b : basis) result.basis.push_back(ring.back(b));
  } catch (const Exhausted& e) {
    result.timeout = true;
    result.timeout_reason = e.reason;
    result.basis.clear();
  }
  result.stats.basis_size = result.basis.size();
  result.stats.seconds = clock.elapsed();
  return result;
}

MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis, const MonomialOrder& order) {
  std::vector<std::string> vars = p.variables();
  for (const auto& b : basis) vars.insert(vars.end(), b.variables().begin(), b.variables().end());
  RingMap ring = make_ring(order.extended_with(vars));
  RationalField field;
  std::vector<Poly<RationalField>> divisors;
  for (const auto& b : basis) {
    if (b.is_zero()) continue;
    divisors.push_back(ring.convert(b, field));
    make_monic(divisors.back(), field);
  }
  std::vector<const Poly<RationalField>*> ptrs;
  for (const auto& d : divisors) ptrs.push_back(&d);
  GroebnerLimits limits;
  limits.time_limit_seconds = 1e18;
  Clock clock(limits.time_limit_seconds);
  Engine<RationalField> engine(field, ring.order, limits, clock);
  return ring.back(engine.normal_form(ring.convert(p, field), ptrs));
}

Reduction reduce(const MPoly& p, const Ideal& ideal, const GroebnerLimits& limits) {
  Reduction r;
  BasisResult b = ideal.basis(limits);
  if (b.timeout) {
    r.timeout = true;
    r.timeout_reason = b.timeout_reason;
    return r;
  }
  r.remainder = normal_form(p, b.basis, ideal.order());
  return r;
}

Triviality is_trivial(const Ideal& ideal, const GroebnerLimits& limits, GroebnerStats* stats) {
  BasisResult b = ideal.basis(limits);
  if (stats != nullptr) *stats = b.stats;
  if (b.timeout) return Triviality::Timeout;
  bool trivial = b.basis.size() == 1 && b.basis.front().is_constant();
  return trivial ? Triviality::Trivial : Triviality::NonTrivial;
}

Ideal saturate_by_unit(const Ideal& ideal, const MPoly& d, const std::string& aux) {
  if (d.is_zero()) throw std::invalid_argument("saturation by the zero polynomial");
  if (std::find(ideal.order().variables().begin(), ideal.order().variables().end(), aux) !=
      ideal.order().variables().end())
    throw std::invalid_argument("auxiliary variable already in use: " + aux);
  std::vector<MPoly> gens = ideal.generators();
  gens.push_back(d * MPoly::variable(aux) - MPoly(1));
  std::vector<std::string> vars = ideal.order().variables();
  for (const auto& v : d.variables())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  vars.push_back(aux);
  return Ideal(std::move(gens), MonomialOrder(ideal.order().kind(), std::move(vars)));
}

MPoly leading_term(const MPoly& p, const MonomialOrder& order) {
  if (p.is_zero()) return {};
  MonomialOrder full = order.extended_with(p.variables());
  RingMap ring = make_ring(full);
  RationalField field;
  auto poly = ring.convert(p, field);
  Poly<RationalField> lt;
  lt.terms.push_back(poly.terms.front());
  return ring.back(lt);
}

MPoly s_polynomial(const MPoly& f, const MPoly& g, const MonomialOrder& order) {
  std::vector<std::string> vars = f.variables();
  vars.insert(vars.end(), g.variables().begin(), g.variables().end());
  RingMap ring = make_ring(order.extended_with(vars));
  RationalField field;
  auto pf = ring.convert(f, field);
  auto pg = ring.convert(g, field);
  make_monic(pf, field);
  make_monic(pg, field);
  GroebnerLimits limits;
  limits.time_limit_seconds = 1e18;
  Clock clock(limits.time_limit_seconds);
  Engine<RationalField> engine(field, ring.order, limits, clock);
  return ring.back(engine.spoly(pf, pg));
}

bool satisfies_buchberger_criterion(const std::vector<MPoly>& basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) return false;
  return true;
}

std::uint64_t default_prime() {
  auto is_prime = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  static const std::uint64_t p = [&] {
    std::uint64_t n = (std::uint64_t{1} << 31) - 1;
    while (!is_prime(n)) --n;
    return n;
  }();
  return p;
}

}  // namespace jsv
