#include "jsv/certificate/certificate.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace jsv {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string constant_label(int i, int j, int k) {
  return "c" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k);
}

/// Canonical c-variables of a type, in name order.
std::vector<std::string> canonical_variables(const SuperType& type) {
  std::vector<std::string> out;
  for (int i = 1; i <= type.dim(); ++i)
    for (int j = i; j <= type.dim(); ++j)
      for (int k = 1; k <= type.dim(); ++k) {
        auto c = canonicalize_index(type, i, j, k);
        if (c.status == CanonicalIndex::Status::Valid && c.sign != 0) out.push_back(structure_constant_name(i, j, k));
      }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> c_variables_of(const std::vector<MPoly>& polys) {
  std::set<std::string> vars;
  for (const auto& p : polys)
    for (const auto& v : p.variables())
      if (parse_structure_constant_name(v)) vars.insert(v);
  return {vars.begin(), vars.end()};
}

/// Degrevlex with the groups in the given order.
MonomialOrder grouped_order(std::initializer_list<std::vector<std::string>> groups) {
  std::vector<std::string> all;
  for (const auto& g : groups)
    for (const auto& v : g)
      if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
  return {OrderKind::DegRevLex, all};
}

/// Bindings c_i_j_k -> value for every canonical constant, from a table of
/// fractions num / den where den is supplied per parity of k.
std::map<std::string, MPoly> transformed_bindings(const SuperType& type, const FractionTable<MPoly>& f,
                                                  const MPoly& even_factor, const MPoly& odd_factor,
                                                  const std::vector<std::string>& needed) {
  std::map<std::string, MPoly> out;
  for (const auto& name : needed) {
    auto idx = parse_structure_constant_name(name);
    const auto [i, j, k] = *idx;
    const MPoly& factor = type.parity(k) ? odd_factor : even_factor;
    out[name] = f.num(i, j, k) * factor;
  }
  return out;
}

void merge_stats(GroebnerStats& into, const GroebnerStats& s) {
  into.pairs_processed += s.pairs_processed;
  into.pairs_pruned += s.pairs_pruned;
  into.zero_reductions += s.zero_reductions;
  into.max_basis_size = std::max(into.max_basis_size, s.max_basis_size);
  into.basis_size = std::max(into.basis_size, s.basis_size);
  into.max_degree = std::max(into.max_degree, s.max_degree);
  into.seconds += s.seconds;
}

}  // namespace

std::string to_string(CertificateError::Kind k) {
  switch (k) {
    case CertificateError::Kind::UnknownVariable: return "unknown variable";
    case CertificateError::Kind::TypeMismatch: return "type mismatch";
    case CertificateError::Kind::GradingViolation: return "grading violation";
    case CertificateError::Kind::MalformedPolynomial: return "malformed polynomial";
    case CertificateError::Kind::EmptyEquations: return "empty equation list";
    case CertificateError::Kind::Syntax: return "syntax error";
  }
  return "?";
}

MPoly canonicalize_equation(const MPoly& p, const SuperType& type) {
  std::map<std::string, MPoly> bindings;
  for (const auto& v : p.variables()) {
    auto idx = parse_structure_constant_name(v);
    if (!idx) throw CertificateError(CertificateError::Kind::UnknownVariable, "unknown variable '" + render_variable(v) + "'");
    const auto [i, j, k] = *idx;
    auto c = canonicalize_index(type, i, j, k);
    if (c.status == CanonicalIndex::Status::OutOfRange)
      throw CertificateError(CertificateError::Kind::TypeMismatch,
                             constant_label(i, j, k) + " has an index outside type " + type.str());
    if (c.status == CanonicalIndex::Status::GradingViolation)
      throw CertificateError(CertificateError::Kind::GradingViolation,
                             constant_label(i, j, k) + " breaks the grading of type " + type.str());
    bindings[v] = c.sign == 0 ? MPoly() : MPoly::variable(structure_constant_name(c.i, c.j, c.k)).scaled(Rational(c.sign));
  }
  return p.substitute(bindings);
}

ClosedSet make_closed_set(std::string name, const SuperType& type, const std::vector<MPoly>& equations,
                          std::string provenance) {
  if (equations.empty())
    throw CertificateError(CertificateError::Kind::EmptyEquations, "closed set '" + name + "' has no equations");
  ClosedSet r{std::move(name), type, {}, std::move(provenance)};
  for (const auto& e : equations) r.equations.push_back(canonicalize_equation(e, type));
  return r;
}

MPoly evaluate_at(const MPoly& equation, const SuperStructure& s) {
  std::map<std::string, MPoly> bindings;
  for (const auto& v : equation.variables()) {
    auto idx = parse_structure_constant_name(v);
    if (!idx) continue;
    const auto [i, j, k] = *idx;
    if (!s.type().in_range(i) || !s.type().in_range(j) || !s.type().in_range(k))
      throw CertificateError(CertificateError::Kind::TypeMismatch, "equation does not fit type " + s.type().str());
    bindings[v] = s.at(i, j, k);
  }
  return equation.substitute(bindings);
}

// ---------------------------------------------------------------- membership

std::string to_string(MembershipMode m) {
  switch (m) {
    case MembershipMode::Direct: return "direct";
    case MembershipMode::BasisChange: return "basis-change";
    case MembershipMode::NotApplicable: return "not-applicable";
  }
  return "?";
}

MembershipResult membership(const SuperStructure& j, const ClosedSet& r) {
  if (!(j.type() == r.type)) throw std::invalid_argument("structure of type " + j.type().str() + " tested against a closed set of type " + r.type.str());
  MembershipResult out;
  for (std::size_t e = 0; e < r.equations.size(); ++e) {
    MPoly v = evaluate_at(r.equations[e], j);
    if (!v.is_zero()) out.failing.push_back(e);
    out.values.push_back(std::move(v));
  }
  out.pass = out.failing.empty();
  return out;
}

MembershipResult membership_with_fallback(const SuperStructure& j, const ClosedSet& r, const Options& opt) {
  MembershipResult out = membership(j, r);
  if (out.pass || j.is_parametric()) return out;
  auto rep = representability(j, r, opt);
  if (rep.outcome == RepresentabilityOutcome::Representable) {
    out.pass = true;
    out.mode = MembershipMode::BasisChange;
  } else if (rep.outcome == RepresentabilityOutcome::Timeout) {
    out.timeout = true;
  }
  return out;
}

// ---------------------------------------------------------------- stability

std::string to_string(StabilityOutcome o) {
  switch (o) {
    case StabilityOutcome::Stable: return "Stable";
    case StabilityOutcome::Unstable: return "Unstable";
    case StabilityOutcome::Timeout: return "Timeout";
  }
  return "?";
}

std::string StabilityAttempt::orientation() const {
  return flag_name(even) + "/" + flag_name(odd);
}

const StabilityAttempt* StabilityResult::stable_attempt() const {
  for (const auto& a : attempts)
    if (a.outcome == StabilityOutcome::Stable) return &a;
  return nullptr;
}

namespace {

/// Generic Borel element of one orientation with the transformed equations.
struct BorelTransform {
  BorelElement borel;
  std::vector<MPoly> cleared;  // in c and b; det powers multiplied out
};

/// r(b^-1 * c) times the smallest power of the block determinants that makes
/// it a polynomial. The action is applied to `s`, generic or concrete.
MPoly cleared_transform(const MPoly& eq, const FractionTable<MPoly>& f, const SuperType& type) {
  const MPoly ue = MPoly::variable("u_even"), uo = MPoly::variable("u_odd");
  MPoly lifted = eq.substitute(transformed_bindings(type, f, ue, uo, c_variables_of({eq})));
  const unsigned ne = lifted.degree_in("u_even"), no = lifted.degree_in("u_odd");
  MPoly out;
  for (const auto& [exps, coeff] : lifted.coefficients_in({"u_even", "u_odd"}))
    out += coeff * f.det_even.pow(ne - exps[0]) * f.det_odd.pow(no - exps[1]);
  return out;
}

BorelTransform borel_transform(const ClosedSet& r, const FlagOrder& even, const FlagOrder& odd) {
  BorelTransform t{generic_borel(r.type, even, odd), {}};
  // B is a group, so b ranges over B exactly when b^-1 does; the inverse
  // form leaves one block determinant per constant.
  auto f = act_inverse_symbolic(t.borel.g, SuperStructure::generic(r.type));
  for (const auto& e : r.equations) t.cleared.push_back(cleared_transform(e, f, r.type));
  return t;
}

StabilityAttempt new_attempt(const BorelTransform& t, bool modulo_jordan, bool radical) {
  StabilityAttempt at;
  at.even = t.borel.even_order;
  at.odd = t.borel.odd_order;
  at.modulo_jordan = modulo_jordan;
  at.radical = radical;
  return at;
}

GroebnerLimits remaining(const GroebnerLimits& limits, Clock::time_point start) {
  GroebnerLimits left = limits;
  if (limits.time_limit_seconds > 0) left.time_limit_seconds = std::max(1e-3, limits.time_limit_seconds - since(start));
  return left;
}

bool out_of_time(const GroebnerLimits& limits, Clock::time_point start) {
  return limits.time_limit_seconds > 0 && since(start) > limits.time_limit_seconds;
}

/// Both determinants are monomials in b, so Q[c][b][1/det] is free over Q[c]
/// with the Laurent monomials in b as a basis. A transformed equation lies in
/// (I + det*y - 1) over (c, b, y) iff every b-coefficient of its cleared form
/// lies in I over Q[c]; it vanishes on the zero set iff every coefficient
/// lies in the radical.
StabilityAttempt attempt_with_basis(const ClosedSet& r, const BorelTransform& t, const BasisResult& basis,
                                    const MonomialOrder& order, bool modulo_jordan, bool radical,
                                    const GroebnerLimits& limits, Clock::time_point start) {
  StabilityAttempt at = new_attempt(t, modulo_jordan, radical);
  const MonomialOrder radical_order = order.extended_with({"z_rad"});
  for (std::size_t e = 0; e < r.equations.size(); ++e) {
    std::optional<MPoly> witness;
    for (const auto& [exps, coeff] : t.cleared[e].coefficients_in(t.borel.variables)) {
      MPoly rem = normal_form(coeff, basis.basis, order);
      if (rem.is_zero()) continue;
      if (radical) {
        auto with = basis.basis;
        with.push_back(MPoly(1) - MPoly::variable("z_rad") * rem);
        GroebnerStats stats;
        auto triv = is_trivial(Ideal(with, radical_order), remaining(limits, start), &stats);
        merge_stats(at.stats, stats);
        if (triv == Triviality::Timeout) {
          at.outcome = StabilityOutcome::Timeout;
          at.timeout_reason = "radical membership exceeded its resource limits";
          return at;
        }
        if (triv == Triviality::Trivial) continue;
      }
      witness = rem;
      break;
    }
    if (witness) {
      at.failing.push_back(e);
      at.remainders.push_back(*witness);
    }
    if (out_of_time(limits, start)) {
      at.outcome = StabilityOutcome::Timeout;
      at.timeout_reason = "stability check exceeded its time limit";
      return at;
    }
  }
  at.outcome = at.failing.empty() ? StabilityOutcome::Stable : StabilityOutcome::Unstable;
  return at;
}

BasisResult closed_set_basis(const ClosedSet& r, bool modulo_jordan, const GroebnerLimits& limits, MonomialOrder* order) {
  std::vector<MPoly> gens = r.equations;
  if (modulo_jordan) {
    auto jordan = jordan_identity_polynomials(r.type);
    gens.insert(gens.end(), jordan.begin(), jordan.end());
  }
  Ideal ideal(gens, grouped_order({canonical_variables(r.type)}));
  *order = ideal.order();
  return ideal.basis(limits);
}

StabilityAttempt basis_timeout(const BorelTransform& t, bool modulo_jordan, bool radical, const BasisResult& basis) {
  StabilityAttempt at = new_attempt(t, modulo_jordan, radical);
  at.outcome = StabilityOutcome::Timeout;
  at.timeout_reason = basis.timeout_reason;
  at.stats = basis.stats;
  return at;
}

/// A Jordan structure in R that some element of this Borel moves out of R.
std::optional<StabilityAttempt> jordan_counterexample(const ClosedSet& r, const BorelTransform& t,
                                                      const std::vector<SuperStructure>& pool) {
  for (const auto& s : pool) {
    auto f = act_inverse_symbolic(t.borel.g, s);
    std::vector<std::size_t> failing;
    std::vector<MPoly> values;
    for (std::size_t e = 0; e < r.equations.size(); ++e) {
      MPoly v = cleared_transform(r.equations[e], f, r.type);
      if (v.is_zero()) continue;
      failing.push_back(e);
      values.push_back(std::move(v));
    }
    if (failing.empty()) continue;
    StabilityAttempt at = new_attempt(t, true, true);
    at.failing = std::move(failing);
    at.remainders = std::move(values);
    at.counterexample = s;
    return at;
  }
  return std::nullopt;
}

}  // namespace

StabilityAttempt stability_attempt(const ClosedSet& r, const FlagOrder& even, const FlagOrder& odd, bool modulo_jordan,
                                   bool radical, const GroebnerLimits& limits) {
  const auto start = Clock::now();
  auto t = borel_transform(r, even, odd);
  MonomialOrder order;
  auto basis = closed_set_basis(r, modulo_jordan, limits, &order);
  if (basis.timeout) return basis_timeout(t, modulo_jordan, radical, basis);
  auto at = attempt_with_basis(r, t, basis, order, modulo_jordan, radical, limits, start);
  merge_stats(at.stats, basis.stats);
  return at;
}

std::vector<std::pair<FlagOrder, FlagOrder>> borel_orientations(const SuperType& type, bool all) {
  auto up = [](int n) { return flag_order(Triangle::Upper, n); };
  auto low = [](int n) { return flag_order(Triangle::Lower, n); };
  std::vector<std::pair<FlagOrder, FlagOrder>> out = {{up(type.m), up(type.n)}};
  if (!all) return out;
  auto push = [&](FlagOrder e, FlagOrder o) {
    if (std::find(out.begin(), out.end(), std::pair{e, o}) == out.end()) out.emplace_back(std::move(e), std::move(o));
  };
  push(low(type.m), low(type.n));
  push(up(type.m), low(type.n));
  push(low(type.m), up(type.n));
  FlagOrder e = up(type.m);
  do {
    FlagOrder o = up(type.n);
    do push(e, o);
    while (std::next_permutation(o.begin(), o.end()));
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

StabilityResult b_stability(const ClosedSet& r, const Options& opt) {
  const auto start = Clock::now();
  StabilityResult out;
  std::vector<BorelTransform> transforms;
  for (const auto& [even, odd] : borel_orientations(r.type, opt.try_all_orientations))
    transforms.push_back(borel_transform(r, even, odd));

  auto finish = [&](StabilityOutcome o) {
    out.outcome = o;
    out.seconds = since(start);
    return out;
  };
  auto record = [&](StabilityAttempt at) {
    const auto o = at.outcome;
    out.attempts.push_back(std::move(at));
    return o;
  };
  bool any_timeout = false;
  // orientations still open modulo the Jordan identities
  std::vector<bool> open(transforms.size(), true);

  for (bool jordan : {false, true}) {
    if (jordan && !opt.allow_fallbacks) break;
    if (jordan) {
      // exact refutations from known Jordan structures avoid the expensive basis
      std::vector<SuperStructure> pool;
      for (auto& s : sparse_jordan_structures(r.type))
        if (membership(s, r).pass) pool.push_back(std::move(s));
      for (std::size_t i = 0; i < transforms.size(); ++i)
        if (auto at = jordan_counterexample(r, transforms[i], pool)) {
          record(std::move(*at));
          open[i] = false;
        }
      if (std::none_of(open.begin(), open.end(), [](bool b) { return b; }))
        return finish(any_timeout ? StabilityOutcome::Timeout : StabilityOutcome::Unstable);
    }
    MonomialOrder order;
    auto basis = closed_set_basis(r, jordan, remaining(opt.limits, start), &order);
    for (bool radical : {false, true}) {
      if (radical && !opt.allow_fallbacks) break;
      for (std::size_t i = 0; i < transforms.size(); ++i) {
        if (jordan && !open[i]) continue;
        StabilityOutcome o;
        if (basis.timeout)
          o = record(basis_timeout(transforms[i], jordan, radical, basis));
        else
          o = record(attempt_with_basis(r, transforms[i], basis, order, jordan, radical, remaining(opt.limits, start), start));
        if (o == StabilityOutcome::Stable) return finish(o);
        any_timeout = any_timeout || o == StabilityOutcome::Timeout;
        if (basis.timeout) break;
      }
      if (basis.timeout) break;
      if (out_of_time(opt.limits, start)) return finish(StabilityOutcome::Timeout);
    }
  }
  return finish(any_timeout ? StabilityOutcome::Timeout : StabilityOutcome::Unstable);
}

// ---------------------------------------------------------------- representability

std::string to_string(RepresentabilityOutcome o) {
  switch (o) {
    case RepresentabilityOutcome::Representable: return "Representable";
    case RepresentabilityOutcome::Infeasible: return "Infeasible";
    case RepresentabilityOutcome::Timeout: return "Timeout";
  }
  return "?";
}

namespace {

struct RepresentabilitySystem {
  std::vector<MPoly> gens;
  std::vector<std::string> change_vars;
  MonomialOrder order;
};

RepresentabilitySystem representability_system(const SuperStructure& jp, const ClosedSet& r) {
  RepresentabilitySystem sys;
  const SuperType& type = r.type;
  // J' is representable iff a^-1 * J' lies in R for some a in G
  auto a = generic_change(type, "a", &sys.change_vars);
  auto f = act_inverse_symbolic(a, jp);
  const MPoly ye = MPoly::variable("y_even"), yo = MPoly::variable("y_odd");
  auto bindings = transformed_bindings(type, f, ye, yo, c_variables_of(r.equations));
  for (const auto& e : r.equations) {
    MPoly g = e.substitute(bindings);
    if (!g.is_zero()) sys.gens.push_back(std::move(g));
  }
  std::vector<std::string> aux;
  if (type.m > 0) {
    sys.gens.push_back(f.det_even * ye - MPoly(1));
    aux.push_back("y_even");
  }
  if (type.n > 0) {
    sys.gens.push_back(f.det_odd * yo - MPoly(1));
    aux.push_back("y_odd");
  }
  sys.order = grouped_order({sys.change_vars, aux});
  return sys;
}

bool lies_in(const SuperStructure& s, const ClosedSet& r) {
  return std::all_of(r.equations.begin(), r.equations.end(), [&](const MPoly& e) { return evaluate_at(e, s).is_zero(); });
}

/// Fixes the change variables one at a time to small values while the system
/// stays solvable; best effort only.
std::optional<ScalarChange> extract_witness(const SuperStructure& jp, const ClosedSet& r, const RepresentabilitySystem& sys,
                                            const GroebnerLimits& limits) {
  if (lies_in(jp, r)) return ScalarChange::identity(r.type);
  std::map<std::string, Rational> fixed;
  std::vector<MPoly> gens = sys.gens;
  for (const auto& v : sys.change_vars) {
    // names are a_<block>_<row>_<col>
    const auto last = v.rfind('_');
    const auto prev = v.rfind('_', last - 1);
    const bool diagonal = v.substr(last + 1) == v.substr(prev + 1, last - prev - 1);
    std::vector<Rational> candidates = diagonal ? std::vector<Rational>{1, -1, 2, 0, -2, 3}
                                                : std::vector<Rational>{0, 1, -1, 2, -2, 3};
    bool placed = false;
    for (const auto& c : candidates) {
      std::vector<MPoly> trial;
      for (const auto& g : gens) {
        MPoly s = g.substitute({{v, MPoly(c)}});
        if (!s.is_zero()) trial.push_back(std::move(s));
      }
      auto t = is_trivial(Ideal(trial, sys.order), limits);
      if (t == Triviality::Timeout) return std::nullopt;
      if (t == Triviality::NonTrivial) {
        gens = std::move(trial);
        fixed[v] = c;
        placed = true;
        break;
      }
    }
    if (!placed) return std::nullopt;
  }
  std::vector<std::string> unused;
  auto a = specialize(generic_change(r.type, "a", &unused), fixed);
  try {
    ScalarChange g = inverse(a);
    if (lies_in(act(g, jp), r)) return g;
  } catch (const ArithmeticError&) {
  }
  return std::nullopt;
}

}  // namespace

RepresentabilityResult representability(const SuperStructure& jp, const ClosedSet& r, const Options& opt) {
  const auto start = Clock::now();
  if (!(jp.type() == r.type)) throw std::invalid_argument("target of type " + jp.type().str() + " tested against a closed set of type " + r.type.str());
  if (jp.is_parametric()) throw std::invalid_argument("representability needs a non-parametric target");
  RepresentabilityResult out;
  auto sys = representability_system(jp, r);
  out.variables = sys.order.variables().size();
  auto t = is_trivial(Ideal(sys.gens, sys.order), opt.limits, &out.stats);
  if (t == Triviality::Timeout) {
    out.outcome = RepresentabilityOutcome::Timeout;
    out.timeout_reason = "Groebner basis exceeded its resource limits";
  } else if (t == Triviality::Trivial) {
    out.outcome = RepresentabilityOutcome::Infeasible;
  } else {
    out.outcome = RepresentabilityOutcome::Representable;
    if (opt.extract_witness) out.witness = extract_witness(jp, r, sys, opt.limits);
  }
  out.seconds = since(start);
  return out;
}

// ---------------------------------------------------------------- verdicts

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::NonDegeneration: return "NonDegeneration";
    case Outcome::Inconclusive: return "Inconclusive";
    case Outcome::Refuted: return "Refuted";
  }
  return "?";
}

Outcome assemble_outcome(const MembershipResult& m, const StabilityResult* s, const RepresentabilityResult* r,
                         std::string* reason) {
  auto say = [&](const char* why) {
    if (reason) *reason = why;
  };
  if (m.timeout) {
    say("membership timed out");
    return Outcome::Inconclusive;
  }
  if (!m.pass) {
    say("source does not lie in R");
    return Outcome::Refuted;
  }
  if (r && r->outcome == RepresentabilityOutcome::Representable) {
    say("target is representable in R");
    return Outcome::Refuted;
  }
  if (!s || !r) {
    say("a sub-check did not run");
    return Outcome::Inconclusive;
  }
  if (s->outcome == StabilityOutcome::Timeout || r->outcome == RepresentabilityOutcome::Timeout) {
    say("resource limits reached");
    return Outcome::Inconclusive;
  }
  if (s->outcome != StabilityOutcome::Stable) {
    say("R was not shown to be B-stable");
    return Outcome::Inconclusive;
  }
  say("source in R, R B-stable, target not representable in R");
  return Outcome::NonDegeneration;
}

namespace {

Verdict run_certificate(MembershipResult m, const SuperStructure& jp, const ClosedSet& r, const Options& opt,
                        const std::optional<StabilityResult>& stability, std::string source_id, std::string target_id,
                        Clock::time_point start) {
  Verdict v;
  v.source = std::move(source_id);
  v.target = std::move(target_id);
  v.membership = std::move(m);
  if (v.membership.pass && !v.membership.timeout) {
    v.stability = stability ? *stability : b_stability(r, opt);
    v.representability = representability(jp, r, opt);
  }
  v.outcome = assemble_outcome(v.membership, v.stability ? &*v.stability : nullptr,
                               v.representability ? &*v.representability : nullptr, &v.reason);
  // answers come from Buchberger over Q; a modular pre-check is only advisory
  v.exact = true;
  v.seconds = since(start);
  return v;
}

}  // namespace

Verdict certify_pair(const SuperStructure& j, const SuperStructure& jp, const ClosedSet& r, const Options& opt,
                     const std::optional<StabilityResult>& stability, std::string source_id, std::string target_id) {
  const auto start = Clock::now();
  if (!(j.type() == jp.type()) || !(j.type() == r.type)) throw std::invalid_argument("certificate pair with mismatched types");
  return run_certificate(membership_with_fallback(j, r, opt), jp, r, opt, stability, std::move(source_id),
                         std::move(target_id), start);
}

Verdict certify_family(const SuperStructure& jfam, const SuperStructure& jp, const ClosedSet& r, const Options& opt,
                       const std::optional<StabilityResult>& stability, std::string source_id, std::string target_id) {
  const auto start = Clock::now();
  if (!(jfam.type() == jp.type()) || !(jfam.type() == r.type)) throw std::invalid_argument("certificate pair with mismatched types");
  // identically in the parameters; no basis-change fallback for a family
  return run_certificate(membership(jfam, r), jp, r, opt, stability, std::move(source_id), std::move(target_id), start);
}

}  // namespace jsv
