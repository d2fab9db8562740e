#include "jsv/cli/batch.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace jsv {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(jobs, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

std::string fixed(double x, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string tier(const StabilityAttempt& a) {
  std::string s = a.modulo_jordan ? "modulo Jordan" : "ambient";
  if (a.radical) s += ", radical";
  return s;
}

/// Everything a verdict rests on, as text; hashed into the evidence digest.
std::string evidence_text(const Verdict& v) {
  std::ostringstream out;
  out << "membership " << v.membership.pass << " " << to_string(v.membership.mode) << "\n";
  for (const auto& x : v.membership.values) out << "  " << x.str() << "\n";
  if (v.stability) {
    out << "stability " << to_string(v.stability->outcome) << "\n";
    for (const auto& a : v.stability->attempts) {
      out << "  " << a.orientation() << " " << tier(a) << " " << to_string(a.outcome);
      for (auto f : a.failing) out << " " << f;
      out << "\n";
      for (const auto& r : a.remainders) out << "    " << r.str() << "\n";
      if (a.counterexample) out << serialize_algebra({"", *a.counterexample, ""});
    }
  }
  if (v.representability) {
    out << "representability " << to_string(v.representability->outcome) << " " << v.representability->variables << " "
        << v.representability->stats.basis_size << "\n";
    if (v.representability->witness) out << serialize_basis_change(*v.representability->witness);
  }
  return out.str();
}

json stability_json(const StabilityResult& s, bool timings) {
  json j;
  j["outcome"] = to_string(s.outcome);
  j["summary"] = stability_summary(s);
  j["attempts"] = s.attempts.size();
  if (const auto* a = s.stable_attempt()) {
    j["orientation"] = a->orientation();
    j["modulo_jordan"] = a->modulo_jordan;
    j["radical"] = a->radical;
  }
  std::size_t refuted = 0, max_basis = 0;
  for (const auto& a : s.attempts) {
    refuted += a.counterexample.has_value();
    max_basis = std::max(max_basis, a.stats.max_basis_size);
  }
  j["jordan_counterexamples"] = refuted;
  json tried = json::array();
  for (const auto& a : s.attempts) {
    json t;
    t["orientation"] = a.orientation();
    t["tier"] = tier(a);
    t["outcome"] = to_string(a.outcome);
    if (!a.failing.empty()) t["failing"] = a.failing;
    if (a.counterexample) t["counterexample"] = serialize_algebra({"", *a.counterexample, ""});
    if (!a.timeout_reason.empty()) t["timeout_reason"] = a.timeout_reason;
    tried.push_back(t);
  }
  j["tried"] = tried;
  j["max_basis_size"] = max_basis;
  if (timings) j["seconds"] = s.seconds;
  return j;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> describe(const BatchConfig& config) {
  const auto& o = config.options;
  return {
      {"monomial_order", "degrevlex; c, then b or change variables, then auxiliaries"},
      {"time_limit_seconds", fixed(o.limits.time_limit_seconds, 1)},
      {"max_basis_size", std::to_string(o.limits.max_basis_size)},
      {"max_degree", std::to_string(o.limits.max_degree)},
      {"orientations", o.try_all_orientations ? "all flags containing the diagonal torus, upper first" : "upper only"},
      {"fallbacks", o.allow_fallbacks ? "radical, then modulo the Jordan identities" : "none"},
      {"witness_extraction", o.extract_witness ? "on" : "off"},
      {"jobs", config.jobs ? std::to_string(config.jobs) : "auto"},
  };
}

std::string PairRecord::status() const {
  return verdict ? to_string(verdict->outcome) : "Skipped";
}

int RunReport::exit_code() const {
  bool ran = false;
  for (const auto& r : records) {
    if (!r.verdict) continue;
    ran = true;
    if (r.verdict->outcome != Outcome::NonDegeneration) return 1;
  }
  return ran ? 0 : 1;
}

RunReport run_batch(const std::vector<CatalogueEntry>& catalogue, const std::vector<CertificateFile>& certificates,
                    const BatchConfig& config) {
  const auto start = Clock::now();
  std::map<std::string, const CatalogueEntry*> by_id;
  for (const auto& e : catalogue) by_id[e.id] = &e;

  RunReport report;
  report.config = describe(config);
  struct Task {
    std::size_t cert;
    const CatalogueEntry* source;
    const CatalogueEntry* target;
  };
  std::vector<Task> tasks;
  std::vector<bool> needs_stability(certificates.size(), false);
  for (std::size_t c = 0; c < certificates.size(); ++c) {
    const auto& cert = certificates[c];
    for (const auto& [src, tgt] : cert.pairs()) {
      PairRecord rec{cert.name, src, tgt, std::nullopt, {}};
      auto s = by_id.find(src), t = by_id.find(tgt);
      if (s == by_id.end() || t == by_id.end()) {
        rec.skip_reason = "not in catalogue: " + (s == by_id.end() ? src : tgt);
      } else if (!(s->second->structure.type() == cert.type) || !(t->second->structure.type() == cert.type)) {
        rec.skip_reason = "catalogue entry type differs from " + cert.type.str();
      } else if (t->second->structure.is_parametric()) {
        rec.skip_reason = "target " + tgt + " is a family";
      } else {
        tasks.push_back({c, s->second, t->second});
        needs_stability[c] = true;
      }
      report.records.push_back(std::move(rec));
    }
  }

  std::vector<std::optional<StabilityResult>> stability(certificates.size());
  std::vector<std::size_t> todo;
  for (std::size_t c = 0; c < certificates.size(); ++c)
    if (needs_stability[c]) todo.push_back(c);
  parallel_for(todo.size(), config.jobs,
               [&](std::size_t i) { stability[todo[i]] = b_stability(certificates[todo[i]].r, config.options); });

  // records of runnable pairs, in task order
  std::vector<PairRecord*> slots;
  for (auto& r : report.records)
    if (r.skip_reason.empty()) slots.push_back(&r);
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto& cert = certificates[t.cert];
    try {
      const auto& j = t.source->structure;
      slots[i]->verdict = j.is_parametric()
                              ? certify_family(j, t.target->structure, cert.r, config.options, stability[t.cert],
                                               t.source->id, t.target->id)
                              : certify_pair(j, t.target->structure, cert.r, config.options, stability[t.cert],
                                             t.source->id, t.target->id);
    } catch (const std::exception& e) {
      slots[i]->skip_reason = std::string("error: ") + e.what();
    }
  });

  for (const char* k : {"NonDegeneration", "Inconclusive", "Refuted", "Skipped"}) report.counts[k] = 0;
  for (const auto& r : report.records) ++report.counts[r.status()];
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<StabilityRecord> run_stability(const std::vector<CertificateFile>& certificates, const BatchConfig& config) {
  std::vector<StabilityRecord> out(certificates.size());
  parallel_for(certificates.size(), config.jobs, [&](std::size_t i) {
    out[i] = {certificates[i].name, certificates[i].type, b_stability(certificates[i].r, config.options)};
  });
  return out;
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex_digest(const std::string& data) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(data)));
  return buf;
}

std::string stability_summary(const StabilityResult& s) {
  if (const auto* a = s.stable_attempt()) return "Stable under " + a->orientation() + " (" + tier(*a) + ")";
  std::size_t refuted = 0;
  std::string reason;
  for (const auto& a : s.attempts) {
    refuted += a.counterexample.has_value();
    if (a.outcome == StabilityOutcome::Timeout && reason.empty()) reason = a.timeout_reason;
  }
  if (s.outcome == StabilityOutcome::Timeout) return "Timeout: " + (reason.empty() ? "time limit reached" : reason);
  std::string out = "Unstable in every orientation tried";
  if (refuted) out += "; " + std::to_string(refuted) + " refuted by a Jordan structure in R";
  return out;
}

std::string render_text(const RunReport& report, bool timings) {
  std::ostringstream out;
  for (const auto& [k, v] : report.config) out << "# " << k << ": " << v << "\n";
  for (const auto& r : report.records) {
    out << r.source << " !-> " << r.target << "  " << r.status() << "  [" << r.certificate << "]";
    if (r.verdict) {
      out << "  " << r.verdict->reason;
      if (r.verdict->stability) out << "; " << stability_summary(*r.verdict->stability);
      if (timings) out << "  (" << fixed(r.verdict->seconds) << "s)";
    } else {
      out << "  " << r.skip_reason;
    }
    out << "\n";
  }
  out << "summary:";
  for (const auto& [k, v] : report.counts) out << " " << k << "=" << v;
  out << " total=" << report.records.size();
  if (timings) out << " seconds=" << fixed(report.seconds);
  out << "\n";
  return out.str();
}

std::string render_jsonl(const RunReport& report, bool timings) {
  std::ostringstream out;
  for (const auto& r : report.records) {
    json j;
    j["certificate"] = r.certificate;
    j["source"] = r.source;
    j["target"] = r.target;
    j["outcome"] = r.status();
    if (!r.verdict) {
      j["reason"] = r.skip_reason;
      out << j.dump() << "\n";
      continue;
    }
    const Verdict& v = *r.verdict;
    j["reason"] = v.reason;
    j["exact"] = v.exact;
    json m;
    m["pass"] = v.membership.pass;
    m["mode"] = to_string(v.membership.mode);
    m["failing"] = v.membership.failing;
    j["membership"] = m;
    if (v.stability) j["stability"] = stability_json(*v.stability, timings);
    if (v.representability) {
      json rep;
      rep["outcome"] = to_string(v.representability->outcome);
      rep["variables"] = v.representability->variables;
      rep["basis_size"] = v.representability->stats.basis_size;
      rep["witness"] = v.representability->witness.has_value();
      if (timings) rep["seconds"] = v.representability->seconds;
      j["representability"] = rep;
    }
    j["evidence_digest"] = hex_digest(evidence_text(v));
    if (timings) j["seconds"] = v.seconds;
    out << j.dump() << "\n";
  }
  json summary;
  summary["summary"] = report.counts;
  summary["total"] = report.records.size();
  json cfg = json::object();
  for (const auto& [k, v] : report.config) cfg[k] = v;
  summary["config"] = cfg;
  if (timings) summary["seconds"] = report.seconds;
  out << summary.dump() << "\n";
  return out.str();
}

std::string render_text(const std::vector<StabilityRecord>& records, bool timings) {
  std::ostringstream out;
  std::size_t stable = 0;
  for (const auto& r : records) {
    stable += r.result.outcome == StabilityOutcome::Stable;
    out << r.certificate << "  " << r.type.str() << "  " << stability_summary(r.result);
    if (timings) out << "  (" << fixed(r.result.seconds) << "s)";
    out << "\n";
  }
  out << "summary: Stable=" << stable << " total=" << records.size() << "\n";
  return out.str();
}

std::string render_jsonl(const std::vector<StabilityRecord>& records, bool timings) {
  std::ostringstream out;
  for (const auto& r : records) {
    json j = stability_json(r.result, timings);
    j["certificate"] = r.certificate;
    j["type"] = r.type.str();
    std::string evidence;
    for (const auto& a : r.result.attempts) {
      evidence += a.orientation() + " " + tier(a) + " " + to_string(a.outcome) + "\n";
      for (const auto& x : a.remainders) evidence += x.str() + "\n";
    }
    j["evidence_digest"] = hex_digest(evidence);
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace jsv
