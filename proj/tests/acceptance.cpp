// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance [--catalogue PATH] [--allow-fail N]... [--quick]
//
// Exit status is 0 when every criterion passed, was NOT RUN, or was listed
// with --allow-fail; otherwise 1.

#include <chrono>
#include <iostream>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "jsv/cli/batch.hpp"
#include "jsv/exact/parse.hpp"
#include "latex_tables.hpp"
#include "oracles.hpp"
#include "random_structure.hpp"

using namespace jsv;
using Clock = std::chrono::steady_clock;

namespace {

const std::filesystem::path data_dir = std::filesystem::path(JSV_SOURCE_DIR) / "data";

enum class Status { Pass, Fail, NotRun };

struct Line {
  int id;
  std::string title;
  Status status;
  std::string detail;
};

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixed(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << x;
  return s.str();
}

Line shipped_data() {
  std::size_t diffs = 0, rows = 0, eqs = 0, pairs = 0;
  std::string first;
  for (const auto& [tex, dir] : {std::pair{"theorem1.tex", "theorem1"}, std::pair{"theorem2.tex", "theorem2"}}) {
    auto t = testing::compare_transcription(data_dir / "tables" / tex, data_dir / "certificates" / dir);
    diffs += t.diffs.size();
    rows += t.rows;
    eqs += t.equations;
    pairs += t.pairs;
    if (first.empty() && !t.diffs.empty()) first = t.diffs.front();
  }
  const bool ok = diffs == 0 && rows == 25 && pairs == 55;
  std::string d = std::to_string(rows) + " rows, " + std::to_string(eqs) + " equation items, " + std::to_string(pairs) +
                  " pairs, " + std::to_string(diffs) + " diffs";
  if (!first.empty()) d += "; first: " + first;
  return {1, "shipped-data fidelity", ok ? Status::Pass : Status::Fail, d};
}

Line stability_suite(double cap) {
  BatchConfig config;
  config.options.limits.time_limit_seconds = cap;
  config.jobs = 1;  // per-certificate times are wall times
  auto records = run_stability(load_certificates(data_dir / "certificates"), config);
  std::size_t stable = 0, timeouts = 0;
  double slowest = 0;
  std::string unstable;
  for (const auto& r : records) {
    slowest = std::max(slowest, r.result.seconds);
    if (r.result.outcome == StabilityOutcome::Stable) {
      ++stable;
    } else {
      timeouts += r.result.outcome == StabilityOutcome::Timeout;
      if (unstable.size() < 60) unstable += (unstable.empty() ? "" : " ") + r.certificate;
    }
  }
  const bool ok = stable == records.size() && slowest <= cap;
  std::string d = std::to_string(stable) + "/" + std::to_string(records.size()) + " Stable, " + std::to_string(timeouts) +
                  " timeouts, slowest " + fixed(slowest) + "s (cap " + fixed(cap) + "s)";
  if (!ok) d += "; not stable: " + unstable + (unstable.size() >= 60 ? " ..." : "");
  return {2, "B-stability suite", ok ? Status::Pass : Status::Fail, d};
}

Line identity_oracle(int structures) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  int agree = 0, jordan = 0;
  for (int s = 0; s < structures; ++s) {
    const bool small = s % 2 == 0;
    auto r = testing::random_structure(rng, small ? 1 : 2, 1, density(rng));
    const bool checker = check_jordan_superidentity(r.structure).passed();
    const bool oracle = testing::dense_jordan_holds(r.dense, rng, 20);
    agree += checker == oracle;
    jordan += checker;
  }
  return {3, "identity-checker oracle equivalence", agree == structures ? Status::Pass : Status::Fail,
          std::to_string(agree) + "/" + std::to_string(structures) + " agree (" + std::to_string(jordan) +
              " Jordan, types (1,1) and (2,1))"};
}

Line scaling(const std::vector<CatalogueEntry>& catalogue) {
  std::size_t confirmed = 0, total = 0, skipped = 0;
  std::string first_bad;
  for (const auto& e : catalogue) {
    if (e.structure.is_parametric()) {
      ++skipped;
      continue;
    }
    ++total;
    const SuperType type = e.structure.type();
    Witness w{CurveChange::scalar(type, parse_laurent("t^-1")), e.structure, SuperStructure(type)};
    if (verify_witness(w).outcome == WitnessOutcome::Confirmed)
      ++confirmed;
    else if (first_bad.empty())
      first_bad = e.id;
  }
  std::string d = std::to_string(confirmed) + "/" + std::to_string(total) + " Confirmed";
  if (skipped) d += ", " + std::to_string(skipped) + " families skipped";
  if (!first_bad.empty()) d += "; first failure " + first_bad;
  return {4, "universal scaling degeneration", confirmed == total && total > 0 ? Status::Pass : Status::Fail, d};
}

Line groebner_kernel() {
  auto polys = [](std::initializer_list<const char*> texts) {
    std::vector<MPoly> out;
    for (const char* t : texts) out.push_back(parse_poly(t));
    return out;
  };
  struct Case {
    std::vector<MPoly> gens;
    MonomialOrder order;
    std::vector<MPoly> expected;  // by hand elimination
  };
  const MonomialOrder xy(OrderKind::DegRevLex, {"x", "y"});
  const MonomialOrder xyz_lex(OrderKind::Lex, {"x", "y", "z"});
  std::vector<Case> suite = {
      {polys({"x - y", "x^2 + y^2 - 1"}), xy, polys({"y^2 - 1/2", "x - y"})},
      {polys({"x^3 - 2*x*y", "x^2*y - 2*y^2 + x"}), xy, polys({"x^2", "x*y", "y^2 - 1/2*x"})},
      {polys({"x^2 + y + z - 1", "x + y^2 + z - 1", "x + y + z^2 - 1"}), xyz_lex,
       polys({"x + y + z^2 - 1", "y^2 - y - z^2 + z", "y*z^2 + 1/2*z^4 - 1/2*z^2", "z^6 - 4*z^4 + 4*z^3 - z^2"})},
      {polys({"x*y - 1", "y^2 - x"}), MonomialOrder(OrderKind::Lex, {"x", "y"}), polys({"x - y^2", "y^3 - 1"})},
  };
  int matched = 0, oracle_ok = 0;
  bool deterministic = true;
  for (const auto& c : suite) {
    auto first = groebner_basis(Ideal(c.gens, c.order));
    for (int run = 0; run < 2; ++run) deterministic &= groebner_basis(Ideal(c.gens, c.order)).basis == first.basis;
    matched += !first.timeout && first.basis == c.expected;
    bool same_ideal = true;
    for (const auto& b : first.basis) same_ideal &= testing::in_ideal_bounded(b, c.gens, 4);
    for (const auto& g : c.gens) same_ideal &= normal_form(g, first.basis, c.order).is_zero();
    oracle_ok += same_ideal;
  }
  const MonomialOrder x(OrderKind::DegRevLex, {"x"});
  const bool trivial = is_trivial(Ideal(polys({"x", "x - 1"}), x)) == Triviality::Trivial;
  const bool nontrivial = is_trivial(Ideal(polys({"x^2 + 1"}), x)) == Triviality::NonTrivial;
  const int n = static_cast<int>(suite.size());
  const bool ok = matched == n && oracle_ok == n && trivial && nontrivial && deterministic;
  return {5, "Groebner kernel correctness", ok ? Status::Pass : Status::Fail,
          std::to_string(matched) + "/" + std::to_string(n) + " bases match, " + std::to_string(oracle_ok) + "/" +
              std::to_string(n) + " pass the cofactor oracle, {x,x-1} " + (trivial ? "Trivial" : "misclassified") +
              ", {x^2+1} " + (nontrivial ? "NonTrivial" : "misclassified") + ", 3 runs " +
              (deterministic ? "identical" : "differ")};
}

Line synthetic_end_to_end() {
  const auto start = Clock::now();
  const SuperType t{1, 0};
  SuperStructure zero(t), idem(t);
  idem.set(1, 1, 1, MPoly(1));
  auto good = certify_pair(zero, idem, make_closed_set("R", t, {parse_poly("c11^1")}));
  auto bad = certify_pair(zero, idem, make_closed_set("R", t, {parse_poly("c11^1 - 1")}));
  const double secs = since(start);
  const bool all_three = good.membership.pass && good.stability &&
                         good.stability->outcome == StabilityOutcome::Stable && good.representability &&
                         good.representability->outcome == RepresentabilityOutcome::Infeasible;
  const bool ok = good.outcome == Outcome::NonDegeneration && all_three && bad.outcome == Outcome::Refuted &&
                  !bad.membership.pass && secs < 1.0;
  return {6, "synthetic end-to-end certificate", ok ? Status::Pass : Status::Fail,
          "R={c11^1}: " + to_string(good.outcome) + "; R={c11^1-1}: " + to_string(bad.outcome) +
              (bad.membership.pass ? "" : " at membership") + "; " + fixed(secs * 1000) + " ms"};
}

Line full_reproduction(const std::string& catalogue_path, double cap) {
  if (catalogue_path.empty())
    return {7, "full theorem reproduction", Status::NotRun, "needs --catalogue with the (3,1) and (2,2) tables"};
  BatchConfig config;
  config.options.limits.time_limit_seconds = cap;
  auto report = run_batch(load_catalogue(catalogue_path), load_certificates(data_dir / "certificates"), config);
  auto count = [&](const char* k) { return report.counts.count(k) ? report.counts.at(k) : 0; };
  const bool ok = count("NonDegeneration") == report.records.size() && count("Refuted") == 0;
  std::string d;
  for (const auto& [k, v] : report.counts) d += (d.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return {7, "full theorem reproduction", ok ? Status::Pass : Status::Fail, d};
}

std::string label(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::NotRun: return "NOT RUN";
  }
  return "?";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string catalogue;
  std::vector<int> allowed;
  double cap = 600;
  app.add_option("--catalogue", catalogue, "Catalogue for criteria 4 and 7");
  app.add_option("--allow-fail", allowed, "Criteria whose failure does not change the exit status");
  app.add_option("--cap", cap, "Per-certificate time cap in seconds")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<CatalogueEntry> entries;
  try {
    entries = load_catalogue(data_dir / "examples" / "synthetic" / "catalogue.alg");
    if (!catalogue.empty()) {
      auto user = load_catalogue(catalogue);
      entries.insert(entries.end(), user.begin(), user.end());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& type : {SuperType{3, 1}, SuperType{2, 2}}) {
    int k = 0;
    for (auto& s : sparse_jordan_structures(type)) entries.push_back({"sparse" + type.str() + "_" + std::to_string(++k), s, ""});
  }

  std::vector<Line> lines;
  auto run = [&](auto&& criterion) {
    Line l = criterion();
    std::cout << "criterion " << l.id << " [" << label(l.status) << "] " << l.title << ": " << l.detail << std::endl;
    lines.push_back(std::move(l));
  };
  run(shipped_data);
  run([&] { return stability_suite(cap); });
  run([] { return identity_oracle(120); });
  run([&] { return scaling(entries); });
  run(groebner_kernel);
  run(synthetic_end_to_end);
  run([&] { return full_reproduction(catalogue, cap); });

  int code = 0;
  for (const auto& l : lines)
    if (l.status == Status::Fail && std::find(allowed.begin(), allowed.end(), l.id) == allowed.end()) code = 1;
  return code;
}
