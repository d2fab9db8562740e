// jsv: command-line front end for the degeneration certificate checker.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "jsv/cli/batch.hpp"

namespace {

using namespace jsv;

struct Settings {
  BatchConfig config;
  bool upper_only = false;
  bool no_fallbacks = false;
  bool no_witness = false;
  bool no_timings = false;
  std::string text_report;
  std::string jsonl_report;
};

void add_engine_options(CLI::App* cmd, Settings& s) {
  auto& lim = s.config.options.limits;
  cmd->add_option("--time-limit", lim.time_limit_seconds, "Seconds per Groebner computation and per stability run")
      ->capture_default_str();
  cmd->add_option("--max-basis", lim.max_basis_size, "Largest Groebner basis before giving up")->capture_default_str();
  cmd->add_option("--max-degree", lim.max_degree, "Largest S-polynomial degree")->capture_default_str();
  cmd->add_option("-j,--jobs", s.config.jobs, "Worker threads (0 = all cores)");
  cmd->add_flag("--upper-only", s.upper_only, "Only the upper triangular Borel subgroup");
  cmd->add_flag("--no-fallbacks", s.no_fallbacks, "Skip the radical and Jordan-ideal stability tiers");
  cmd->add_flag("--no-witness", s.no_witness, "Do not extract representability witnesses");
  cmd->add_flag("--no-timings", s.no_timings, "Omit wall times so reports are reproducible byte for byte");
}

void add_report_options(CLI::App* cmd, Settings& s) {
  cmd->add_option("--text-report", s.text_report, "Also write the text report here");
  cmd->add_option("--jsonl-report", s.jsonl_report, "Write one JSON object per line here");
}

void finish_settings(Settings& s) {
  s.config.options.try_all_orientations = !s.upper_only;
  s.config.options.allow_fallbacks = !s.no_fallbacks;
  s.config.options.extract_witness = !s.no_witness;
  s.config.timings = !s.no_timings;
}

void write_file(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << content;
  if (!out) throw FormatError(FormatError::Kind::Io, 0, "cannot write " + path);
}

const CatalogueEntry& find_entry(const std::vector<CatalogueEntry>& cat, const std::string& id) {
  for (const auto& e : cat)
    if (e.id == id) return e;
  throw FormatError(FormatError::Kind::Io, 0, "no algebra with id " + id);
}

int cmd_check(const std::string& path) {
  auto entries = load_catalogue(path, false);
  int bad = 0;
  for (const auto& e : entries) {
    auto check = check_jordan_superidentity(e.structure);
    if (check.passed()) {
      std::cout << e.id << "  ok\n";
      continue;
    }
    ++bad;
    std::cout << e.id << "  FAILED";
    for (const auto& v : check.supercommutativity)
      std::cout << "\n  supercommutativity c" << v.i << v.j << "^" << v.k << ": " << v.difference.str();
    for (const auto& v : check.violations) {
      const auto& q = v.quadruple;
      std::cout << "\n  identity at (" << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << ") coordinate " << v.k
                << ": " << v.value.str();
    }
    std::cout << "\n";
  }
  std::cout << "summary: " << entries.size() - bad << " of " << entries.size() << " pass\n";
  return bad ? 1 : 0;
}

int cmd_act(const std::string& algebra_path, const std::string& change_path) {
  auto entry = parse_algebra_file(read_file(algebra_path));
  auto g = parse_basis_change(read_file(change_path), entry.structure.type());
  CatalogueEntry out{entry.id, act(g, entry.structure), entry.note};
  std::cout << serialize_algebra(out);
  return 0;
}

int cmd_witness(const std::string& path) {
  auto result = verify_witness(parse_witness_file(read_file(path)));
  std::cout << to_string(result.outcome) << "\n";
  for (const auto& p : result.poles) std::cout << "  no limit at c" << p[0] << p[1] << "^" << p[2] << "\n";
  for (const auto& p : result.mismatches) std::cout << "  limit differs at c" << p[0] << p[1] << "^" << p[2] << "\n";
  return result.outcome == WitnessOutcome::Confirmed ? 0 : 1;
}

int cmd_certify(const std::string& cert_path, const std::string& catalogue, const std::string& source,
                const std::string& target, const Settings& s) {
  auto cert = parse_certificate_file(read_file(cert_path));
  auto cat = load_catalogue(catalogue);
  const auto& j = find_entry(cat, source);
  const auto& jp = find_entry(cat, target);
  auto verdict = j.structure.is_parametric()
                     ? certify_family(j.structure, jp.structure, cert.r, s.config.options, std::nullopt, source, target)
                     : certify_pair(j.structure, jp.structure, cert.r, s.config.options, std::nullopt, source, target);
  RunReport report;
  report.config = describe(s.config);
  report.records.push_back({cert.name, source, target, verdict, {}});
  for (const char* k : {"NonDegeneration", "Inconclusive", "Refuted", "Skipped"}) report.counts[k] = 0;
  ++report.counts[to_string(verdict.outcome)];
  report.seconds = verdict.seconds;
  std::cout << render_text(report, s.config.timings);
  write_file(s.text_report, render_text(report, s.config.timings));
  write_file(s.jsonl_report, render_jsonl(report, s.config.timings));
  return report.exit_code();
}

int cmd_batch(const std::string& catalogue, const std::string& certs, const Settings& s) {
  std::vector<CatalogueEntry> cat;
  if (!catalogue.empty()) cat = load_catalogue(catalogue);
  auto report = run_batch(cat, load_certificates(certs), s.config);
  std::cout << render_text(report, s.config.timings);
  write_file(s.text_report, render_text(report, s.config.timings));
  write_file(s.jsonl_report, render_jsonl(report, s.config.timings));
  return report.exit_code();
}

int cmd_stability(const std::string& certs, const Settings& s) {
  auto records = run_stability(load_certificates(certs), s.config);
  std::cout << render_text(records, s.config.timings);
  write_file(s.text_report, render_text(records, s.config.timings));
  write_file(s.jsonl_report, render_jsonl(records, s.config.timings));
  for (const auto& r : records)
    if (r.result.outcome != StabilityOutcome::Stable) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for non-degenerations of Jordan superalgebras"};
  app.set_config("--config", "", "TOML or INI file with option defaults; command-line flags win");
  app.require_subcommand(1);
  Settings s;

  std::string catalogue, certs, algebra, change, witness, cert, source, target;

  auto* check = app.add_subcommand("check", "Check supercommutativity and the Jordan identity for a catalogue");
  check->add_option("catalogue", catalogue, "Catalogue file or directory of *.alg")->required();

  auto* actc = app.add_subcommand("act", "Apply a basis change to an algebra");
  actc->add_option("algebra", algebra, "Algebra file")->required();
  actc->add_option("change", change, "Basis change file")->required();

  auto* wit = app.add_subcommand("witness", "Verify a degeneration witness g(t)");
  wit->add_option("file", witness, "Witness file")->required();

  auto* cer = app.add_subcommand("certify", "Certify one pair against one certificate");
  cer->add_option("certificate", cert, "Certificate file")->required();
  cer->add_option("--catalogue", catalogue, "Catalogue file or directory")->required();
  cer->add_option("--source", source, "Source id")->required();
  cer->add_option("--target", target, "Target id")->required();
  add_engine_options(cer, s);
  add_report_options(cer, s);

  auto* bat = app.add_subcommand("batch", "Certify every pair of every certificate");
  bat->add_option("certificates", certs, "Certificate file or directory")->required();
  bat->add_option("--catalogue", catalogue, "Catalogue file or directory; missing ids are skipped");
  add_engine_options(bat, s);
  add_report_options(bat, s);

  auto* sta = app.add_subcommand("stability", "Borel stability of each certificate's closed set");
  sta->add_option("certificates", certs, "Certificate file or directory")->required();
  add_engine_options(sta, s);
  add_report_options(sta, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  finish_settings(s);

  try {
    if (*check) return cmd_check(catalogue);
    if (*actc) return cmd_act(algebra, change);
    if (*wit) return cmd_witness(witness);
    if (*cer) return cmd_certify(cert, catalogue, source, target, s);
    if (*bat) return cmd_batch(catalogue, certs, s);
    if (*sta) return cmd_stability(certs, s);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
