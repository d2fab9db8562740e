#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jsv/cli/formats.hpp"

namespace jsv {

struct BatchConfig {
  Options options;
  /// Worker threads; 0 means one per hardware thread.
  unsigned jobs = 0;
  /// Report wall times; off gives byte-identical reports across runs.
  bool timings = true;
};

/// Config echo for reports: orders, caps and the orientation policy.
std::vector<std::pair<std::string, std::string>> describe(const BatchConfig& config);

struct PairRecord {
  std::string certificate;
  std::string source;
  std::string target;
  /// Empty when the pair was skipped.
  std::optional<Verdict> verdict;
  std::string skip_reason;

  /// "NonDegeneration", "Inconclusive", "Refuted" or "Skipped".
  std::string status() const;
};

struct RunReport {
  std::vector<PairRecord> records;
  std::map<std::string, std::size_t> counts;
  std::vector<std::pair<std::string, std::string>> config;
  double seconds = 0;

  /// 0 when at least one pair ran and every pair that ran is NonDegeneration.
  int exit_code() const;
};

/// Certifies every pair of every certificate. Ids missing from the catalogue
/// give Skipped records. Stability is computed once per certificate.
RunReport run_batch(const std::vector<CatalogueEntry>& catalogue, const std::vector<CertificateFile>& certificates,
                    const BatchConfig& config);

struct StabilityRecord {
  std::string certificate;
  SuperType type;
  StabilityResult result;
};

std::vector<StabilityRecord> run_stability(const std::vector<CertificateFile>& certificates, const BatchConfig& config);

/// 64-bit FNV-1a, used for evidence digests.
std::uint64_t fnv1a(const std::string& data);
std::string hex_digest(const std::string& data);

std::string render_text(const RunReport& report, bool timings = true);
/// One JSON object per pair, then one summary object.
std::string render_jsonl(const RunReport& report, bool timings = true);

std::string render_text(const std::vector<StabilityRecord>& records, bool timings = true);
std::string render_jsonl(const std::vector<StabilityRecord>& records, bool timings = true);

/// One-line description of the attempt that decided a stability result.
std::string stability_summary(const StabilityResult& s);

}  // namespace jsv
