#pragma once

// Reads the LaTeX tables in data/tables and compares them with certificate files.

#include <algorithm>
#include <regex>
#include <set>
#include <stdexcept>

#include "jsv/cli/formats.hpp"
#include "jsv/exact/parse.hpp"

namespace jsv::testing {


struct TableRow {
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  std::vector<std::string> equations;  // surface syntax
};

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (auto at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) s.replace(at, from.size(), to);
  return s;
}

inline std::string strip_spaces(std::string s) {
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  return s;
}

inline std::string normalize_id(const std::string& s) {
  return std::regex_match(s, std::regex(R"(D_\{?\\gamma\}?)")) ? "Dgamma" : s;
}

inline std::vector<std::string> ids_in(const std::string& text) {
  std::vector<std::string> out;
  static const std::regex id(R"(D_\{?\\gamma\}?|\d+)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), id); it != std::sregex_iterator(); ++it)
    out.push_back(normalize_id(it->str()));
  return out;
}

/// LaTeX array body to the certificate surface syntax, one string per comma-separated item.
inline std::vector<std::string> latex_items(std::string body) {
  body = replace_all(body, "\\big(", "(");
  body = replace_all(body, "\\big)", ")");
  body = replace_all(body, "\\\\", " ");
  body = std::regex_replace(body, std::regex(R"(\\\s)"), " ");
  body = std::regex_replace(body, std::regex(R"(c_\{(\d)(\d)\}\^\{?(\d)\}?)"), "c$1$2^$3");
  body = strip_spaces(body);
  std::vector<std::string> out;
  std::string cur;
  for (char ch : body + ",") {
    if (ch != ',') {
      cur += ch;
      continue;
    }
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  }
  return out;
}

inline std::vector<TableRow> table_rows(const std::string& tex) {
  // the proof table is the last longtable
  auto begin = tex.rfind("\\begin{longtable}");
  if (begin == std::string::npos) throw std::runtime_error("no longtable");
  const std::string table = tex.substr(begin);
  std::vector<TableRow> rows;
  static const std::regex array(R"(\\begin\{array\}\{l\}([\s\S]*?)\\end\{array\})");
  std::size_t from = 0;
  for (;;) {
    auto next = table.find("\\hline", from);
    if (next == std::string::npos) break;
    const std::string chunk = table.substr(from, next - from);
    from = next + 6;
    const auto arrow = chunk.find("\\not \\rightarrow");
    if (arrow == std::string::npos) continue;
    TableRow row;
    std::string rest;
    std::size_t last = 0;
    for (auto it = std::sregex_iterator(chunk.begin(), chunk.end(), array); it != std::sregex_iterator(); ++it) {
      for (auto& item : latex_items((*it)[1].str())) row.equations.push_back(item);
      rest += chunk.substr(last, static_cast<std::size_t>(it->position()) - last);
      last = static_cast<std::size_t>(it->position() + it->length());
    }
    rest += chunk.substr(last);
    row.sources = ids_in(chunk.substr(0, chunk.find('&')));
    if (row.sources.empty()) continue;  // header row
    auto after = rest.find("\\rightarrow");
    row.targets = ids_in(rest.substr(after + 11));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Pairs listed in the theorem statement, with \dots ranges expanded.
inline std::set<std::pair<std::string, std::string>> statement_pairs(const std::string& tex) {
  const std::string stmt = tex.substr(0, tex.find("\\end{theorem}"));
  std::set<std::pair<std::string, std::string>> out;
  const std::string flat = strip_spaces(stmt);
  static const std::regex single(R"(\((\d+),(\d+)\);?\$)");
  for (auto it = std::sregex_iterator(flat.begin(), flat.end(), single); it != std::sregex_iterator(); ++it)
    out.emplace((*it)[1].str(), (*it)[2].str());

  auto expand = [](const std::string& list) {
    std::vector<std::string> items, out;
    std::string cur;
    for (char ch : list + ",") {
      if (ch == ',') {
        items.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i] == "\\dots") {
        for (int k = std::stoi(items[i - 1]) + 1; k < std::stoi(items[i + 1]); ++k) out.push_back(std::to_string(k));
      } else if (!items[i].empty()) {
        out.push_back(items[i]);
      }
    }
    return out;
  };
  // $(i,40)$for$i\in\{6,11,\dots,16,...\}$
  static const std::regex fixed_target(R"(\(i,(\d+)\)\$for\$i\\in\\\{([^}]*)\\\})");
  for (auto it = std::sregex_iterator(flat.begin(), flat.end(), fixed_target); it != std::sregex_iterator(); ++it)
    for (const auto& i : expand((*it)[2].str())) out.emplace(i, (*it)[1].str());
  static const std::regex fixed_source(R"(\((D_\{?\\gamma\}?),j\)\$for\$j\\in\\\{([^}]*)\\\})");
  for (auto it = std::sregex_iterator(flat.begin(), flat.end(), fixed_source); it != std::sregex_iterator(); ++it)
    for (const auto& j : expand((*it)[2].str())) out.emplace(normalize_id((*it)[1].str()), j);
  return out;
}

inline std::vector<std::string> token_texts(const std::string& s) {
  std::vector<std::string> out;
  for (const auto& t : tokenize_poly(s))
    if (t.kind != Token::Kind::End) out.push_back(t.text);
  return out;
}

/// Every disagreement between a LaTeX table and a certificate directory.
struct Transcription {
  std::size_t rows = 0;
  std::size_t certificates = 0;
  std::size_t equations = 0;
  std::size_t pairs = 0;
  std::vector<std::string> diffs;
};

inline Transcription compare_transcription(const std::filesystem::path& tex_file, const std::filesystem::path& cert_dir) {
  Transcription out;
  const std::string tex = read_file(tex_file);
  auto rows = table_rows(tex);
  auto certs = load_certificates(cert_dir);
  out.rows = rows.size();
  out.certificates = certs.size();
  auto label = [](const std::vector<std::string>& ids) {
    std::string s;
    for (const auto& i : ids) s += (s.empty() ? "" : ",") + i;
    return s;
  };
  if (certs.size() != rows.size())
    out.diffs.push_back(std::to_string(rows.size()) + " rows but " + std::to_string(certs.size()) + " certificates");

  std::set<std::pair<std::string, std::string>> from_rows;
  std::set<std::vector<std::string>> seen;
  for (const auto& row : rows) {
    const std::string who = "row " + label(row.sources);
    if (!seen.insert(row.sources).second) out.diffs.push_back(who + ": repeated");
    for (const auto& s : row.sources)
      for (const auto& t : row.targets) from_rows.emplace(s, t);
    auto it = std::find_if(certs.begin(), certs.end(), [&](const auto& c) { return c.sources == row.sources; });
    if (it == certs.end()) {
      out.diffs.push_back(who + ": no certificate");
      continue;
    }
    if (it->targets != row.targets) out.diffs.push_back(who + ": targets " + label(it->targets) + " vs " + label(row.targets));
    if (it->equation_text.size() != row.equations.size()) {
      out.diffs.push_back(who + ": " + std::to_string(it->equation_text.size()) + " eq lines vs " +
                          std::to_string(row.equations.size()) + " items");
      continue;
    }
    for (std::size_t i = 0; i < row.equations.size(); ++i) {
      ++out.equations;
      if (token_texts(strip_spaces(it->equation_text[i])) != token_texts(row.equations[i]))
        out.diffs.push_back(who + ": '" + it->equation_text[i] + "' vs '" + row.equations[i] + "'");
    }
  }
  auto listed = statement_pairs(tex);
  out.pairs = listed.size();
  for (const auto& p : listed)
    if (!from_rows.count(p)) out.diffs.push_back("(" + p.first + "," + p.second + ") listed but in no row");
  for (const auto& p : from_rows)
    if (!listed.count(p)) out.diffs.push_back("(" + p.first + "," + p.second + ") in a row but not listed");
  return out;
}

}  // namespace jsv::testing
