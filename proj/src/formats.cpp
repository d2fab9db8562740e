#include "jsv/cli/formats.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "jsv/exact/parse.hpp"

namespace jsv {

namespace fs = std::filesystem;

namespace {

using Kind = FormatError::Kind;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

/// Lines without comments, with their 1-based numbers; blank lines dropped.
std::vector<std::pair<std::size_t, std::string>> content_lines(const std::string& text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) out.emplace_back(n, line);
  }
  return out;
}

/// Splits "keyword rest" at the first blank.
std::pair<std::string, std::string> keyword(const std::string& line) {
  const auto sp = line.find_first_of(" \t");
  if (sp == std::string::npos) return {line, {}};
  return {line.substr(0, sp), trim(line.substr(sp))};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

SuperType parse_type(const std::string& rest, std::size_t line) {
  std::istringstream in(rest);
  int m = -1, n = -1;
  std::string extra;
  if (!(in >> m >> n) || (in >> extra) || m < 0 || n < 0 || m + n == 0 || m + n > 9)
    throw FormatError(Kind::Syntax, line, "expected `type M N` with 1 <= M+N <= 9, got '" + rest + "'");
  return {m, n};
}

/// e3 -> 3, f1 -> m+1.
int basis_index(const std::string& name, const SuperType& type, std::size_t line) {
  static const std::regex pattern("([ef])([1-9])");
  std::smatch m;
  if (std::regex_match(name, m, pattern)) {
    const int i = m[2].str()[0] - '0';
    if (m[1] == "e" && i <= type.m) return i;
    if (m[1] == "f" && i <= type.n) return type.m + i;
  }
  throw FormatError(Kind::Syntax, line, "'" + name + "' is not a basis element of type " + type.str());
}

std::string basis_name(int i, const SuperType& type) {
  return i <= type.m ? "e" + std::to_string(i) : "f" + std::to_string(i - type.m);
}

MPoly parse_coefficient(const std::string& text, const std::vector<std::string>& params, std::size_t line) {
  if (text.empty() || text == "+") return MPoly(1);
  if (text == "-") return MPoly(-1);
  MPoly c;
  try {
    c = parse_poly(text);
  } catch (const PolyParseError& e) {
    throw FormatError(Kind::MalformedPolynomial, line, "bad coefficient '" + text + "': " + e.what());
  }
  for (const auto& v : c.variables())
    if (std::find(params.begin(), params.end(), v) == params.end())
      throw FormatError(Kind::UnknownVariable, line, "coefficient uses undeclared parameter '" + v + "'");
  return c;
}

/// Accumulates `prod` lines for one algebra.
class AlgebraBuilder {
 public:
  void set_type(SuperType t, std::size_t line) {
    if (type_) throw FormatError(Kind::Syntax, line, "duplicate `type` line");
    type_ = t;
  }
  void add_param(const std::string& name, std::size_t line) {
    static const std::regex ident("[A-Za-z][A-Za-z0-9_]*");
    static const std::regex basis("[ef][0-9]+");
    if (!std::regex_match(name, ident) || std::regex_match(name, basis) || name == "t" || name.rfind("c_", 0) == 0)
      throw FormatError(Kind::Syntax, line, "bad parameter name '" + name + "'");
    if (!prods_.empty()) throw FormatError(Kind::Syntax, line, "`param` must precede the products");
    params_.push_back(name);
  }
  void add_prod(const std::string& rest, std::size_t line) {
    if (!type_) throw FormatError(Kind::Syntax, line, "`prod` before `type`");
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw FormatError(Kind::Syntax, line, "expected `prod B1 B2 = ...`");
    std::istringstream lhs(rest.substr(0, eq));
    std::string b1, b2, extra;
    if (!(lhs >> b1 >> b2) || (lhs >> extra)) throw FormatError(Kind::Syntax, line, "expected two basis elements before '='");
    const int i = basis_index(b1, *type_, line), j = basis_index(b2, *type_, line);
    const std::string rhs = rest.substr(eq + 1);

    static const std::regex basis_token("\\b[ef][0-9]+\\b");
    std::vector<std::pair<int, MPoly>> terms;
    std::size_t from = 0;
    for (auto it = std::sregex_iterator(rhs.begin(), rhs.end(), basis_token); it != std::sregex_iterator(); ++it) {
      std::string coef = trim(rhs.substr(from, static_cast<std::size_t>(it->position()) - from));
      if (!terms.empty()) {
        if (coef.empty() || (coef[0] != '+' && coef[0] != '-'))
          throw FormatError(Kind::Syntax, line, "terms must be joined by + or -");
        if (coef[0] == '+') coef = trim(coef.substr(1));
      }
      terms.emplace_back(basis_index(it->str(), *type_, line), parse_coefficient(coef, params_, line));
      from = static_cast<std::size_t>(it->position() + it->length());
    }
    if (!trim(rhs.substr(from)).empty()) throw FormatError(Kind::Syntax, line, "trailing text after the last basis element");
    if (terms.empty()) {
      if (trim(rhs) != "0") throw FormatError(Kind::Syntax, line, "right-hand side has no basis element");
    }
    prods_.push_back({i, j, std::move(terms), line});
  }

  CatalogueEntry finish(std::string id, std::string note, bool validate, std::size_t line) const {
    if (!type_) throw FormatError(Kind::Syntax, line, "missing `type` line");
    const SuperType& type = *type_;
    SuperStructure s(type, params_);
    std::map<std::pair<int, int>, std::size_t> seen;
    for (const auto& p : prods_) {
      SuperStructure row(type, params_);
      for (const auto& [k, c] : p.terms) {
        auto cur = row.at(p.i, p.j, k);
        try {
          row.set(p.i, p.j, k, cur + c);
        } catch (const GradingError&) {
          throw FormatError(Kind::GradingViolation, p.line,
                            basis_name(p.i, type) + " " + basis_name(p.j, type) + " has a component along " +
                                basis_name(k, type) + " of the wrong parity");
        }
      }
      if (seen.count({p.i, p.j}))
        throw FormatError(Kind::Syntax, p.line, "product " + basis_name(p.i, type) + " " + basis_name(p.j, type) + " listed twice");
      const int sign = type.parity(p.i) && type.parity(p.j) ? -1 : 1;
      auto mirror = seen.find({p.j, p.i});
      for (int k = 1; k <= type.dim(); ++k) {
        const MPoly& v = row.at(p.i, p.j, k);
        if (p.i == p.j && sign < 0 && !v.is_zero())
          throw FormatError(Kind::SupercommutativityViolation, p.line,
                            "the square of the odd element " + basis_name(p.i, type) + " must be zero");
        if (mirror != seen.end() && !(s.at(p.i, p.j, k) == v))
          throw FormatError(Kind::SupercommutativityViolation, p.line,
                            basis_name(p.i, type) + " " + basis_name(p.j, type) + " contradicts line " +
                                std::to_string(mirror->second));
      }
      seen.emplace(std::make_pair(p.i, p.j), p.line);
      for (int k = 1; k <= type.dim(); ++k)
        if (!row.at(p.i, p.j, k).is_zero() || mirror == seen.end()) s.set_symmetric(p.i, p.j, k, row.at(p.i, p.j, k));
    }
    if (validate) {
      auto check = check_jordan_superidentity(s);
      if (!check.supercommutativity.empty())
        throw FormatError(Kind::SupercommutativityViolation, 0, "table is not supercommutative");
      if (!check.passed()) {
        std::string msg = "Jordan identity fails at " + std::to_string(check.violations.size()) + " basis quadruple(s), first ";
        const auto& v = check.violations.front();
        msg += basis_name(v.quadruple[0], type) + "," + basis_name(v.quadruple[1], type) + "," +
               basis_name(v.quadruple[2], type) + "," + basis_name(v.quadruple[3], type) + " along " +
               basis_name(v.k, type);
        throw FormatError(Kind::IdentityViolation, 0, (id.empty() ? "" : id + ": ") + msg);
      }
    }
    return {std::move(id), std::move(s), std::move(note)};
  }

 private:
  struct Prod {
    int i, j;
    std::vector<std::pair<int, MPoly>> terms;
    std::size_t line;
  };
  std::optional<SuperType> type_;
  std::vector<std::string> params_;
  std::vector<Prod> prods_;
};

std::string coefficient_text(const MPoly& c) {
  if (auto r = c.as_constant()) return r->str();
  return "(" + c.str() + ")";
}

template <class T>
T parse_entry_value(const std::string& text, std::size_t line);

template <>
Rational parse_entry_value<Rational>(const std::string& text, std::size_t line) {
  try {
    if (auto c = parse_poly(text).as_constant()) return *c;
  } catch (const PolyParseError&) {
  }
  throw FormatError(Kind::Syntax, line, "expected a rational number, got '" + text + "'");
}

template <>
LaurentPoly parse_entry_value<LaurentPoly>(const std::string& text, std::size_t line) {
  try {
    return parse_laurent(text, "t");
  } catch (const PolyParseError& e) {
    throw FormatError(Kind::Syntax, line, "bad curve entry '" + text + "': " + e.what());
  }
}

template <class T>
void set_change_entry(BasisChange<T>& g, const SuperType& type, const std::string& rest, std::size_t line) {
  const auto eq = rest.find('=');
  if (eq == std::string::npos) throw FormatError(Kind::Syntax, line, "expected `g B1 B2 = VALUE`");
  std::istringstream lhs(rest.substr(0, eq));
  std::string b1, b2, extra;
  if (!(lhs >> b1 >> b2) || (lhs >> extra)) throw FormatError(Kind::Syntax, line, "expected two basis elements before '='");
  const int r = basis_index(b1, type, line), c = basis_index(b2, type, line);
  if (type.parity(r) != type.parity(c))
    throw FormatError(Kind::GradingViolation, line, "entry " + b1 + " " + b2 + " mixes parities");
  T value = parse_entry_value<T>(trim(rest.substr(eq + 1)), line);
  if (type.parity(r) == 0)
    g.even(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(c - 1)) = value;
  else
    g.odd(static_cast<std::size_t>(r - type.m - 1), static_cast<std::size_t>(c - type.m - 1)) = value;
}

template <class T>
BasisChange<T> zero_change(const SuperType& type) {
  return {Matrix<T>(static_cast<std::size_t>(type.m), static_cast<std::size_t>(type.m)),
          Matrix<T>(static_cast<std::size_t>(type.n), static_cast<std::size_t>(type.n))};
}

FormatError::Kind kind_of(CertificateError::Kind k) {
  switch (k) {
    case CertificateError::Kind::UnknownVariable: return Kind::UnknownVariable;
    case CertificateError::Kind::TypeMismatch: return Kind::TypeMismatch;
    case CertificateError::Kind::GradingViolation: return Kind::GradingViolation;
    case CertificateError::Kind::MalformedPolynomial: return Kind::MalformedPolynomial;
    case CertificateError::Kind::EmptyEquations: return Kind::EmptyEquations;
    case CertificateError::Kind::Syntax: return Kind::Syntax;
  }
  return Kind::Syntax;
}

}  // namespace

std::string to_string(FormatError::Kind k) {
  switch (k) {
    case Kind::Io: return "I/O error";
    case Kind::Syntax: return "syntax error";
    case Kind::GradingViolation: return "grading violation";
    case Kind::SupercommutativityViolation: return "supercommutativity violation";
    case Kind::IdentityViolation: return "identity violation";
    case Kind::UnknownVariable: return "unknown variable";
    case Kind::TypeMismatch: return "type mismatch";
    case Kind::MalformedPolynomial: return "malformed polynomial";
    case Kind::EmptyEquations: return "empty equation list";
  }
  return "?";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(Kind::Io, 0, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string catalogue_id(const SuperType& type, const std::string& local) {
  return "(" + std::to_string(type.m) + "," + std::to_string(type.n) + ")_" + local;
}

// ---------------------------------------------------------------- algebras

std::vector<CatalogueEntry> parse_algebra_catalogue(const std::string& text, bool validate) {
  std::vector<CatalogueEntry> out;
  std::optional<AlgebraBuilder> current;
  std::string id, note;
  std::size_t start = 0, last = 0;
  auto flush = [&] {
    if (current) out.push_back(current->finish(id, note, validate, start));
    current.reset();
    id.clear();
    note.clear();
  };
  for (const auto& [n, line] : content_lines(text)) {
    last = n;
    auto [kw, rest] = keyword(line);
    if (kw == "algebra") {
      if (rest.empty()) throw FormatError(Kind::Syntax, n, "`algebra` needs an id");
      flush();
      current.emplace();
      id = rest;
      start = n;
      continue;
    }
    if (!current) {
      current.emplace();
      start = n;
    }
    if (kw == "type")
      current->set_type(parse_type(rest, n), n);
    else if (kw == "param")
      current->add_param(rest, n);
    else if (kw == "prod")
      current->add_prod(rest, n);
    else if (kw == "note")
      note = note.empty() ? rest : note + " " + rest;
    else
      throw FormatError(Kind::Syntax, n, "unknown directive '" + kw + "'");
  }
  flush();
  if (out.empty()) throw FormatError(Kind::Syntax, last, "no algebra found");
  return out;
}

CatalogueEntry parse_algebra_file(const std::string& text, bool validate) {
  auto all = parse_algebra_catalogue(text, validate);
  if (all.size() != 1) throw FormatError(Kind::Syntax, 0, "expected one algebra, found " + std::to_string(all.size()));
  return std::move(all.front());
}

std::string serialize_algebra(const CatalogueEntry& entry) {
  std::ostringstream out;
  const auto& s = entry.structure;
  const auto& type = s.type();
  if (!entry.id.empty()) out << "algebra " << entry.id << "\n";
  if (!entry.note.empty()) out << "note " << entry.note << "\n";
  out << "type " << type.m << " " << type.n << "\n";
  for (const auto& p : s.parameters()) out << "param " << p << "\n";
  for (int i = 1; i <= s.dim(); ++i)
    for (int j = i; j <= s.dim(); ++j) {
      std::string rhs;
      for (int k = 1; k <= s.dim(); ++k) {
        const MPoly& c = s.at(i, j, k);
        if (c.is_zero()) continue;
        rhs += (rhs.empty() ? "" : " + ") + coefficient_text(c) + " " + basis_name(k, type);
      }
      if (!rhs.empty()) out << "prod " << basis_name(i, type) << " " << basis_name(j, type) << " = " << rhs << "\n";
    }
  return out.str();
}

std::vector<CatalogueEntry> load_catalogue(const fs::path& path, bool validate) {
  auto with_file = [](const fs::path& p, auto&& f) {
    try {
      return f();
    } catch (const FormatError& e) {
      throw FormatError(e.kind(), e.line(), p.string() + ": " + e.what());
    }
  };
  if (!fs::is_directory(path))
    return with_file(path, [&] { return parse_algebra_catalogue(read_file(path), validate); });
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".alg") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogueEntry> out;
  for (const auto& f : files) {
    auto entries = with_file(f, [&] { return parse_algebra_catalogue(read_file(f), validate); });
    if (entries.size() == 1 && entries[0].id.empty()) entries[0].id = f.stem().string();
    for (auto& e : entries) out.push_back(std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------- certificates

std::vector<std::pair<std::string, std::string>> CertificateFile::pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : sources)
    for (const auto& t : targets) out.emplace_back(catalogue_id(type, s), catalogue_id(type, t));
  return out;
}

bool CertificateFile::homogeneous() const {
  return membership(SuperStructure(type), r).pass;
}

CertificateFile parse_certificate_file(const std::string& text) {
  CertificateFile cert;
  std::optional<std::size_t> pair_line;
  std::vector<MPoly> equations;
  std::vector<std::size_t> equation_lines;
  std::size_t last = 0;
  static const std::regex pair_pattern(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*(.*?)\s*!->\s*(.*))");
  static const std::regex id_pattern("[A-Za-z0-9_]+");
  auto ids = [&](const std::string& list, std::size_t n) {
    auto items = split(list, ',');
    for (const auto& i : items)
      if (!std::regex_match(i, id_pattern)) throw FormatError(Kind::Syntax, n, "bad algebra id '" + i + "'");
    return items;
  };
  for (const auto& [n, line] : content_lines(text)) {
    last = n;
    auto [kw, rest] = keyword(line);
    if (kw == "name") {
      cert.name = rest;
    } else if (kw == "provenance") {
      cert.provenance = rest;
    } else if (kw == "pair") {
      if (pair_line) throw FormatError(Kind::Syntax, n, "duplicate `pair` line");
      std::smatch m;
      if (!std::regex_match(rest, m, pair_pattern))
        throw FormatError(Kind::Syntax, n, "expected `pair (M,N) SRC[,SRC...] !-> TGT[,TGT...]`");
      cert.type = parse_type(m[1].str() + " " + m[2].str(), n);
      cert.sources = ids(m[3].str(), n);
      cert.targets = ids(m[4].str(), n);
      pair_line = n;
    } else if (kw == "eq") {
      if (!pair_line) throw FormatError(Kind::Syntax, n, "`eq` before `pair`");
      if (rest.empty()) throw FormatError(Kind::MalformedPolynomial, n, "empty equation");
      std::vector<MPoly> sides;
      for (const auto& side : split(rest, '=')) {
        try {
          sides.push_back(canonicalize_equation(parse_poly(side), cert.type));
        } catch (const PolyParseError& e) {
          throw FormatError(Kind::MalformedPolynomial, n, "'" + side + "': " + e.what());
        } catch (const CertificateError& e) {
          throw FormatError(kind_of(e.kind()), n, e.what());
        }
      }
      if (sides.size() == 1)
        equations.push_back(sides[0]);
      else
        for (std::size_t i = 0; i + 1 < sides.size(); ++i) equations.push_back(sides[i] - sides.back());
      for (std::size_t i = equation_lines.size(); i < equations.size(); ++i) equation_lines.push_back(n);
      cert.equation_text.push_back(rest);
    } else {
      throw FormatError(Kind::Syntax, n, "unknown directive '" + kw + "'");
    }
  }
  if (!pair_line) throw FormatError(Kind::Syntax, last, "missing `pair` line");
  if (equations.empty()) throw FormatError(Kind::EmptyEquations, last, "certificate has no equations");
  cert.r = make_closed_set(cert.name, cert.type, equations, cert.provenance);
  return cert;
}

std::string serialize_certificate(const CertificateFile& cert) {
  std::ostringstream out;
  if (!cert.name.empty()) out << "name " << cert.name << "\n";
  if (!cert.provenance.empty()) out << "provenance " << cert.provenance << "\n";
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
  };
  out << "pair (" << cert.type.m << "," << cert.type.n << ") " << join(cert.sources) << " !-> " << join(cert.targets)
      << "\n";
  for (const auto& e : cert.equation_text) out << "eq " << e << "\n";
  return out.str();
}

std::vector<CertificateFile> load_certificates(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::recursive_directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".cert") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<CertificateFile> out;
  for (const auto& f : files) {
    try {
      out.push_back(parse_certificate_file(read_file(f)));
    } catch (const FormatError& e) {
      throw FormatError(e.kind(), e.line(), f.string() + ": " + e.what());
    }
    if (out.back().name.empty()) out.back().name = f.stem().string();
  }
  return out;
}

// ---------------------------------------------------------------- basis changes and witnesses

ScalarChange parse_basis_change(const std::string& text, const SuperType& type) {
  auto g = zero_change<Rational>(type);
  bool any = false;
  for (const auto& [n, line] : content_lines(text)) {
    auto [kw, rest] = keyword(line);
    if (kw == "type") {
      if (!(parse_type(rest, n) == type)) throw FormatError(Kind::TypeMismatch, n, "basis change is not of type " + type.str());
    } else if (kw == "identity") {
      if (any) throw FormatError(Kind::Syntax, n, "`identity` must come before the entries");
      g = ScalarChange::identity(type);
    } else if (kw == "g") {
      set_change_entry(g, type, rest, n);
      any = true;
    } else {
      throw FormatError(Kind::Syntax, n, "unknown directive '" + kw + "'");
    }
  }
  return g;
}

std::string serialize_basis_change(const ScalarChange& g) {
  const SuperType type = g.type();
  std::ostringstream out;
  out << "type " << type.m << " " << type.n << "\n";
  for (int r = 1; r <= type.dim(); ++r)
    for (int c = 1; c <= type.dim(); ++c) {
      if (type.parity(r) != type.parity(c)) continue;
      Rational v = g.entry(r, c);
      if (!v.is_zero()) out << "g " << basis_name(r, type) << " " << basis_name(c, type) << " = " << v.str() << "\n";
    }
  return out.str();
}

Witness parse_witness_file(const std::string& text) {
  std::optional<SuperType> type;
  std::optional<CatalogueEntry> source, target;
  std::optional<CurveChange> g;
  std::string block;
  std::size_t block_line = 0, last = 0;
  std::vector<std::pair<std::size_t, std::string>> block_lines;
  for (const auto& [n, line] : content_lines(text)) {
    last = n;
    auto [kw, rest] = keyword(line);
    if (!block.empty()) {
      if (kw != "end") {
        block_lines.emplace_back(n, line);
        continue;
      }
      // the `begin` line carries the type, so errors keep the file's line numbers
      std::string padded(block_line - 1, '\n');
      padded += "type " + std::to_string(type->m) + " " + std::to_string(type->n) + "\n";
      std::size_t at = block_line;
      for (const auto& [ln, content] : block_lines) {
        padded += std::string(ln - at - 1, '\n') + content + "\n";
        at = ln;
      }
      try {
        (block == "source" ? source : target) = parse_algebra_file(padded, false);
      } catch (const FormatError& e) {
        throw FormatError(e.kind(), e.line() ? e.line() : n, "in " + block + " block: " + e.what());
      }
      block.clear();
      continue;
    }
    if (kw == "type") {
      if (type) throw FormatError(Kind::Syntax, n, "duplicate `type` line");
      type = parse_type(rest, n);
      g = zero_change<LaurentPoly>(*type);
    } else if (kw == "begin") {
      if (!type) throw FormatError(Kind::Syntax, n, "`begin` before `type`");
      if (rest != "source" && rest != "target") throw FormatError(Kind::Syntax, n, "expected `begin source` or `begin target`");
      block = rest;
      block_line = n;
      block_lines.clear();
    } else if (kw == "g") {
      if (!type) throw FormatError(Kind::Syntax, n, "`g` before `type`");
      set_change_entry(*g, *type, rest, n);
    } else {
      throw FormatError(Kind::Syntax, n, "unknown directive '" + kw + "'");
    }
  }
  if (!block.empty()) throw FormatError(Kind::Syntax, last, "unterminated `begin " + block + "`");
  if (!type || !source || !target) throw FormatError(Kind::Syntax, last, "witness needs `type`, a source block and a target block");
  return {*g, source->structure, target->structure};
}

}  // namespace jsv
