#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jsv/certificate/certificate.hpp"
#include "jsv/degeneration/witness.hpp"

namespace jsv {

class FormatError : public std::runtime_error {
 public:
  enum class Kind {
    Io,
    Syntax,
    GradingViolation,
    SupercommutativityViolation,
    IdentityViolation,
    UnknownVariable,
    TypeMismatch,
    MalformedPolynomial,
    EmptyEquations,
  };
  FormatError(Kind kind, std::size_t line, const std::string& message)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), kind_(kind), line_(line) {}
  Kind kind() const { return kind_; }
  /// 1-based; 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

std::string to_string(FormatError::Kind k);

// ---------------------------------------------------------------- algebras

struct CatalogueEntry {
  std::string id;  // e.g. "(3,1)_6"
  SuperStructure structure;
  std::string note;

  friend bool operator==(const CatalogueEntry&, const CatalogueEntry&) = default;
};

/// One algebra:
///   algebra ID        (optional)
///   note TEXT         (optional)
///   type M N
///   param NAME        (any number)
///   prod B1 B2 = COEF B3 [+ COEF B3 ...]
/// with B in e1..eM, f1..fN. Unlisted products are zero and e_j e_i follows
/// from e_i e_j. With `validate` the completed table must pass the
/// supercommutativity and Jordan checks.
CatalogueEntry parse_algebra_file(const std::string& text, bool validate = true);

/// Several algebras, each starting at an `algebra ID` line.
std::vector<CatalogueEntry> parse_algebra_catalogue(const std::string& text, bool validate = true);

/// Inverse of parse_algebra_file; lists products with i <= j.
std::string serialize_algebra(const CatalogueEntry& entry);

/// A catalogue file, or a directory of *.alg files (ids default to the stem).
std::vector<CatalogueEntry> load_catalogue(const std::filesystem::path& path, bool validate = true);

/// Catalogue label of a local index under a type: "(3,1)_6".
std::string catalogue_id(const SuperType& type, const std::string& local);

// ---------------------------------------------------------------- certificates

struct CertificateFile {
  std::string name;
  std::string provenance;
  SuperType type;
  std::vector<std::string> sources;
  std::vector<std::string> targets;
  /// `eq` payloads as written, e.g. "c12^3=c23^1=0".
  std::vector<std::string> equation_text;
  ClosedSet r;

  /// Every (source, target), as catalogue ids.
  std::vector<std::pair<std::string, std::string>> pairs() const;
  /// True when the zero structure satisfies every equation.
  bool homogeneous() const;

  friend bool operator==(const CertificateFile&, const CertificateFile&) = default;
};

/// Certificate grammar:
///   name NAME                                (optional)
///   provenance TEXT                          (optional)
///   pair (M,N) SRC[,SRC...] !-> TGT[,TGT...]
///   eq POLY[=POLY...]                        (one or more)
/// A chain A=B=...=Z contributes A-Z, B-Z, ...
CertificateFile parse_certificate_file(const std::string& text);
std::string serialize_certificate(const CertificateFile& cert);

/// A *.cert file, or a directory searched recursively, in path order.
std::vector<CertificateFile> load_certificates(const std::filesystem::path& path);

// ---------------------------------------------------------------- basis changes and witnesses

/// Lines `g B1 B2 = VALUE` set the entry in row B1, column B2; unlisted
/// entries are zero, and `identity` starts from the identity.
ScalarChange parse_basis_change(const std::string& text, const SuperType& type);
std::string serialize_basis_change(const ScalarChange& g);

/// `type M N`, blocks `begin source` ... `end` and `begin target` ... `end`
/// in the algebra grammar (without `type`), and `g` lines with Laurent
/// polynomials in t.
Witness parse_witness_file(const std::string& text);

std::string read_file(const std::filesystem::path& path);

}  // namespace jsv
