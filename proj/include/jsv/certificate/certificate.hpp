#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsv/action/action.hpp"
#include "jsv/groebner/groebner.hpp"

namespace jsv {

class CertificateError : public std::runtime_error {
 public:
  enum class Kind { UnknownVariable, TypeMismatch, GradingViolation, MalformedPolynomial, EmptyEquations, Syntax };
  CertificateError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(CertificateError::Kind k);

/// Zero locus of finitely many polynomials in the canonical c-variables.
struct ClosedSet {
  std::string name;
  SuperType type;
  std::vector<MPoly> equations;
  std::string provenance;

  friend bool operator==(const ClosedSet&, const ClosedSet&) = default;
};

/// Rewrites every c_i_j_k to its canonical i <= j form with the
/// supercommutativity sign. Throws CertificateError for foreign variables,
/// indices outside the type, or constants that break the grading.
MPoly canonicalize_equation(const MPoly& p, const SuperType& type);

/// Canonicalizes, drops nothing, and rejects an empty list.
ClosedSet make_closed_set(std::string name, const SuperType& type, const std::vector<MPoly>& equations,
                          std::string provenance = {});

/// Substitutes a structure's table into an equation.
MPoly evaluate_at(const MPoly& equation, const SuperStructure& s);

struct Options {
  GroebnerLimits limits;
  /// Retry the other Borel subgroups containing the diagonal torus, one per
  /// pair of basis orderings, when the first fails.
  bool try_all_orientations = true;
  /// Fall back to radical membership and to the Jordan ideal.
  bool allow_fallbacks = true;
  /// Search for a rational witness when a target is representable.
  bool extract_witness = true;
};

// ---------------------------------------------------------------- membership

enum class MembershipMode { Direct, BasisChange, NotApplicable };
std::string to_string(MembershipMode m);

struct MembershipResult {
  bool pass = false;
  bool timeout = false;
  MembershipMode mode = MembershipMode::Direct;
  std::vector<std::size_t> failing;  // indices into R.equations (direct mode)
  std::vector<MPoly> values;         // equation values at J
};

/// Plain membership: every equation vanishes identically at J's table.
MembershipResult membership(const SuperStructure& j, const ClosedSet& r);

/// Plain membership, then for non-parametric J representability of J in R.
MembershipResult membership_with_fallback(const SuperStructure& j, const ClosedSet& r, const Options& opt = {});

// ---------------------------------------------------------------- stability

enum class StabilityOutcome { Stable, Unstable, Timeout };
std::string to_string(StabilityOutcome o);

struct StabilityAttempt {
  FlagOrder even;
  FlagOrder odd;
  bool modulo_jordan = false;
  bool radical = false;
  StabilityOutcome outcome = StabilityOutcome::Unstable;
  std::vector<std::size_t> failing;  // equations whose transform left the ideal
  std::vector<MPoly> remainders;     // nonzero normal forms (membership test)
  /// A Jordan structure in R moved out of R by this Borel; remainders then
  /// hold the transformed equations as polynomials in b.
  std::optional<SuperStructure> counterexample;
  GroebnerStats stats;
  std::string timeout_reason;

  std::string orientation() const;
};

struct StabilityResult {
  StabilityOutcome outcome = StabilityOutcome::Unstable;
  std::vector<StabilityAttempt> attempts;  // in the order tried
  double seconds = 0;

  /// The successful attempt, if any.
  const StabilityAttempt* stable_attempt() const;
};

/// Is the zero set of R mapped into itself by the generic Borel element?
/// Tiers: R alone, then its radical, then the same modulo the Jordan
/// identities, each across all orientations. Before the Jordan basis is
/// computed, orientations refuted by a known Jordan structure are dropped.
StabilityResult b_stability(const ClosedSet& r, const Options& opt = {});

/// One attempt with fixed orientation and test; exposed for diagnostics.
StabilityAttempt stability_attempt(const ClosedSet& r, const FlagOrder& even, const FlagOrder& odd, bool modulo_jordan,
                                   bool radical, const GroebnerLimits& limits);

/// Orderings in the order they are tried: upper, lower, mixed, then the rest.
std::vector<std::pair<FlagOrder, FlagOrder>> borel_orientations(const SuperType& type, bool all);

// ---------------------------------------------------------------- representability

enum class RepresentabilityOutcome { Representable, Infeasible, Timeout };
std::string to_string(RepresentabilityOutcome o);

struct RepresentabilityResult {
  RepresentabilityOutcome outcome = RepresentabilityOutcome::Timeout;
  /// A g with g*J' in R, when one was found.
  std::optional<ScalarChange> witness;
  GroebnerStats stats;
  std::string timeout_reason;
  std::size_t variables = 0;
  double seconds = 0;
};

/// Decides over C whether some g in G puts J' into R. Rejects parametric J'.
RepresentabilityResult representability(const SuperStructure& jp, const ClosedSet& r, const Options& opt = {});

// ---------------------------------------------------------------- verdicts

enum class Outcome { NonDegeneration, Inconclusive, Refuted };
std::string to_string(Outcome o);

struct Verdict {
  std::string source;
  std::string target;
  Outcome outcome = Outcome::Inconclusive;
  std::string reason;
  MembershipResult membership;
  std::optional<StabilityResult> stability;
  std::optional<RepresentabilityResult> representability;
  double seconds = 0;
  /// Every sub-decision came from exact arithmetic over Q.
  bool exact = true;
};

/// Verdict outcome from the three sub-results; the only place that can say
/// NonDegeneration.
Outcome assemble_outcome(const MembershipResult& m, const StabilityResult* s, const RepresentabilityResult* r,
                         std::string* reason = nullptr);

/// `stability` may carry a result computed earlier for the same R.
Verdict certify_pair(const SuperStructure& j, const SuperStructure& jp, const ClosedSet& r, const Options& opt = {},
                     const std::optional<StabilityResult>& stability = std::nullopt, std::string source_id = "J",
                     std::string target_id = "J'");

/// Parametric source: membership must hold identically in the parameters.
Verdict certify_family(const SuperStructure& jfam, const SuperStructure& jp, const ClosedSet& r,
                       const Options& opt = {}, const std::optional<StabilityResult>& stability = std::nullopt,
                       std::string source_id = "J", std::string target_id = "J'");

}  // namespace jsv
