#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "jsv/exact/mpoly.hpp"

namespace jsv {

enum class OrderKind { DegRevLex, Lex };

/// Monomial order over an explicit variable priority list (first = largest).
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::vector<std::string> priority);

  OrderKind kind() const { return kind_; }
  const std::vector<std::string>& variables() const { return vars_; }
  /// Copy with every variable of `extra` not yet present appended (sorted by name).
  MonomialOrder extended_with(const std::vector<std::string>& extra) const;

  /// Three-way comparison of exponent vectors aligned to variables().
  int compare(const Exponents& a, const Exponents& b) const;

  std::string str() const;

 private:
  OrderKind kind_ = OrderKind::DegRevLex;
  std::vector<std::string> vars_;
};

struct GroebnerLimits {
  std::size_t max_basis_size = 20000;
  unsigned max_degree = 400;
  double time_limit_seconds = 600.0;
  /// Run Buchberger modulo a prime first (diagnostic only; answers come from Q).
  bool modular_precheck = false;
  std::uint64_t prime = 0;  // 0 = default prime below 2^31
};

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t pairs_pruned = 0;
  std::size_t zero_reductions = 0;
  std::size_t max_basis_size = 0;
  std::size_t basis_size = 0;
  unsigned max_degree = 0;
  double seconds = 0.0;
};

struct BasisResult {
  bool timeout = false;
  std::string timeout_reason;
  std::vector<MPoly> basis;  // reduced, monic, sorted by decreasing leading monomial
  GroebnerStats stats;
  /// Set when a modular pre-check ran: whether the modular basis was {1}.
  std::optional<bool> modular_trivial;
};

enum class Triviality { Trivial, NonTrivial, Timeout };
std::string to_string(Triviality t);

/// Polynomial ideal with a fixed monomial order and a lazily computed basis.
class Ideal {
 public:
  Ideal() = default;
  /// Variables of the generators missing from `order` are appended to it.
  Ideal(std::vector<MPoly> generators, MonomialOrder order);

  const std::vector<MPoly>& generators() const { return generators_; }
  const MonomialOrder& order() const { return order_; }

  /// Reduced Groebner basis; successful results are cached.
  BasisResult basis(const GroebnerLimits& limits = {}) const;
  bool has_cached_basis() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<BasisResult> result;
  };
  std::vector<MPoly> generators_;
  MonomialOrder order_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Reduced Groebner basis of `ideal` (uncached).
BasisResult groebner_basis(const Ideal& ideal, const GroebnerLimits& limits = {});

struct Reduction {
  bool timeout = false;
  std::string timeout_reason;
  MPoly remainder;
};

/// Normal form of p modulo the ideal's Groebner basis; zero iff p is a member.
Reduction reduce(const MPoly& p, const Ideal& ideal, const GroebnerLimits& limits = {});

/// Normal form of p against `basis`, which must be a Groebner basis for `order`.
MPoly normal_form(const MPoly& p, const std::vector<MPoly>& basis, const MonomialOrder& order);

/// Trivial iff 1 is in the ideal, i.e. no common zero over C.
Triviality is_trivial(const Ideal& ideal, const GroebnerLimits& limits = {},
                      GroebnerStats* stats = nullptr);

/// Adjoins `aux` and the generator d*aux - 1 (Rabinowitsch): zeros of the result
/// project onto the zeros of the ideal where d does not vanish.
Ideal saturate_by_unit(const Ideal& ideal, const MPoly& d, const std::string& aux = "y_sat");

/// Leading term (with coefficient) with respect to an order.
MPoly leading_term(const MPoly& p, const MonomialOrder& order);

/// S-polynomial of two nonzero polynomials.
MPoly s_polynomial(const MPoly& f, const MPoly& g, const MonomialOrder& order);

/// Buchberger criterion: every S-polynomial of `basis` reduces to zero.
bool satisfies_buchberger_criterion(const std::vector<MPoly>& basis, const MonomialOrder& order);

/// Largest prime below 2^31.
std::uint64_t default_prime();

}  // namespace jsv
