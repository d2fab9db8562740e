#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "jsv/exact/mpoly.hpp"

namespace jsv {

class GradingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Type (m,n): m even and n odd basis vectors, evens first.
struct SuperType {
  int m = 0;
  int n = 0;

  int dim() const { return m + n; }
  /// 0 for even, 1 for odd; indices are 1-based.
  int parity(int i) const { return i > m ? 1 : 0; }
  bool in_range(int i) const { return i >= 1 && i <= dim(); }
  /// Products land in the right graded component.
  bool graded(int i, int j, int k) const { return (parity(i) + parity(j)) % 2 == parity(k); }
  std::string str() const { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }
  friend bool operator==(const SuperType&, const SuperType&) = default;
};

/// Where a constant c_ij^k lives once supercommutativity is used to put i <= j.
struct CanonicalIndex {
  enum class Status { Valid, OutOfRange, GradingViolation };
  Status status = Status::Valid;
  int sign = 1;  // 0 when the constant is forced to vanish (f_i f_i = 0)
  int i = 0, j = 0, k = 0;
};

CanonicalIndex canonicalize_index(const SuperType& type, int i, int j, int k);

/// Structure-constant table c_ij^k of a superalgebra of type (m,n).
class SuperStructure {
 public:
  SuperStructure() = default;
  /// The zero structure.
  explicit SuperStructure(SuperType type, std::vector<std::string> parameters = {});

  /// Every canonical constant becomes the variable c_i_j_k (with the
  /// supercommutativity sign on the mirrored entries).
  static SuperStructure generic(SuperType type);

  const SuperType& type() const { return type_; }
  int dim() const { return type_.dim(); }
  const std::vector<std::string>& parameters() const { return parameters_; }

  const MPoly& at(int i, int j, int k) const;
  /// Throws GradingError for a nonzero value off the graded components.
  void set(int i, int j, int k, MPoly value);
  /// Sets c_ij^k and its supercommutative mirror c_ji^k.
  void set_symmetric(int i, int j, int k, const MPoly& value);

  /// Some entry depends on a variable.
  bool is_parametric() const;
  bool is_zero() const;

  friend bool operator==(const SuperStructure&, const SuperStructure&) = default;

 private:
  std::size_t slot(int i, int j, int k) const;

  SuperType type_;
  std::vector<std::string> parameters_;
  std::vector<MPoly> table_;
};

/// Homogeneous or mixed vector in V0 + V1.
class GradedVector {
 public:
  enum class Parity { Even, Odd, Mixed };

  GradedVector(const SuperType& type, std::vector<Rational> coordinates, Parity parity);
  static GradedVector basis(const SuperType& type, int i);

  const std::vector<Rational>& coordinates() const { return coords_; }
  Parity parity() const { return parity_; }

 private:
  std::vector<Rational> coords_;
  Parity parity_;
};

/// The slice c_ij^1..c_ij^{m+n}.
std::vector<MPoly> multiply(const SuperStructure& s, int i, int j);

/// Bilinear product of coordinate vectors.
std::vector<MPoly> multiply(const SuperStructure& s, const std::vector<MPoly>& u, const std::vector<MPoly>& v);

struct SupercommutativityViolation {
  int i, j, k;
  MPoly difference;  // c_ji^k - (-1)^{|i||j|} c_ij^k
};

std::vector<SupercommutativityViolation> check_supercommutativity(const SuperStructure& s);

struct JordanViolation {
  std::array<int, 4> quadruple;  // basis indices (x, y, z, t)
  int k;                         // output coordinate
  MPoly value;                   // lhs - rhs
};

struct JordanCheck {
  /// Non-empty means the precondition failed and the identity was not evaluated.
  std::vector<SupercommutativityViolation> supercommutativity;
  std::vector<JordanViolation> violations;

  bool passed() const { return supercommutativity.empty() && violations.empty(); }
};

/// Evaluates the graded Jordan identity on all basis quadruples. For
/// parametric structures passing means vanishing identically.
JordanCheck check_jordan_superidentity(const SuperStructure& s);

/// Nonzero identity polynomials of the generic structure of this type, in the
/// canonical c-variables. Their common zeros are the Jordan superalgebras.
std::vector<MPoly> jordan_identity_polynomials(const SuperType& type);

/// Small sparse Jordan superalgebras of a type, all passing the identity
/// checker: orthogonal idempotents with Peirce actions 0, 1/2, 1 on the
/// remaining basis vectors, at most one square-zero relation e_a e_a = e_b, and at most one
/// odd product f_p f_q = e_a into a null even vector.
std::vector<SuperStructure> sparse_jordan_structures(const SuperType& type);

/// Dimension of the space of even derivations. Rejects parametric input.
std::size_t derivation_dimension(const SuperStructure& s);

}  // namespace jsv
