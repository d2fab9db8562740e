#include <algorithm>
#include <map>
#include <set>

#include "jsv/exact/matrix.hpp"
#include "jsv/superalgebra/structure.hpp"

namespace jsv {

CanonicalIndex canonicalize_index(const SuperType& type, int i, int j, int k) {
  CanonicalIndex out;
  if (!type.in_range(i) || !type.in_range(j) || !type.in_range(k)) {
    out.status = CanonicalIndex::Status::OutOfRange;
    return out;
  }
  if (!type.graded(i, j, k)) {
    out.status = CanonicalIndex::Status::GradingViolation;
    return out;
  }
  const bool odd_pair = type.parity(i) == 1 && type.parity(j) == 1;
  out.sign = (i > j && odd_pair) ? -1 : 1;
  if (i == j && odd_pair) out.sign = 0;
  out.i = std::min(i, j);
  out.j = std::max(i, j);
  out.k = k;
  return out;
}

SuperStructure::SuperStructure(SuperType type, std::vector<std::string> parameters)
    : type_(type), parameters_(std::move(parameters)) {
  if (type.m < 0 || type.n < 0) throw std::invalid_argument("negative dimension in type " + type.str());
  const auto d = static_cast<std::size_t>(type.dim());
  table_.assign(d * d * d, MPoly());
}

SuperStructure SuperStructure::generic(SuperType type) {
  SuperStructure s(type);
  const int d = type.dim();
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        auto c = canonicalize_index(type, i, j, k);
        if (c.status != CanonicalIndex::Status::Valid || c.sign == 0) continue;
        s.table_[s.slot(i, j, k)] = MPoly::variable(structure_constant_name(c.i, c.j, c.k)).scaled(Rational(c.sign));
      }
  return s;
}

std::size_t SuperStructure::slot(int i, int j, int k) const {
  if (!type_.in_range(i) || !type_.in_range(j) || !type_.in_range(k))
    throw std::out_of_range("basis index out of range for type " + type_.str());
  const auto d = static_cast<std::size_t>(dim());
  return (static_cast<std::size_t>(i - 1) * d + static_cast<std::size_t>(j - 1)) * d + static_cast<std::size_t>(k - 1);
}

const MPoly& SuperStructure::at(int i, int j, int k) const { return table_[slot(i, j, k)]; }

void SuperStructure::set(int i, int j, int k, MPoly value) {
  auto& entry = table_[slot(i, j, k)];
  if (!value.is_zero() && !type_.graded(i, j, k))
    throw GradingError("c" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k) +
                       " must vanish: product leaves its graded component");
  entry = std::move(value);
}

void SuperStructure::set_symmetric(int i, int j, int k, const MPoly& value) {
  set(i, j, k, value);
  const bool odd_pair = type_.parity(i) == 1 && type_.parity(j) == 1;
  set(j, i, k, odd_pair ? -value : value);
}

bool SuperStructure::is_parametric() const {
  return std::any_of(table_.begin(), table_.end(), [](const MPoly& p) { return !p.is_constant(); });
}

bool SuperStructure::is_zero() const {
  return std::all_of(table_.begin(), table_.end(), [](const MPoly& p) { return p.is_zero(); });
}

GradedVector::GradedVector(const SuperType& type, std::vector<Rational> coordinates, Parity parity)
    : coords_(std::move(coordinates)), parity_(parity) {
  if (coords_.size() != static_cast<std::size_t>(type.dim()))
    throw std::invalid_argument("graded vector has the wrong length");
  for (int i = 1; i <= type.dim(); ++i) {
    if (coords_[static_cast<std::size_t>(i - 1)].is_zero()) continue;
    if ((parity == Parity::Even && type.parity(i) == 1) || (parity == Parity::Odd && type.parity(i) == 0))
      throw GradingError("coordinate " + std::to_string(i) + " breaks the declared parity");
  }
}

GradedVector GradedVector::basis(const SuperType& type, int i) {
  if (!type.in_range(i)) throw std::out_of_range("basis index out of range");
  std::vector<Rational> c(static_cast<std::size_t>(type.dim()));
  c[static_cast<std::size_t>(i - 1)] = Rational(1);
  return {type, std::move(c), type.parity(i) ? Parity::Odd : Parity::Even};
}

std::vector<MPoly> multiply(const SuperStructure& s, int i, int j) {
  std::vector<MPoly> out;
  out.reserve(static_cast<std::size_t>(s.dim()));
  for (int k = 1; k <= s.dim(); ++k) out.push_back(s.at(i, j, k));
  return out;
}

std::vector<MPoly> multiply(const SuperStructure& s, const std::vector<MPoly>& u, const std::vector<MPoly>& v) {
  const int d = s.dim();
  std::vector<MPoly> out(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    const MPoly& ui = u[static_cast<std::size_t>(i - 1)];
    if (ui.is_zero()) continue;
    for (int j = 1; j <= d; ++j) {
      const MPoly& vj = v[static_cast<std::size_t>(j - 1)];
      if (vj.is_zero()) continue;
      MPoly w = ui * vj;
      for (int k = 1; k <= d; ++k) {
        const MPoly& c = s.at(i, j, k);
        if (!c.is_zero()) out[static_cast<std::size_t>(k - 1)] += w * c;
      }
    }
  }
  return out;
}

std::vector<SupercommutativityViolation> check_supercommutativity(const SuperStructure& s) {
  std::vector<SupercommutativityViolation> out;
  const auto& type = s.type();
  for (int i = 1; i <= s.dim(); ++i)
    for (int j = 1; j <= s.dim(); ++j)
      for (int k = 1; k <= s.dim(); ++k) {
        const bool odd_pair = type.parity(i) == 1 && type.parity(j) == 1;
        MPoly diff = odd_pair ? s.at(j, i, k) + s.at(i, j, k) : s.at(j, i, k) - s.at(i, j, k);
        // i == j odd: f f = -f f forces c = 0
        if (i >= j && !diff.is_zero()) out.push_back({j, i, k, diff});
      }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  return out;
}

namespace {

std::vector<MPoly> basis_vector(int d, int i) {
  std::vector<MPoly> v(static_cast<std::size_t>(d));
  v[static_cast<std::size_t>(i - 1)] = MPoly(1);
  return v;
}

void axpy(std::vector<MPoly>& acc, int sign, const std::vector<MPoly>& v) {
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (sign > 0)
      acc[k] += v[k];
    else
      acc[k] -= v[k];
  }
}

int sign_of(int exponent) { return exponent % 2 == 0 ? 1 : -1; }

}  // namespace

JordanCheck check_jordan_superidentity(const SuperStructure& s) {
  JordanCheck result;
  result.supercommutativity = check_supercommutativity(s);
  if (!result.supercommutativity.empty()) return result;

  const int d = s.dim();
  const auto& type = s.type();
  std::vector<std::vector<MPoly>> e;
  for (int i = 1; i <= d; ++i) e.push_back(basis_vector(d, i));
  auto prod = [&](int a, int b) { return multiply(s, a, b); };
  auto mul = [&](const std::vector<MPoly>& u, const std::vector<MPoly>& v) { return multiply(s, u, v); };

  for (int x = 1; x <= d; ++x)
    for (int y = 1; y <= d; ++y)
      for (int z = 1; z <= d; ++z)
        for (int t = 1; t <= d; ++t) {
          const int px = type.parity(x), py = type.parity(y), pz = type.parity(z), pt = type.parity(t);
          const auto& ex = e[static_cast<std::size_t>(x - 1)];
          const auto& ey = e[static_cast<std::size_t>(y - 1)];
          const auto& ez = e[static_cast<std::size_t>(z - 1)];
          const auto& et = e[static_cast<std::size_t>(t - 1)];

          std::vector<MPoly> diff(static_cast<std::size_t>(d));
          axpy(diff, 1, mul(mul(prod(x, y), ez), et));
          axpy(diff, sign_of(py * pz + py * pt + pz * pt), mul(mul(prod(x, t), ez), ey));
          axpy(diff, sign_of(px * py + px * pz + px * pt + pz * pt), mul(mul(prod(y, t), ez), ex));
          axpy(diff, -1, mul(prod(x, y), prod(z, t)));
          axpy(diff, -sign_of(pt * (py + pz)), mul(prod(x, t), prod(y, z)));
          axpy(diff, -sign_of(py * pz), mul(prod(x, z), prod(y, t)));

          for (int k = 1; k <= d; ++k) {
            auto& v = diff[static_cast<std::size_t>(k - 1)];
            if (!v.is_zero()) result.violations.push_back({{x, y, z, t}, k, std::move(v)});
          }
        }
  return result;
}

std::vector<MPoly> jordan_identity_polynomials(const SuperType& type) {
  auto check = check_jordan_superidentity(SuperStructure::generic(type));
  std::vector<MPoly> out;
  std::set<MPoly> seen;
  for (auto& v : check.violations) {
    MPoly p = v.value;
    // p and -p generate the same ideal
    if (p.terms().front().coef.sign() < 0) p = -p;
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

std::vector<SuperStructure> sparse_jordan_structures(const SuperType& type) {
  const int m = type.m, n = type.n;
  const Rational half(1, 2);
  std::vector<SuperStructure> out;
  std::set<std::vector<MPoly>> seen;
  auto keep = [&](const SuperStructure& s) {
    std::vector<MPoly> key;
    for (int i = 1; i <= s.dim(); ++i)
      for (int j = 1; j <= s.dim(); ++j)
        for (int k = 1; k <= s.dim(); ++k) key.push_back(s.at(i, j, k));
    if (seen.insert(key).second && check_jordan_superidentity(s).passed()) out.push_back(s);
  };
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> idem, null;
    for (int a = 1; a <= m; ++a) ((mask >> (a - 1)) & 1u ? idem : null).push_back(a);
    // (a, b) with e_a e_a = e_b, or none
    std::vector<std::pair<int, int>> squares = {{0, 0}};
    for (int a : null)
      for (int b : null)
        if (a != b) squares.emplace_back(a, b);
    // (p, q, a) with f_p f_q = e_a, or none
    std::vector<std::array<int, 3>> odd_products = {{0, 0, 0}};
    for (int p = m + 1; p <= m + n; ++p)
      for (int q = p + 1; q <= m + n; ++q)
        for (int a : null) odd_products.push_back({p, q, a});
    // Peirce actions of each idempotent on the null even and the odd vectors
    const std::size_t slots = idem.size() * (null.size() + static_cast<std::size_t>(n));
    std::size_t actions = 1;
    for (std::size_t i = 0; i < slots; ++i) actions *= 3;
    for (const auto& [sa, sb] : squares)
      for (const auto& op : odd_products)
        for (std::size_t code = 0; code < actions; ++code) {
          SuperStructure s(type);
          for (int a : idem) s.set(a, a, a, MPoly(1));
          if (sa) s.set(sa, sa, sb, MPoly(1));
          if (op[0]) s.set_symmetric(op[0], op[1], op[2], MPoly(1));
          std::size_t rest = code;
          std::vector<int> targets = null;
          for (int p = m + 1; p <= m + n; ++p) targets.push_back(p);
          for (int a : idem)
            for (int p : targets) {
              const std::size_t digit = rest % 3;
              rest /= 3;
              if (digit == 0) continue;
              s.set_symmetric(a, p, p, MPoly(digit == 1 ? half : Rational(1)));
            }
          keep(s);
        }
  }
  return out;
}

std::size_t derivation_dimension(const SuperStructure& s) {
  if (s.is_parametric()) throw std::invalid_argument("derivation dimension needs a non-parametric structure");
  const auto& type = s.type();
  const int d = s.dim();
  // unknown D_ab (D x_b = sum_a D_ab x_a), only within one graded block
  std::map<std::pair<int, int>, std::size_t> unknown;
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b)
      if (type.parity(a) == type.parity(b)) unknown.emplace(std::make_pair(a, b), unknown.size());
  if (unknown.empty()) return 0;

  auto value = [&](int i, int j, int k) { return s.at(i, j, k).constant_term(); };
  std::vector<std::vector<Rational>> rows;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        // D(x_i x_j) - D(x_i) x_j - x_i D(x_j), coordinate k
        std::vector<Rational> row(unknown.size());
        auto add = [&](int a, int b, const Rational& c) {
          auto it = unknown.find({a, b});
          if (it != unknown.end() && !c.is_zero()) row[it->second] += c;
        };
        for (int r = 1; r <= d; ++r) add(k, r, value(i, j, r));
        for (int q = 1; q <= d; ++q) {
          add(q, i, -value(q, j, k));
          add(q, j, -value(i, q, k));
        }
        if (std::any_of(row.begin(), row.end(), [](const Rational& c) { return !c.is_zero(); }))
          rows.push_back(std::move(row));
      }
  return unknown.size() - rank(std::move(rows));
}

}  // namespace jsv
