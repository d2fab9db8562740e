#include "jsv/degeneration/witness.hpp"

namespace jsv {

std::string to_string(WitnessOutcome o) {
  switch (o) {
    case WitnessOutcome::Confirmed: return "Confirmed";
    case WitnessOutcome::LimitMissing: return "LimitMissing";
    case WitnessOutcome::LimitMismatch: return "LimitMismatch";
  }
  return "?";
}

WitnessResult verify_witness(const Witness& w) {
  if (!(w.source.type() == w.target.type()))
    throw std::invalid_argument("witness source and target have different types");
  auto f = act_curve(w.g, w.source);
  WitnessResult result;
  SuperStructure limit(w.source.type(), w.source.parameters());
  const int d = w.source.dim();
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) {
        auto value = laurent_ratio_limit(f.num(i, j, k), f.denominator(i, j, k));
        if (!value) {
          result.poles.push_back({i, j, k});
          continue;
        }
        if (!(*value == w.target.at(i, j, k))) result.mismatches.push_back({i, j, k});
        if (!value->is_zero()) limit.set(i, j, k, *value);
      }
  if (!result.poles.empty()) {
    result.outcome = WitnessOutcome::LimitMissing;
    return result;
  }
  result.limit = std::move(limit);
  result.outcome = result.mismatches.empty() ? WitnessOutcome::Confirmed : WitnessOutcome::LimitMismatch;
  return result;
}

bool orbit_equal_test(const SuperStructure& j, const SuperStructure& k, const ScalarChange& g) {
  if (!(j.type() == k.type())) throw std::invalid_argument("orbit test across different types");
  return act(g, j) == k;
}

CurveChange as_curve(const ScalarChange& g) {
  auto lift = [](const Matrix<Rational>& m) {
    Matrix<LaurentPoly> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = LaurentPoly(MPoly(m(r, c)));
    return out;
  };
  return {lift(g.even), lift(g.odd)};
}

}  // namespace jsv
