#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jsv/action/action.hpp"

namespace jsv {

/// A curve g(t) in G claimed to carry `source` to `target` as t -> 0.
struct Witness {
  CurveChange g;
  SuperStructure source;
  SuperStructure target;
};

enum class WitnessOutcome { Confirmed, LimitMissing, LimitMismatch };

std::string to_string(WitnessOutcome o);

struct WitnessResult {
  WitnessOutcome outcome = WitnessOutcome::Confirmed;
  std::vector<std::array<int, 3>> poles;       // entries without a limit
  std::vector<std::array<int, 3>> mismatches;  // limit differs from target
  /// The limit table, present when every entry has a limit.
  std::optional<SuperStructure> limit;
};

/// Throws ArithmeticError when a block determinant vanishes identically and
/// std::invalid_argument on a type mismatch.
WitnessResult verify_witness(const Witness& w);

/// True iff g*J equals K entrywise.
bool orbit_equal_test(const SuperStructure& j, const SuperStructure& k, const ScalarChange& g);

/// A constant change viewed as a curve.
CurveChange as_curve(const ScalarChange& g);

}  // namespace jsv
