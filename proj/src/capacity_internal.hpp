#pragma once

#include <vector>

#include "symcap/ech_capacities.hpp"

namespace symcap::detail {

/// Saturation point for budget arithmetic; anything at or above it is
/// treated as unaffordable.
inline const i128 kInfinity = i128(1) << 126;

struct LayeredClass {
  Rational weight;
  /// Multiplicity clamped to budget + 1 (more copies can never be used).
  i128 copies;
};

std::vector<LayeredClass> layered_classes(const WeightMultiset& w, const Integer& budget_units);

i128 sat_add(i128 a, i128 b);
i128 sat_mul(i128 a, i128 b);
i128 triangular(i128 d);
/// Triangular units needed to place `units` layer units in a class with
/// `copies` copies, filling layers bottom-up.
i128 class_cost(i128 copies, i128 units);

CandidateAssignment make_assignment(const std::vector<LayeredClass>& classes, const std::vector<i128>& units);
Integer common_denominator(const std::vector<LayeredClass>& classes);

}  // namespace symcap::detail
