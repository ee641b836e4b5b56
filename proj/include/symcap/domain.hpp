#pragma once

// A toric domain in any of its three exact descriptions, and capacity
// queries that dispatch to the matching engine.

#include <variant>
#include <vector>

#include "symcap/ech_capacities.hpp"
#include "symcap/toric_geometry.hpp"
#include "symcap/weight_calculus.hpp"

namespace symcap {

using Domain = std::variant<Ellipsoid, MomentProfile, WeightMultiset>;

Rational domain_area(const Domain& d);
/// Ellipsoid weights, or the weight expansion of a profile.
WeightMultiset domain_weights(const Domain& d);
Domain scale(const Domain& d, const ScaleFactor& t);

enum class Engine { Auto, Oracle, Fast };

/// Ellipsoids use the lattice counter; everything else goes through the
/// weights. Auto picks the oracle when the budget allows, else the fast
/// solver.
CapacityResult domain_capacity(const Domain& d, const Integer& k, const CapacityLimits& limits = {},
                               Engine engine = Engine::Auto);
/// c_0 .. c_kmax, exact.
std::vector<Rational> domain_capacity_sweep(const Domain& d, std::uint64_t kmax, const CapacityLimits& limits = {});

struct WeylRatio {
  Rational value;  // c_k^2 / (4 k area) with c_k the best known value
  Rational upper;  // same with the upper end of the capacity interval
  bool exact = false;
};

/// c_k^2 / (4 k vol); tends to 1 as k grows. Throws std::domain_error for k = 0.
WeylRatio weyl_ratio(const Domain& d, const Integer& k, const CapacityLimits& limits = {});

}  // namespace symcap
