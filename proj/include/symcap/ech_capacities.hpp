#pragma once

// ECH capacity engines.
//
// For a concave toric domain with weights a_i (multiplicity n_i),
//
//   c_k = max { sum_{i,j} d_ij a_i : d_ij >= 0 integers, sum_{i,j} (d_ij^2 + d_ij) <= 2k }.
//
// Since d^2 + d = 2 T(d) with T(d) = d(d+1)/2, internally the budget is k in
// units of triangular numbers. Raising one copy from level d to d + 1 costs
// d + 1 of those units, so each class is a stack of "layers": layer q holds
// n_i units of value a_i, each costing q + 1. Within a class the optimum
// always fills layers bottom-up, so the copies sit at two adjacent levels
// (the convexity-normal form recorded in CandidateAssignment).

#include <cstdint>
#include <vector>

#include "symcap/rational.hpp"
#include "symcap/toric_geometry.hpp"
#include "symcap/weight_calculus.hpp"

namespace symcap {

struct CapacityLimits {
  /// Largest 2k the dynamic-programming oracle accepts.
  Integer oracle_budget_limit{400000};
  /// Largest k for the ellipsoid lattice counter.
  Integer ellipsoid_max_k{Integer(1) << 62};
  std::size_t fast_max_classes = 64;
  /// Exchange window of the fast solver, in levels.
  int exchange_window = 3;
  /// Largest residual budget (in triangular units) the fast solver's
  /// certification DP will allocate.
  std::uint64_t certify_budget_cap = std::uint64_t{1} << 21;
  /// Largest (budget x candidate count) work the certification DP may do.
  std::uint64_t certify_work_cap = 300'000'000;
};

/// One weight class in convexity-normal form: `promoted` copies sit at
/// base_level + 1, the rest at base_level.
struct ClassLevels {
  Integer base_level;
  Integer promoted;

  friend bool operator==(const ClassLevels& a, const ClassLevels& b) {
    return a.base_level == b.base_level && a.promoted == b.promoted;
  }
};

struct CandidateAssignment {
  /// Parallel to WeightMultiset::entries().
  std::vector<ClassLevels> classes;
  /// sum over copies of (d^2 + d); at most 2k.
  Integer budget;
  /// sum over copies of d * a_i.
  Rational value;
};

struct CapacityResult {
  Rational best;
  Rational upper;
  bool exact = false;
  CandidateAssignment witness;
};

/// d * a for the largest d with d(d+1)/2 <= k.
Rational ball_capacity(const Rational& a, const Integer& k);

/// (k+1)-st smallest element, with multiplicity, of {m a + n b : m, n >= 0}.
Rational ellipsoid_capacity(const Ellipsoid& e, const Integer& k, const CapacityLimits& limits = {});
/// c_0 .. c_kmax of an ellipsoid in one pass.
std::vector<Rational> ellipsoid_capacity_sweep(const Ellipsoid& e, std::uint64_t kmax);

/// Exact optimum by dynamic programming over the budget. Throws
/// ResourceLimit when 2k exceeds limits.oracle_budget_limit.
CapacityResult multiset_capacity_oracle(const WeightMultiset& w, const Integer& k, const CapacityLimits& limits = {});
/// c_0 .. c_kmax from a single oracle run.
std::vector<Rational> multiset_capacity_sweep(const WeightMultiset& w, std::uint64_t kmax,
                                              const CapacityLimits& limits = {});

/// Interval-certified solver for budgets far beyond the oracle.
///
/// Seeds levels from the Lagrangian relaxation (all layers whose value per
/// unit exceeds 1/lambda), fills the residual greedily by value per unit,
/// then runs an exchange search. `upper` is the fractional relaxation of the
/// layered problem. `exact` is set when best == upper or when the exchange
/// search covered every solution whose reduced-cost penalty is below the gap.
CapacityResult multiset_capacity_fast(const WeightMultiset& w, const Integer& k, const CapacityLimits& limits = {});

/// Sum of n_i d_i a_i for a candidate, and its budget sum n_i (d_i^2 + d_i).
/// Used to re-check witnesses independently of the solvers.
Rational assignment_value(const WeightMultiset& w, const CandidateAssignment& c);
Integer assignment_budget(const WeightMultiset& w, const CandidateAssignment& c);

}  // namespace symcap
