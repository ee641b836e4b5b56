#pragma once

// Weight expansions of concave toric domains.
//
// The weight expansion is the greedy ball packing inside the moment region:
// take the largest triangle {x, y >= 0, x + y <= c} contained in Omega, then
// recurse on the two leftover pieces after moving each back into concave
// position with a unimodular affine map. The multiset of triangle sizes c
// determines every ECH capacity of the domain.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "symcap/rational.hpp"
#include "symcap/toric_geometry.hpp"

namespace symcap {

struct WeightEntry {
  Rational weight;
  Integer multiplicity;

  friend bool operator==(const WeightEntry& a, const WeightEntry& b) {
    return a.weight == b.weight && a.multiplicity == b.multiplicity;
  }
};

/// Run-length encoded multiset of ball sizes, strictly descending by weight.
/// Multiplicities are arbitrary precision (they exceed 64 bits for the
/// quasi-flat families).
class WeightMultiset {
 public:
  WeightMultiset() = default;
  /// Sorts, merges equal weights and drops nothing; rejects weight <= 0 or
  /// multiplicity < 1.
  explicit WeightMultiset(std::vector<WeightEntry> entries);

  const std::vector<WeightEntry>& entries() const { return entries_; }
  std::size_t class_count() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Integer total_multiplicity() const;
  /// Sum of multiplicity * weight^2 / 2, the moment area of any realization.
  Rational area() const;

  WeightMultiset scaled(const Rational& t) const;
  /// Disjoint union.
  WeightMultiset merged_with(const WeightMultiset& other) const;

  friend bool operator==(const WeightMultiset& a, const WeightMultiset& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<WeightEntry> entries_;
};

/// Which unimodular map produced a child region from its parent after the
/// parent's head triangle of size c was removed.
enum class TraceSide {
  Root,
  /// Piece against the y-axis, mapped by (x, y) -> (x, x + y - c).
  Upper,
  /// Piece against the x-axis, mapped by (x, y) -> (x + y - c, y).
  Lower,
};

struct TraceNode {
  Rational size;
  TraceSide side = TraceSide::Root;
  std::optional<std::size_t> parent;
  std::size_t depth = 0;
};

/// Recursion tree of a weight expansion, nodes in visiting order (the
/// y-axis piece of a region is always visited before its x-axis piece).
struct ExpansionTrace {
  std::vector<TraceNode> nodes;
  std::size_t max_depth = 0;
};

struct WeightExpansion {
  WeightMultiset weights;
  ExpansionTrace trace;
};

struct ExpansionOptions {
  std::size_t depth_limit = 1'000'000;
};

inline const Integer kDefaultRealizeLimit{10000};

/// Continued-fraction (Euclidean) weights of E(a, b).
WeightMultiset ellipsoid_weights(const Ellipsoid& e);

WeightExpansion weight_expansion(const MomentProfile& profile, const ExpansionOptions& options = {});

/// A concave profile whose weight expansion is exactly `weights`.
///
/// Glues the realization of the remaining weights into the upper corner of
/// the largest weight's triangle. Unwinding that recursion gives a closed
/// form: with classes w_1 > ... > w_n of multiplicities m_j and cumulative
/// counts M_j, the vertices are (0, sum m_j w_j) and
/// (w_j, sum_{i<j} m_i (w_i - w_j)), and the boundary slopes are -M_n, ..., -M_1.
///
/// Refuses (ResourceLimit) when the total multiplicity exceeds `limit`.
MomentProfile realize(const WeightMultiset& weights, const Integer& limit = kDefaultRealizeLimit);

}  // namespace symcap
