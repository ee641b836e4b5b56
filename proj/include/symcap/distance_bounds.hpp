#pragma once

// Bounds on the symplectic Banach-Mazur distance between toric domains.
//
// Lower bounds come from capacities: an embedding U -> T V forces
// c_k(U) <= T c_k(V), hence ln T >= |ln(c_k(U)/c_k(V))| for every k, and
// area(U) <= T^2 area(V). Upper bounds come from inclusions of moment
// regions and from the scaling estimate for parameter vectors. The
// distance itself is never computed, only bracketed.

#include <optional>
#include <string>
#include <vector>

#include "symcap/domain.hpp"
#include "symcap/quasiflat.hpp"

namespace symcap {

/// Capacities of a domain, possibly known only through two bracketing
/// weight models (c_k(lower) <= c_k(X) <= c_k(upper)).
struct CapacitySource {
  Domain lower;
  Domain upper;
  bool exact = true;

  static CapacitySource of(Domain d);
  static CapacitySource bracketed(const WeightBounds& b);
  /// Exact weights when representable, else the bracket at this precision.
  static CapacitySource from_parameters(const ParameterVector& v, long precision_bits = kDefaultPrecisionBits);
};

struct CapacityInterval {
  Rational lower;
  Rational upper;
  bool exact = false;
};

CapacityInterval capacity_interval(const CapacitySource& s, const Integer& k, const CapacityLimits& limits = {});

/// Which k a capacity comparison looks at.
struct KPolicy {
  /// Every k from 1 to K instead of a log-spaced grid.
  bool dense = false;
  unsigned per_decade = 64;
  /// Hard ceiling on any sampled k.
  Integer cap{Integer(1) << 100};
  /// Always sampled when within range.
  std::vector<Integer> extra;
};

/// Sorted distinct indices in [1, min(K, cap)].
std::vector<Integer> sample_indices(const KPolicy& policy, const Integer& K);

struct CapacityBound {
  double value = 0;
  Integer witness_k{0};
  CapacityInterval at_witness_u;
  CapacityInterval at_witness_v;
  std::size_t samples = 0;
};

/// max over sampled k of the conservative |ln(c_k(U)/c_k(V))|.
CapacityBound capacity_lower_bound(const CapacitySource& u, const CapacitySource& v, const Integer& K,
                                   const KPolicy& policy = {}, const CapacityLimits& limits = {});

/// Same maximum over precomputed capacity intervals at shared indices.
CapacityBound capacity_lower_bound(const std::vector<Integer>& ks, const std::vector<CapacityInterval>& u,
                                   const std::vector<CapacityInterval>& v);

/// (1/2) |ln(area U / area V)|, rounded down.
double volume_lower_bound(const CapacitySource& u, const CapacitySource& v);
double volume_lower_bound(const Domain& u, const Domain& v);

struct InclusionBound {
  /// Smallest T with U inside T V, and with V inside T U.
  Rational scale_uv;
  Rational scale_vu;
  /// ln max(scale_uv, scale_vu), rounded up.
  double value = 0;
};

/// Weight multisets are realized first (subject to the realization limit).
InclusionBound inclusion_distance(const Domain& u, const Domain& v, const Integer& realize_limit = kDefaultRealizeLimit);

/// (N/2 + 1) ||v, w|| + 1, rounded up.
double lemma_upper_bound(const ParameterVector& v, const ParameterVector& w, long precision_bits = kDefaultPrecisionBits);

struct DistanceReport {
  CapacityBound capacity;
  double volume = 0;
  std::optional<InclusionBound> inclusion;
  std::optional<double> lemma;
  bool consistent = true;

  double lower() const;
  /// Smallest available upper bound (infinity when none).
  double upper() const;
};

/// Fills the lower bounds and checks them against whatever upper bounds
/// are already present.
void finalize(DistanceReport& r);

struct SandwichSample {
  double t;
  double lower;
  double upper;
};

/// A >= 1, B >= 0 minimizing A + B subject to t/A - B <= lower and
/// upper <= A t + B for every sample.
struct SandwichFit {
  double A = 1;
  double B = 0;
};
SandwichFit fit_sandwich(const std::vector<SandwichSample>& samples);

struct CertificateOptions {
  KPolicy policy;
  /// Intervals are enough here, so the fast solver's certification search
  /// is kept small.
  CapacityLimits limits = [] {
    CapacityLimits l;
    l.certify_budget_cap = std::uint64_t{1} << 18;
    l.certify_work_cap = 2'000'000;
    return l;
  }();
  long precision_bits = kDefaultPrecisionBits;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct CertificateRow {
  std::size_t id = 0;
  ParameterVector v;
  ParameterVector w;
  double metric = 0;  // ||v, w||, upper end
  double lower = 0;
  double upper = 0;
  double volume = 0;
  Integer K{0};
  Integer witness_k{0};
  bool skipped = false;
  std::string reason;
};

struct QuasiFlatCertificate {
  std::vector<CertificateRow> rows;
  SandwichFit fit;
  bool consistent = true;
};

/// Witness index for a pair: with M the coordinate maximizing
/// |ln(B_M / B'_M)|, the larger of B_M^{M+1}, B'_M^{M+1} (floored).
Integer witness_index(const ParameterVector& v, const ParameterVector& w);

QuasiFlatCertificate certificate(const std::vector<std::pair<ParameterVector, ParameterVector>>& pairs,
                                 const CertificateOptions& options = {});

}  // namespace symcap
