#pragma once

// Quasi-flat families of concave toric domains.
//
// A parameter vector v = (B_1, ..., B_N) defines the union of ellipsoids
// E(B_i^{-i/2}, B_i^{1+i/2}); its weights are B_i^{i+1} copies of
// a_i = B_i^{-i/2}, and its area is sum B_i / 2. The chart sends a point of
// (R^n, sup-norm) to such a vector in three stages: folding into the
// positive cone of R^{2n}, a triangular linear map making the coordinates
// grow geometrically, and coordinatewise exponentiation.

#include <optional>
#include <string>
#include <vector>

#include "symcap/bigfloat.hpp"
#include "symcap/rational.hpp"
#include "symcap/toric_geometry.hpp"
#include "symcap/weight_calculus.hpp"

namespace symcap {

struct ParameterVector {
  std::vector<Rational> B;

  std::size_t size() const { return B.size(); }
  friend bool operator==(const ParameterVector& a, const ParameterVector& b) { return a.B == b.B; }
};

struct Admissibility {
  bool positive = true;
  /// B_k >= threshold for every k.
  bool above_threshold = true;
  /// B_k^2 <= B_{k+1}.
  bool growth = true;
  /// B_k^{k+1} is an integer.
  bool integral = true;
  /// Every a_k = B_k^{-k/2} is rational, so exact mode applies.
  bool representable = true;
  std::vector<std::string> failures;

  bool admissible() const { return positive && above_threshold && growth && integral && representable; }
};

inline const Rational kDefaultThreshold{64};

/// Reports which constraints hold; never throws.
Admissibility validate_parameters(const ParameterVector& v, const Rational& threshold = kDefaultThreshold);

ParameterVector parse_parameters(const std::string& comma_separated);
std::string to_string(const ParameterVector& v);

/// Extra equal weights standing in for the small weights of a smoothed domain.
struct Padding {
  Integer count;
  Rational bound;
};

/// a_k = B_k^{-k/2} exactly; throws RepresentabilityError when irrational.
Rational weight_size(const Rational& B, std::size_t index);

/// Exact weights. Padding adds `count` equal weights no larger than
/// min(bound, B_N^{-N}) and small enough that the area grows by at most 1.
WeightMultiset build_weights(const ParameterVector& v, const std::optional<Padding>& padding = std::nullopt);

/// Capacity brackets for vectors with irrational weights: weights rounded
/// down with multiplicities floored, and rounded up with multiplicities
/// ceiled. Capacities are monotone in both, so c_k(lower) <= c_k(X) <= c_k(upper).
struct WeightBounds {
  WeightMultiset lower;
  WeightMultiset upper;
};
WeightBounds build_weight_bounds(const ParameterVector& v, long precision_bits = kDefaultPrecisionBits);

/// realize(build_weights(v)); limited by the explicit-realization size.
MomentProfile build_domain(const ParameterVector& v, const Integer& realize_limit = kDefaultRealizeLimit);

/// y_1 = sum x, y_{i+1} = 2 y_i + x_{m+1-i}. Inputs must be positive.
std::vector<Rational> map_linear(const std::vector<Rational>& x);
/// Exact inverse; throws InvalidDomain when the point is outside the image
/// of the positive cone.
std::vector<Rational> map_linear_inverse(const std::vector<Rational>& y);

/// x in R^n -> (3 + max(x_i, 0), 3 + max(-x_i, 0))_i in R^{2n}.
std::vector<Rational> fold(const std::vector<Rational>& x);

enum class SnapMode {
  /// Each e^{y_j} rounded to the nearest perfect square, so every weight is
  /// rational and every multiplicity integral.
  Exact,
  /// Keep e^{y_j} as a high-precision dyadic rational.
  Approx,
};

struct ChartPoint {
  std::vector<Rational> x;
  std::vector<Rational> folded;
  std::vector<Rational> y;
  ParameterVector B;
  /// |ln B_j - y_j| per coordinate.
  std::vector<double> snap_error;
};

ChartPoint chart_embed(const std::vector<Rational>& x, SnapMode mode = SnapMode::Exact,
                       long precision_bits = kDefaultPrecisionBits);

/// max_i |ln(x_i / y_i)| as an enclosing interval at the given precision.
struct MetricValue {
  BigFloat lower;
  BigFloat upper;
};
MetricValue q_metric(const std::vector<Rational>& x, const std::vector<Rational>& y,
                     long precision_bits = kDefaultPrecisionBits);
MetricValue q_metric(const std::vector<BigFloat>& x, const std::vector<BigFloat>& y,
                     long precision_bits = kDefaultPrecisionBits);

/// e^{y_j} coordinatewise, rounded to nearest at the given precision.
std::vector<BigFloat> exponent_stage(const std::vector<Rational>& y, long precision_bits = kDefaultPrecisionBits);

}  // namespace symcap
