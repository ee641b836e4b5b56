#pragma once

// Moment-plane geometry of four-dimensional toric domains.
//
// A toric domain X_Omega is the preimage of a first-quadrant region Omega
// under (z1, z2) -> (pi|z1|^2, pi|z2|^2). With this normalization the
// symplectic volume of X_Omega equals the Euclidean area of Omega, and
// scaling the domain by T multiplies every moment coordinate by T.
//
// Everything here is exact rational arithmetic.

#include <vector>

#include "symcap/rational.hpp"

namespace symcap {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Moment-plane multiplier T > 0.
class ScaleFactor {
 public:
  explicit ScaleFactor(Rational t);
  const Rational& value() const { return t_; }

 private:
  Rational t_;
};

class MomentProfile;

/// E(a, b): moment image is the triangle with legs a (x-axis) and b (y-axis).
/// Normalized so that a <= b; E(a, a) is the ball B(a).
class Ellipsoid {
 public:
  Ellipsoid(Rational a, Rational b);
  static Ellipsoid ball(Rational a) { return Ellipsoid(a, a); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  bool is_ball() const { return a_ == b_; }

  /// Triangle with vertices (0, b), (a, 0).
  MomentProfile triangle() const;

  friend bool operator==(const Ellipsoid& l, const Ellipsoid& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

 private:
  Rational a_;
  Rational b_;
};

/// Boundary of a concave toric domain: the graph of a convex, strictly
/// decreasing piecewise-linear f from (0, height) to (width, 0).
///
/// Construction normalizes the vertex list (duplicate axis points collapsed,
/// collinear interior vertices dropped) and rejects anything that is not
/// the graph of such an f.
class MomentProfile {
 public:
  explicit MomentProfile(std::vector<Point> vertices);

  /// Triangle with vertices (0, height), (width, 0).
  static MomentProfile triangle(const Rational& width, const Rational& height);

  const std::vector<Point>& vertices() const { return vertices_; }
  const Rational& width() const { return vertices_.back().x; }
  const Rational& height() const { return vertices_.front().y; }

  /// The t > 0 with t * direction on the boundary curve. `direction` must be a
  /// nonzero first-quadrant vector.
  Rational radial(const Point& direction) const;

  friend bool operator==(const MomentProfile& a, const MomentProfile& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

Rational area(const MomentProfile& profile);
Rational area(const Ellipsoid& ellipsoid);

MomentProfile scale(const MomentProfile& profile, const ScaleFactor& t);
Ellipsoid scale(const Ellipsoid& ellipsoid, const ScaleFactor& t);

/// Minimal T with p contained in T * q.
///
/// Both regions are star-shaped about the origin with piecewise-linear
/// boundaries, so the supremum of rho_p / rho_q over directions is attained
/// at a vertex direction of one of the two profiles; only those are checked.
Rational inclusion_scale(const MomentProfile& p, const MomentProfile& q);
Rational inclusion_scale(const Ellipsoid& p, const Ellipsoid& q);
Rational inclusion_scale(const Ellipsoid& p, const MomentProfile& q);
Rational inclusion_scale(const MomentProfile& p, const Ellipsoid& q);

}  // namespace symcap
