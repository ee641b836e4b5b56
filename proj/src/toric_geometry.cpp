#include "symcap/toric_geometry.hpp"

#include <algorithm>
#include <utility>

namespace symcap {

namespace {

Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

Rational slope(const Point& a, const Point& b) { return (b.y - a.y) / (b.x - a.x); }

std::string describe(const Point& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

}  // namespace

ScaleFactor::ScaleFactor(Rational t) : t_(std::move(t)) {
  if (t_ <= 0) throw InvalidDomain("scale factor must be positive, got " + to_string(t_));
}

Ellipsoid::Ellipsoid(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_ <= 0 || b_ <= 0)
    throw InvalidDomain("ellipsoid axes must be positive, got " + to_string(a_) + ", " + to_string(b_));
  if (b_ < a_) std::swap(a_, b_);
}

MomentProfile Ellipsoid::triangle() const { return MomentProfile::triangle(a_, b_); }

MomentProfile::MomentProfile(std::vector<Point> vertices) {
  for (const Point& p : vertices)
    if (p.x < 0 || p.y < 0) throw InvalidDomain("profile vertex outside the first quadrant: " + describe(p));

  // Several leading points on the y-axis (or trailing on the x-axis) describe
  // the same region as the innermost one.
  std::size_t first = 0;
  while (first + 1 < vertices.size() && vertices[first + 1].x == 0) ++first;
  std::size_t last = vertices.size();
  while (last >= 2 && vertices[last - 2].y == 0) --last;
  if (last <= first + 1) throw InvalidDomain("profile needs at least two distinct vertices");
  std::vector<Point> pts(vertices.begin() + static_cast<long>(first), vertices.begin() + static_cast<long>(last));

  if (pts.front().x != 0) throw InvalidDomain("profile must start on the y-axis, got " + describe(pts.front()));
  if (pts.back().y != 0) throw InvalidDomain("profile must end on the x-axis, got " + describe(pts.back()));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i].x < pts[i + 1].x) || !(pts[i].y > pts[i + 1].y))
      throw InvalidDomain("profile must have x strictly increasing and y strictly decreasing near " +
                          describe(pts[i + 1]));
  }

  std::vector<Point> kept;
  kept.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && i + 1 < pts.size()) {
      Rational s_in = slope(kept.back(), pts[i]);
      Rational s_out = slope(pts[i], pts[i + 1]);
      if (s_in == s_out) continue;
      if (s_in > s_out) throw InvalidDomain("profile boundary is not convex at " + describe(pts[i]));
    }
    kept.push_back(std::move(pts[i]));
  }
  vertices_ = std::move(kept);
}

MomentProfile MomentProfile::triangle(const Rational& width, const Rational& height) {
  return MomentProfile({Point{0, height}, Point{width, 0}});
}

Rational MomentProfile::radial(const Point& direction) const {
  if (direction.x < 0 || direction.y < 0 || (direction.x == 0 && direction.y == 0))
    throw InvalidDomain("radial direction must be a nonzero first-quadrant vector");
  // Vertices run from the y-axis to the x-axis, i.e. by decreasing angle.
  // Find the segment whose angular span contains the direction.
  std::size_t lo = 0;
  std::size_t hi = vertices_.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (cross(direction, vertices_[mid]) >= 0)
      lo = mid;
    else
      hi = mid;
  }
  const Point& v0 = vertices_[lo];
  const Point& v1 = vertices_[hi];
  Point edge{v1.x - v0.x, v1.y - v0.y};
  return cross(edge, v0) / cross(edge, direction);
}

Rational area(const MomentProfile& profile) {
  const auto& v = profile.vertices();
  Rational twice = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) twice += (v[i + 1].x - v[i].x) * (v[i].y + v[i + 1].y);
  return twice / 2;
}

Rational area(const Ellipsoid& e) { return e.a() * e.b() / 2; }

MomentProfile scale(const MomentProfile& profile, const ScaleFactor& t) {
  std::vector<Point> pts;
  pts.reserve(profile.vertices().size());
  for (const Point& p : profile.vertices()) pts.push_back({p.x * t.value(), p.y * t.value()});
  return MomentProfile(std::move(pts));
}

Ellipsoid scale(const Ellipsoid& e, const ScaleFactor& t) { return Ellipsoid(e.a() * t.value(), e.b() * t.value()); }

Rational inclusion_scale(const MomentProfile& p, const MomentProfile& q) {
  if (area(p) == 0 || area(q) == 0) throw InvalidDomain("inclusion scale of a degenerate region");
  Rational best = 0;
  auto consider = [&](const Point& dir) {
    Rational ratio = p.radial(dir) / q.radial(dir);
    if (ratio > best) best = ratio;
  };
  for (const Point& v : p.vertices()) consider(v);
  for (const Point& v : q.vertices()) consider(v);
  return best;
}

Rational inclusion_scale(const Ellipsoid& p, const Ellipsoid& q) { return inclusion_scale(p.triangle(), q.triangle()); }
Rational inclusion_scale(const Ellipsoid& p, const MomentProfile& q) { return inclusion_scale(p.triangle(), q); }
Rational inclusion_scale(const MomentProfile& p, const Ellipsoid& q) { return inclusion_scale(p, q.triangle()); }

}  // namespace symcap
