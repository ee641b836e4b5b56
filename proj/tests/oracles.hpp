#pragma once

// Brute-force reference implementations used only by tests. None of these
// share code with the library engines.

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "symcap/rational.hpp"
#include "symcap/toric_geometry.hpp"
#include "symcap/weight_calculus.hpp"

namespace oracle {

using symcap::Integer;
using symcap::Rational;

// 0, 1, 1, 2, 2, 2, 3, ... : level d repeated d + 1 times.
inline std::vector<long> ball_sequence(long kmax) {
  std::vector<long> out;
  for (long d = 0; static_cast<long>(out.size()) <= kmax; ++d)
    for (long r = 0; r <= d && static_cast<long>(out.size()) <= kmax; ++r) out.push_back(d);
  return out;
}

// Sorted multiset {m a + n b} up to index kmax, by explicit enumeration.
inline std::vector<Rational> lattice_sequence(const Rational& a, const Rational& b, long kmax) {
  Rational small = std::min(a, b);
  // The first kmax + 1 values all lie below (kmax) * small.
  Rational top = small * kmax;
  std::vector<Rational> values;
  for (Rational x = 0; x <= top; x += a)
    for (Rational y = x; y <= top; y += b) values.push_back(y);
  std::sort(values.begin(), values.end());
  values.resize(static_cast<std::size_t>(kmax) + 1);
  return values;
}

inline std::vector<Rational> expand(const symcap::WeightMultiset& w) {
  std::vector<Rational> out;
  for (const auto& e : w.entries())
    for (Integer i = 0; i < e.multiplicity; ++i) out.push_back(e.weight);
  return out;
}

// max sum d_j a_j over all integer vectors with sum (d_j^2 + d_j) <= 2k,
// without assuming anything about the shape of the optimum.
inline Rational unrestricted_capacity(const std::vector<Rational>& copies, long k) {
  Rational best = 0;
  std::function<void(std::size_t, long, Rational)> go = [&](std::size_t i, long left, Rational value) {
    if (i == copies.size()) {
      best = std::max<Rational>(best, value);
      return;
    }
    for (long d = 0; d * d + d <= left; ++d) go(i + 1, left - (d * d + d), value + copies[i] * d);
  };
  go(0, 2 * k, 0);
  return best;
}

// max over k_1 + ... + k_m = k of sum c_{k_j}(B(a_j)).
inline Rational partition_capacity(const std::vector<Rational>& copies, long k) {
  std::vector<long> ball = ball_sequence(k);
  Rational best = 0;
  std::function<void(std::size_t, long, Rational)> go = [&](std::size_t i, long left, Rational value) {
    if (i + 1 == copies.size()) {
      best = std::max<Rational>(best, value + copies[i] * ball[static_cast<std::size_t>(left)]);
      return;
    }
    for (long ki = 0; ki <= left; ++ki) go(i + 1, left - ki, value + copies[i] * ball[static_cast<std::size_t>(ki)]);
  };
  if (copies.empty()) return 0;
  go(0, k, 0);
  return best;
}

// Radial function by scanning every boundary segment, in double precision.
inline double radial_scan(const symcap::MomentProfile& p, double dx, double dy) {
  const auto& v = p.vertices();
  double best = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    double x0 = symcap::to_double(v[i].x), y0 = symcap::to_double(v[i].y);
    double x1 = symcap::to_double(v[i + 1].x), y1 = symcap::to_double(v[i + 1].y);
    double ex = x1 - x0, ey = y1 - y0;
    double den = ex * dy - ey * dx;
    if (den == 0) continue;
    double t = (ex * y0 - ey * x0) / den;
    // Parameter along the segment.
    double s = std::abs(ex) > std::abs(ey) ? (t * dx - x0) / ex : (t * dy - y0) / ey;
    if (s >= -1e-12 && s <= 1 + 1e-12) best = std::max(best, t);
  }
  return best;
}

// Random concave profile: a convex decreasing chain with rational vertices.
inline symcap::MomentProfile random_profile(std::mt19937_64& rng, int max_segments = 5) {
  std::uniform_int_distribution<int> count(1, max_segments);
  std::uniform_int_distribution<int> num(1, 9);
  int n = count(rng);
  // Slopes -s_1 < ... < -s_n (steepest first) and widths w_j.
  std::vector<Rational> slopes;
  while (static_cast<int>(slopes.size()) < n) {
    Rational s(num(rng), num(rng));
    s.canonicalize();
    if (std::find(slopes.begin(), slopes.end(), s) == slopes.end()) slopes.push_back(s);
  }
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  std::vector<Rational> widths;
  Rational drop = 0;
  for (int j = 0; j < n; ++j) {
    Rational w(num(rng), num(rng));
    w.canonicalize();
    widths.push_back(w);
    drop += w * slopes[static_cast<std::size_t>(j)];
  }
  std::vector<symcap::Point> pts;
  Rational x = 0, y = drop;
  pts.push_back({x, y});
  for (int j = 0; j < n; ++j) {
    x += widths[static_cast<std::size_t>(j)];
    y -= widths[static_cast<std::size_t>(j)] * slopes[static_cast<std::size_t>(j)];
    pts.push_back({x, y});
  }
  return symcap::MomentProfile(std::move(pts));
}

inline Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline symcap::WeightMultiset random_multiset(std::mt19937_64& rng, int max_classes, int max_mult, int max_num = 12,
                                              int max_den = 8) {
  std::uniform_int_distribution<int> classes(1, max_classes), mult(1, max_mult);
  std::vector<symcap::WeightEntry> entries;
  int m = classes(rng);
  for (int i = 0; i < m; ++i) entries.push_back({random_rational(rng, max_num, max_den), Integer(mult(rng))});
  return symcap::WeightMultiset(std::move(entries));
}

}  // namespace oracle
