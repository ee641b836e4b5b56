#include "symcap/quasiflat.hpp"

#include <cmath>
#include <sstream>

namespace symcap {

namespace {

std::string index_name(std::size_t k) { return "B_" + std::to_string(k); }

// |ln r| enclosed at the given precision.
std::pair<BigFloat, BigFloat> abs_ln_bounds(const Rational& r, long precision_bits) {
  BigFloat down = ln_of(r, precision_bits, MPFR_RNDD);
  BigFloat up = ln_of(r, precision_bits, MPFR_RNDU);
  if (r >= 1) return {down, up};
  mpfr_neg(down.get(), down.get(), MPFR_RNDN);
  mpfr_neg(up.get(), up.get(), MPFR_RNDN);
  return {up, down};
}

double abs_log_gap(const Integer& m, const Rational& y, long precision_bits) {
  // |2 ln m - y|
  BigFloat lnm = ln_of(Rational(m), precision_bits + 32);
  BigFloat yy(y, precision_bits + 32);
  BigFloat gap(precision_bits + 32);
  mpfr_mul_ui(gap.get(), lnm.get(), 2, MPFR_RNDN);
  mpfr_sub(gap.get(), gap.get(), yy.get(), MPFR_RNDN);
  mpfr_abs(gap.get(), gap.get(), MPFR_RNDN);
  return gap.to_double();
}

}  // namespace

Admissibility validate_parameters(const ParameterVector& v, const Rational& threshold) {
  Admissibility a;
  if (v.B.empty()) {
    a.positive = false;
    a.failures.push_back("parameter vector is empty");
    return a;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.B[i] <= 0) {
      a.positive = false;
      a.failures.push_back(index_name(i + 1) + " = " + to_string(v.B[i]) + " is not positive");
    }
  }
  if (!a.positive) {
    a.above_threshold = a.growth = a.integral = a.representable = false;
    return a;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t k = i + 1;
    const Rational& B = v.B[i];
    if (B < threshold) {
      a.above_threshold = false;
      a.failures.push_back(index_name(k) + " = " + to_string(B) + " is below the threshold " + to_string(threshold));
    }
    if (k < v.size() && B * B > v.B[i + 1]) {
      a.growth = false;
      a.failures.push_back(index_name(k) + "^2 > " + index_name(k + 1));
    }
    if (!is_integer(power(B, static_cast<long>(k + 1)))) {
      a.integral = false;
      a.failures.push_back(index_name(k) + "^" + std::to_string(k + 1) + " is not an integer");
    }
    if (k % 2 == 1 && !exact_sqrt(B)) {
      a.representable = false;
      a.failures.push_back(index_name(k) + "^(-" + std::to_string(k) + "/2) is irrational");
    }
  }
  return a;
}

ParameterVector parse_parameters(const std::string& comma_separated) {
  ParameterVector v;
  std::stringstream in(comma_separated);
  std::string item;
  while (std::getline(in, item, ',')) v.B.push_back(parse_rational(item));
  if (v.B.empty()) throw FormatError("empty parameter list");
  return v;
}

std::string to_string(const ParameterVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v.B[i]);
  return out;
}

Rational weight_size(const Rational& B, std::size_t index) {
  if (B <= 0) throw InvalidDomain("parameter must be positive");
  if (index % 2 == 0) return power(B, -static_cast<long>(index / 2));
  auto root = exact_sqrt(B);
  if (!root)
    throw RepresentabilityError("weight a_" + std::to_string(index) + " = " + index_name(index) + "^(-" +
                                std::to_string(index) + "/2) is irrational for " + index_name(index) + " = " +
                                to_string(B) + "; use approximate mode");
  return power(*root, -static_cast<long>(index));
}

WeightMultiset build_weights(const ParameterVector& v, const std::optional<Padding>& padding) {
  if (v.B.empty()) throw InvalidDomain("parameter vector is empty");
  std::vector<WeightEntry> entries;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t k = i + 1;
    Rational a = weight_size(v.B[i], k);
    Rational copies = power(v.B[i], static_cast<long>(k + 1));
    if (!is_integer(copies))
      throw RepresentabilityError("multiplicity " + index_name(k) + "^" + std::to_string(k + 1) + " = " +
                                  to_string(copies) + " is not an integer");
    entries.push_back({a, copies.get_num()});
  }
  if (padding) {
    if (padding->count < 1 || padding->bound <= 0) throw InvalidDomain("padding needs count >= 1 and bound > 0");
    Rational size = std::min<Rational>(padding->bound, power(v.B.back(), -static_cast<long>(v.size())));
    // count * size^2 / 2 <= 1
    Integer half = (padding->count + 1) / 2;
    Rational cap = make_rational(1, isqrt(half) + 1);
    if (size > cap) size = cap;
    entries.push_back({size, padding->count});
  }
  return WeightMultiset(std::move(entries));
}

WeightBounds build_weight_bounds(const ParameterVector& v, long precision_bits) {
  if (v.B.empty()) throw InvalidDomain("parameter vector is empty");
  std::vector<WeightEntry> lower, upper;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t k = i + 1;
    const Rational& B = v.B[i];
    if (B <= 0) throw InvalidDomain(index_name(k) + " must be positive");
    Rational copies = power(B, static_cast<long>(k + 1));
    Integer floor_copies = floor_of(copies);
    Integer ceil_copies = ceil_of(copies);
    Rational a_lo, a_hi;
    if (k % 2 == 0 || exact_sqrt(B)) {
      a_lo = a_hi = weight_size(B, k);
    } else {
      BigFloat b_down(B, precision_bits, MPFR_RNDD);
      BigFloat b_up(B, precision_bits, MPFR_RNDU);
      BigFloat e(precision_bits);
      mpfr_set_si(e.get(), -static_cast<long>(k), MPFR_RNDN);
      mpfr_div_2ui(e.get(), e.get(), 1, MPFR_RNDN);
      BigFloat lo(precision_bits), hi(precision_bits);
      // The power is decreasing in the base for a negative exponent.
      mpfr_pow(lo.get(), b_up.get(), e.get(), MPFR_RNDD);
      mpfr_pow(hi.get(), b_down.get(), e.get(), MPFR_RNDU);
      a_lo = lo.to_rational();
      a_hi = hi.to_rational();
    }
    if (floor_copies >= 1) lower.push_back({a_lo, floor_copies});
    upper.push_back({a_hi, ceil_copies});
  }
  return {WeightMultiset(std::move(lower)), WeightMultiset(std::move(upper))};
}

MomentProfile build_domain(const ParameterVector& v, const Integer& realize_limit) {
  return realize(build_weights(v), realize_limit);
}

std::vector<Rational> map_linear(const std::vector<Rational>& x) {
  if (x.empty()) throw DimensionMismatch("map_linear needs at least one coordinate");
  for (const auto& c : x)
    if (c <= 0) throw InvalidDomain("map_linear needs positive coordinates, got " + to_string(c));
  const std::size_t m = x.size();
  std::vector<Rational> y(m);
  for (const auto& c : x) y[0] += c;
  for (std::size_t i = 1; i < m; ++i) y[i] = 2 * y[i - 1] + x[m - i];
  return y;
}

std::vector<Rational> map_linear_inverse(const std::vector<Rational>& y) {
  if (y.empty()) throw DimensionMismatch("map_linear_inverse needs at least one coordinate");
  const std::size_t m = y.size();
  std::vector<Rational> x(m);
  Rational rest = 0;
  for (std::size_t i = 1; i < m; ++i) {
    x[m - i] = y[i] - 2 * y[i - 1];
    rest += x[m - i];
  }
  x[0] = y[0] - rest;
  for (std::size_t i = 0; i < m; ++i)
    if (x[i] <= 0)
      throw InvalidDomain("point is outside the image of the positive cone (coordinate " + std::to_string(i + 1) +
                          " would be " + to_string(x[i]) + ")");
  return x;
}

std::vector<Rational> fold(const std::vector<Rational>& x) {
  std::vector<Rational> out;
  out.reserve(2 * x.size());
  for (const auto& c : x) {
    out.push_back(3 + (c > 0 ? c : Rational(0)));
    out.push_back(3 + (c < 0 ? Rational(-c) : Rational(0)));
  }
  return out;
}

std::vector<BigFloat> exponent_stage(const std::vector<Rational>& y, long precision_bits) {
  std::vector<BigFloat> out;
  out.reserve(y.size());
  for (const auto& c : y) out.push_back(exp_of(c, precision_bits));
  return out;
}

ChartPoint chart_embed(const std::vector<Rational>& x, SnapMode mode, long precision_bits) {
  ChartPoint p;
  p.x = x;
  p.folded = fold(x);
  p.y = map_linear(p.folded);
  for (const auto& y : p.y) {
    if (mode == SnapMode::Approx) {
      Rational B = exp_of(y, precision_bits).to_rational();
      p.B.B.push_back(B);
      BigFloat lnB = ln_of(B, precision_bits + 32);
      BigFloat yy(y, precision_bits + 32);
      mpfr_sub(lnB.get(), lnB.get(), yy.get(), MPFR_RNDN);
      p.snap_error.push_back(std::abs(lnB.to_double()));
      continue;
    }
    BigFloat half = exp_of(y / 2, precision_bits);
    Integer m;
    mpfr_get_z(m.get_mpz_t(), half.get(), MPFR_RNDD);
    // Of the two neighbouring integers, keep the one closer in log scale.
    Integer best = m < 1 ? Integer(1) : m;
    double best_gap = abs_log_gap(best, y, precision_bits);
    double other_gap = abs_log_gap(best + 1, y, precision_bits);
    if (other_gap < best_gap) {
      best += 1;
      best_gap = other_gap;
    }
    p.B.B.push_back(Rational(best * best));
    p.snap_error.push_back(best_gap);
  }
  return p;
}

MetricValue q_metric(const std::vector<Rational>& x, const std::vector<Rational>& y, long precision_bits) {
  if (x.size() != y.size())
    throw DimensionMismatch("q_metric of points with " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()) + " coordinates");
  MetricValue out{BigFloat(precision_bits), BigFloat(precision_bits)};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw InvalidDomain("q_metric needs positive coordinates");
    auto [lo, hi] = abs_ln_bounds(x[i] / y[i], precision_bits);
    if (out.lower < lo) out.lower = lo;
    if (out.upper < hi) out.upper = hi;
  }
  return out;
}

MetricValue q_metric(const std::vector<BigFloat>& x, const std::vector<BigFloat>& y, long precision_bits) {
  std::vector<Rational> xr, yr;
  for (const auto& c : x) xr.push_back(c.to_rational());
  for (const auto& c : y) yr.push_back(c.to_rational());
  return q_metric(xr, yr, precision_bits);
}

}  // namespace symcap
