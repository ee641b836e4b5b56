#include "symcap/distance_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "parallel.hpp"

namespace symcap {

namespace {

double ln_rounded(const Rational& x, mpfr_rnd_t rounding) {
  BigFloat v = ln_of(x, 80, rounding);
  return mpfr_get_d(v.get(), rounding);
}

double ln_down(const Rational& x) { return ln_rounded(x, MPFR_RNDD); }
double ln_up(const Rational& x) { return ln_rounded(x, MPFR_RNDU); }

MomentProfile to_profile(const Domain& d, const Integer& realize_limit) {
  if (const auto* e = std::get_if<Ellipsoid>(&d)) return e->triangle();
  if (const auto* p = std::get_if<MomentProfile>(&d)) return *p;
  return realize(std::get<WeightMultiset>(d), realize_limit);
}

}  // namespace

CapacitySource CapacitySource::of(Domain d) { return {d, d, true}; }

CapacitySource CapacitySource::bracketed(const WeightBounds& b) { return {Domain{b.lower}, Domain{b.upper}, false}; }

CapacitySource CapacitySource::from_parameters(const ParameterVector& v, long precision_bits) {
  Admissibility a = validate_parameters(v, 0);
  if (a.positive && a.integral && a.representable) return of(Domain{build_weights(v)});
  return bracketed(build_weight_bounds(v, precision_bits));
}

CapacityInterval capacity_interval(const CapacitySource& s, const Integer& k, const CapacityLimits& limits) {
  CapacityResult lo = domain_capacity(s.lower, k, limits);
  if (s.exact) return {lo.best, lo.upper, lo.exact};
  CapacityResult hi = domain_capacity(s.upper, k, limits);
  return {lo.best, hi.upper, false};
}

std::vector<Integer> sample_indices(const KPolicy& policy, const Integer& K) {
  Integer top = K < policy.cap ? K : policy.cap;
  std::vector<Integer> out;
  if (top < 1) return out;
  if (policy.dense) {
    if (top > 10'000'000) throw ResourceLimit("dense k sweep up to " + to_string(top) + " is too large");
    for (Integer k = 1; k <= top; ++k) out.push_back(k);
  } else {
    if (policy.per_decade == 0) throw std::invalid_argument("per_decade must be positive");
    // k_j = round(10^(j / per_decade)), evaluated in high precision so the
    // grid is identical on every platform.
    BigFloat ten(Rational(10), 128);
    for (unsigned long j = 0;; ++j) {
      BigFloat e(make_rational(Integer(static_cast<unsigned long>(j)), Integer(policy.per_decade)), 128);
      BigFloat value(128);
      mpfr_pow(value.get(), ten.get(), e.get(), MPFR_RNDN);
      Integer k;
      mpfr_get_z(k.get_mpz_t(), value.get(), MPFR_RNDN);
      if (k > top) break;
      if (out.empty() || out.back() != k) out.push_back(k);
    }
    if (out.back() != top) out.push_back(top);
  }
  for (const auto& k : policy.extra)
    if (k >= 1 && k <= top) out.push_back(k);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CapacityBound capacity_lower_bound(const std::vector<Integer>& ks, const std::vector<CapacityInterval>& u,
                                   const std::vector<CapacityInterval>& v) {
  if (ks.size() != u.size() || ks.size() != v.size()) throw DimensionMismatch("capacity tables differ in length");
  CapacityBound out;
  out.samples = ks.size();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double best = 0;
    if (u[i].lower > 0 && v[i].upper > 0) best = std::max(best, ln_down(u[i].lower / v[i].upper));
    if (v[i].lower > 0 && u[i].upper > 0) best = std::max(best, ln_down(v[i].lower / u[i].upper));
    if (best > out.value || out.witness_k == 0) {
      out.value = std::max(out.value, best);
      out.witness_k = ks[i];
      out.at_witness_u = u[i];
      out.at_witness_v = v[i];
    }
  }
  return out;
}

CapacityBound capacity_lower_bound(const CapacitySource& u, const CapacitySource& v, const Integer& K,
                                   const KPolicy& policy, const CapacityLimits& limits) {
  std::vector<Integer> ks = sample_indices(policy, K);
  std::vector<CapacityInterval> cu, cv;
  for (const auto& k : ks) {
    cu.push_back(capacity_interval(u, k, limits));
    cv.push_back(capacity_interval(v, k, limits));
  }
  return capacity_lower_bound(ks, cu, cv);
}

double volume_lower_bound(const CapacitySource& u, const CapacitySource& v) {
  Rational ul = domain_area(u.lower), uu = domain_area(u.upper);
  Rational vl = domain_area(v.lower), vu = domain_area(v.upper);
  if (ul <= 0 || vl <= 0) throw InvalidDomain("volume bound of a domain with zero area");
  double best = std::max({0.0, ln_down(ul / vu), ln_down(vl / uu)});
  return best / 2;
}

double volume_lower_bound(const Domain& u, const Domain& v) {
  return volume_lower_bound(CapacitySource::of(u), CapacitySource::of(v));
}

InclusionBound inclusion_distance(const Domain& u, const Domain& v, const Integer& realize_limit) {
  MomentProfile pu = to_profile(u, realize_limit);
  MomentProfile pv = to_profile(v, realize_limit);
  InclusionBound out;
  out.scale_uv = inclusion_scale(pu, pv);
  out.scale_vu = inclusion_scale(pv, pu);
  out.value = ln_up(std::max(out.scale_uv, out.scale_vu));
  return out;
}

double lemma_upper_bound(const ParameterVector& v, const ParameterVector& w, long precision_bits) {
  if (v.size() != w.size())
    throw DimensionMismatch("parameter vectors of length " + std::to_string(v.size()) + " and " +
                            std::to_string(w.size()));
  MetricValue m = q_metric(v.B, w.B, precision_bits);
  BigFloat out(precision_bits);
  Rational factor = make_rational(Integer(static_cast<unsigned long>(v.size())), 2) + 1;
  mpfr_mul_q(out.get(), m.upper.get(), factor.get_mpq_t(), MPFR_RNDU);
  mpfr_add_ui(out.get(), out.get(), 1, MPFR_RNDU);
  return mpfr_get_d(out.get(), MPFR_RNDU);
}

double DistanceReport::lower() const { return std::max(capacity.value, volume); }

double DistanceReport::upper() const {
  double best = std::numeric_limits<double>::infinity();
  if (inclusion) best = std::min(best, inclusion->value);
  if (lemma) best = std::min(best, *lemma);
  return best;
}

void finalize(DistanceReport& r) { r.consistent = r.lower() <= r.upper(); }

SandwichFit fit_sandwich(const std::vector<SandwichSample>& samples) {
  auto needed_B = [&](double A) {
    double B = 0;
    for (const auto& s : samples) B = std::max({B, s.t / A - s.lower, s.upper - A * s.t});
    return B;
  };
  auto cost = [&](double A) { return A + needed_B(A); };
  // A + B(A) is convex in A > 0; golden-section search on [1, 1000].
  const double phi = (std::sqrt(5.0) - 1) / 2;
  double lo = 1, hi = 1000;
  double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
  double fa = cost(a), fb = cost(b);
  for (int it = 0; it < 200; ++it) {
    if (fa <= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - phi * (hi - lo);
      fa = cost(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + phi * (hi - lo);
      fb = cost(b);
    }
  }
  double A = (lo + hi) / 2;
  if (cost(1) <= cost(A)) A = 1;
  return {A, needed_B(A)};
}

Integer witness_index(const ParameterVector& v, const ParameterVector& w) {
  if (v.size() != w.size()) throw DimensionMismatch("parameter vectors differ in length");
  std::size_t M = 0;
  double best = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double gap = std::abs(ln(v.B[i] / w.B[i]));
    if (gap > best) {
      best = gap;
      M = i;
    }
  }
  const Rational& larger = std::max(v.B[M], w.B[M]);
  return floor_of(power(larger, static_cast<long>(M + 2)));
}

QuasiFlatCertificate certificate(const std::vector<std::pair<ParameterVector, ParameterVector>>& pairs,
                                 const CertificateOptions& options) {
  QuasiFlatCertificate cert;
  cert.rows.resize(pairs.size());

  // Distinct parameter vectors share one capacity table.
  std::map<std::string, std::size_t> index;
  std::vector<ParameterVector> vectors;
  auto intern = [&](const ParameterVector& p) {
    auto [it, inserted] = index.emplace(to_string(p), vectors.size());
    if (inserted) vectors.push_back(p);
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> members;
  KPolicy policy = options.policy;
  Integer global_K = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& [v, w] = pairs[p];
    CertificateRow& row = cert.rows[p];
    row.id = p;
    row.v = v;
    row.w = w;
    members.emplace_back(intern(v), intern(w));
    if (v.size() != w.size()) {
      row.skipped = true;
      row.reason = "parameter vectors differ in length";
      continue;
    }
    Integer K = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      K = std::max(K, floor_of(power(v.B[i], static_cast<long>(i + 2))));
      K = std::max(K, floor_of(power(w.B[i], static_cast<long>(i + 2))));
    }
    if (K > policy.cap) {
      row.reason = "K capped at " + to_string(policy.cap) + " (requested " + to_string(K) + ")";
      K = policy.cap;
    }
    row.K = K;
    Integer witness = witness_index(v, w);
    if (witness <= K) policy.extra.push_back(witness);
    global_K = std::max(global_K, K);
  }

  std::vector<Integer> ks = sample_indices(policy, global_K);
  std::vector<CapacitySource> sources;
  for (const auto& v : vectors) sources.push_back(CapacitySource::from_parameters(v, options.precision_bits));
  std::vector<std::vector<CapacityInterval>> table(vectors.size(), std::vector<CapacityInterval>(ks.size()));
  std::vector<std::string> failure(vectors.size());
  std::vector<std::atomic<bool>> failed(vectors.size());
  detail::parallel_for(vectors.size() * ks.size(), options.threads, [&](std::size_t task) {
    std::size_t s = task / ks.size();
    std::size_t j = task % ks.size();
    if (failed[s]) return;
    try {
      table[s][j] = capacity_interval(sources[s], ks[j], options.limits);
    } catch (const ResourceLimit& e) {
      if (!failed[s].exchange(true)) failure[s] = e.what();
    }
  });

  std::vector<SandwichSample> samples;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    CertificateRow& row = cert.rows[p];
    if (row.skipped) continue;
    auto [a, b] = members[p];
    if (failed[a] || failed[b]) {
      row.skipped = true;
      row.reason = failed[a] ? failure[a] : failure[b];
      continue;
    }
    std::size_t n = static_cast<std::size_t>(std::upper_bound(ks.begin(), ks.end(), row.K) - ks.begin());
    std::vector<Integer> pk(ks.begin(), ks.begin() + static_cast<long>(n));
    std::vector<CapacityInterval> cu(table[a].begin(), table[a].begin() + static_cast<long>(n));
    std::vector<CapacityInterval> cv(table[b].begin(), table[b].begin() + static_cast<long>(n));
    CapacityBound cb = capacity_lower_bound(pk, cu, cv);
    row.lower = cb.value;
    row.witness_k = cb.witness_k;
    row.volume = volume_lower_bound(sources[a], sources[b]);
    row.metric = q_metric(row.v.B, row.w.B, options.precision_bits).upper.to_double();
    row.upper = lemma_upper_bound(row.v, row.w, options.precision_bits);
    if (row.lower > row.upper) cert.consistent = false;
    samples.push_back({row.metric, row.lower, row.upper});
  }
  cert.fit = fit_sandwich(samples);
  return cert;
}

}  // namespace symcap
