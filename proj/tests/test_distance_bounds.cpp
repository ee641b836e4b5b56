#include <cmath>

#include "doctest.h"
#include "symcap/distance_bounds.hpp"

using namespace symcap;

namespace {
ParameterVector pv(std::vector<Rational> b) { return ParameterVector{std::move(b)}; }
CapacitySource exact(Domain d) { return CapacitySource::of(std::move(d)); }

Domain notsame(const Rational& eps) {
  WeightMultiset w = WeightMultiset({{1, Integer(1)}}).merged_with(ellipsoid_weights(Ellipsoid(eps, 1 / eps)));
  return realize(w);
}
}  // namespace

TEST_CASE("capacity lower bound examples") {
  auto b = capacity_lower_bound(exact(Ellipsoid::ball(1)), exact(Ellipsoid::ball(2)), 10);
  CHECK(b.value == doctest::Approx(std::log(2.0)));
  CHECK(b.witness_k >= 1);
  auto same = capacity_lower_bound(exact(Ellipsoid(1, 2)), exact(Ellipsoid(1, 2)), 50);
  CHECK(same.value == 0);
  auto flat = capacity_lower_bound(exact(build_weights(pv({4}))), exact(build_weights(pv({16}))), 4 * 256);
  CHECK(flat.value == doctest::Approx(0.5 * std::log(4.0)).epsilon(0.3 / (0.5 * std::log(4.0))));
  MESSAGE("v=(4), w=(16): bound " << flat.value << " at k = " << to_string(flat.witness_k));
}

TEST_CASE("capacity lower bound grows with K") {
  CapacitySource u = exact(Ellipsoid(1, 3));
  CapacitySource v = exact(Ellipsoid(2, 2));
  double last = 0;
  for (long K : {1, 5, 20, 100, 400}) {
    double now = capacity_lower_bound(u, v, K).value;
    CHECK(now >= last);
    last = now;
  }
  KPolicy dense;
  dense.dense = true;
  CHECK(capacity_lower_bound(u, v, 400, dense).value >= last);
}

TEST_CASE("sample indices") {
  KPolicy p;
  auto ks = sample_indices(p, 1000);
  CHECK(ks.front() == 1);
  CHECK(ks.back() == 1000);
  CHECK(std::is_sorted(ks.begin(), ks.end()));
  p.extra = {Integer(777), Integer(5000)};
  auto with = sample_indices(p, 1000);
  CHECK(std::find(with.begin(), with.end(), Integer(777)) != with.end());
  CHECK(with.back() == 1000);
  p.cap = 100;
  CHECK(sample_indices(p, 1000).back() == 100);
}

TEST_CASE("volume lower bound") {
  CHECK(volume_lower_bound(Domain{Ellipsoid::ball(1)}, Domain{Ellipsoid::ball(2)}) == doctest::Approx(std::log(2.0)));
  CHECK(volume_lower_bound(Domain{build_weights(pv({64}))}, Domain{build_weights(pv({64}))}) == 0);
  CHECK(volume_lower_bound(Domain{build_weights(pv({64}))}, Domain{build_weights(pv({256}))}) ==
        doctest::Approx(std::log(2.0)));
}

TEST_CASE("inclusion distance") {
  for (int inv : {4, 8, 16}) {
    Rational eps = make_rational(1, inv);
    InclusionBound d = inclusion_distance(Domain{Ellipsoid::ball(1)}, notsame(eps));
    CHECK(std::max(d.scale_uv, d.scale_vu) == 1 + 1 / eps);
    CHECK(d.value == doctest::Approx(std::log(1.0 + inv)));
  }
  MomentProfile p({{0, 3}, {1, 1}, {2, 0}});
  InclusionBound t = inclusion_distance(Domain{p}, Domain{scale(p, ScaleFactor(3))});
  CHECK(t.scale_vu == 3);
  CHECK(t.value == doctest::Approx(std::log(3.0)));
  CHECK(t.value >= std::log(3.0));
}

TEST_CASE("inclusion distance dominates the capacity bound") {
  std::vector<Domain> ds{Domain{Ellipsoid(1, 2)}, Domain{Ellipsoid::ball(1)}, Domain{notsame(make_rational(1, 4))},
                         Domain{MomentProfile({{0, 3}, {1, 1}, {2, 0}})}};
  for (const auto& a : ds)
    for (const auto& b : ds) {
      double incl = inclusion_distance(a, b).value;
      CHECK(capacity_lower_bound(exact(a), exact(b), 300).value <= incl);
      CHECK(volume_lower_bound(a, b) <= incl);
    }
}

TEST_CASE("scaling upper bound for parameter vectors") {
  CHECK(lemma_upper_bound(pv({64, 4096}), pv({64, 8192})) == doctest::Approx(2 * std::log(2.0) + 1));
  CHECK(lemma_upper_bound(pv({64}), pv({64})) == 1);
  CHECK(lemma_upper_bound(pv({64}), pv({256})) == doctest::Approx(1.5 * std::log(4.0) + 1));
  CHECK_THROWS_AS(lemma_upper_bound(pv({64}), pv({64, 4096})), DimensionMismatch);
}

TEST_CASE("distance report consistency") {
  DistanceReport r;
  r.capacity = capacity_lower_bound(exact(build_weights(pv({4}))), exact(build_weights(pv({16}))), 1024);
  r.volume = volume_lower_bound(Domain{build_weights(pv({4}))}, Domain{build_weights(pv({16}))});
  r.lemma = lemma_upper_bound(pv({4}), pv({16}));
  r.inclusion = inclusion_distance(Domain{build_weights(pv({4}))}, Domain{build_weights(pv({16}))});
  finalize(r);
  CHECK(r.consistent);
  CHECK(r.lower() <= r.upper());
}

TEST_CASE("sandwich fit") {
  std::vector<SandwichSample> s{{1, 0.5, 2}, {2, 1, 4}, {4, 2, 8}};
  SandwichFit f = fit_sandwich(s);
  for (const auto& x : s) {
    CHECK(x.t / f.A - f.B <= x.lower + 1e-9);
    CHECK(x.upper <= f.A * x.t + f.B + 1e-9);
  }
  CHECK(f.A >= 1);
  CHECK(f.B >= 0);
  SandwichFit id = fit_sandwich({{1, 1, 1}, {3, 3, 3}});
  CHECK(id.A == doctest::Approx(1.0));
  CHECK(id.B == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("certificate on small vectors") {
  std::vector<std::pair<ParameterVector, ParameterVector>> pairs{
      {pv({4}), pv({4})}, {pv({4}), pv({16})}, {pv({16}), pv({64})}, {pv({64}), pv({4})}};
  QuasiFlatCertificate c = certificate(pairs);
  REQUIRE(c.rows.size() == 4);
  CHECK(c.consistent);
  CHECK(c.rows[0].lower == 0);
  CHECK(c.rows[0].upper == 1);
  for (const auto& r : c.rows) {
    CHECK_FALSE(r.skipped);
    CHECK(r.lower <= r.upper);
  }
  // Lower bound for (4) vs (16) is about (1/2) ln 4 >= (1/4) ||v,w|| - 2.
  CHECK(c.rows[1].lower >= c.rows[1].metric / 4 - 2);
  CHECK(witness_index(pv({4}), pv({16})) == 256);
}
