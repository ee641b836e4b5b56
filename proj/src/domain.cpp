#include "symcap/domain.hpp"

#include <type_traits>

namespace symcap {

Rational domain_area(const Domain& d) {
  return std::visit(
      [](const auto& x) -> Rational {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, WeightMultiset>)
          return x.area();
        else
          return area(x);
      },
      d);
}

WeightMultiset domain_weights(const Domain& d) {
  if (const auto* e = std::get_if<Ellipsoid>(&d)) return ellipsoid_weights(*e);
  if (const auto* p = std::get_if<MomentProfile>(&d)) return weight_expansion(*p).weights;
  return std::get<WeightMultiset>(d);
}

Domain scale(const Domain& d, const ScaleFactor& t) {
  return std::visit(
      [&](const auto& x) -> Domain {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, WeightMultiset>)
          return x.scaled(t.value());
        else
          return scale(x, t);
      },
      d);
}

CapacityResult domain_capacity(const Domain& d, const Integer& k, const CapacityLimits& limits, Engine engine) {
  if (const auto* e = std::get_if<Ellipsoid>(&d); e && engine == Engine::Auto) {
    if (k <= limits.ellipsoid_max_k) {
      Rational c = ellipsoid_capacity(*e, k, limits);
      // The lattice counter has no level witness; the weights carry one.
      CapacityResult r{c, c, true, {}};
      return r;
    }
  }
  WeightMultiset w = domain_weights(d);
  bool oracle = engine == Engine::Oracle || (engine == Engine::Auto && 2 * k <= limits.oracle_budget_limit);
  return oracle ? multiset_capacity_oracle(w, k, limits) : multiset_capacity_fast(w, k, limits);
}

std::vector<Rational> domain_capacity_sweep(const Domain& d, std::uint64_t kmax, const CapacityLimits& limits) {
  if (const auto* e = std::get_if<Ellipsoid>(&d)) return ellipsoid_capacity_sweep(*e, kmax);
  return multiset_capacity_sweep(domain_weights(d), kmax, limits);
}

WeylRatio weyl_ratio(const Domain& d, const Integer& k, const CapacityLimits& limits) {
  if (k <= 0) throw std::domain_error("Weyl ratio is undefined at k = 0");
  CapacityResult c = domain_capacity(d, k, limits);
  Rational denom = 4 * Rational(k) * domain_area(d);
  return {c.best * c.best / denom, c.upper * c.upper / denom, c.exact};
}

}  // namespace symcap
