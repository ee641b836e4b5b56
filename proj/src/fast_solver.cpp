#include <algorithm>
#include <deque>
#include <optional>

#include "capacity_internal.hpp"
#include "symcap/ech_capacities.hpp"

namespace symcap {

namespace {

using detail::class_cost;
using detail::kInfinity;
using detail::LayeredClass;
using detail::sat_add;
using detail::sat_mul;
using detail::triangular;

i128 seed_cost(const std::vector<LayeredClass>& classes, const std::vector<i128>& levels) {
  i128 total = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    total = sat_add(total, sat_mul(classes[i].copies, triangular(levels[i])));
  return total;
}

// Number of layers of each class whose value per unit exceeds 1 / lambda.
std::vector<i128> levels_at(const std::vector<LayeredClass>& classes, const Rational& lambda) {
  std::vector<i128> out;
  out.reserve(classes.size());
  for (const auto& c : classes) {
    Integer d = ceil_of(lambda * c.weight) - 1;
    if (d < 0) d = 0;
    out.push_back(mpz_sizeinbase(d.get_mpz_t(), 2) > 100 ? kInfinity : to_i128(d));
  }
  return out;
}

struct Boundary {
  Rational lambda;  // reciprocal of the boundary value per unit
  std::vector<i128> levels;
};

// Largest prefix of layers (in decreasing value per unit) that fits the budget
// as whole layers, together with the value per unit of the first layer group
// that does not fit. Bisection on lambda skips long runs of feasible groups.
Boundary lagrangian_seed(const std::vector<LayeredClass>& classes, i128 budget) {
  std::vector<i128> level(classes.size(), 0);
  Integer root = isqrt(Integer(2 * from_i128(budget))) + 2;
  Rational hi = Rational(root) / classes.front().weight;
  for (;;) {
    Rational beta = Rational(from_i128(level[0] + 1)) / classes[0].weight;
    for (std::size_t i = 1; i < classes.size(); ++i) {
      Rational b = Rational(from_i128(level[i] + 1)) / classes[i].weight;
      if (b < beta) beta = b;
    }
    std::vector<i128> next = level;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (Rational(from_i128(level[i] + 1)) / classes[i].weight == beta) next[i] += 1;
    if (seed_cost(classes, next) > budget) return {beta, level};
    Rational mid = (beta + hi) / 2;
    std::vector<i128> jump = levels_at(classes, mid);
    if (seed_cost(classes, jump) <= budget) {
      level = std::move(jump);
    } else {
      hi = mid;
      level = std::move(next);
    }
  }
}

// Spend the leftover budget on the best remaining value per unit.
void greedy_fill(const std::vector<LayeredClass>& classes, std::vector<i128>& units, i128 residual) {
  for (;;) {
    std::optional<std::size_t> pick;
    i128 pick_cost = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      i128 cost = units[i] / classes[i].copies + 1;
      if (cost > residual) continue;
      if (!pick || classes[i].weight * from_i128(pick_cost) > classes[*pick].weight * from_i128(cost)) {
        pick = i;
        pick_cost = cost;
      }
    }
    if (!pick) return;
    std::size_t i = *pick;
    i128 room = classes[i].copies - units[i] % classes[i].copies;
    i128 take = std::min(room, residual / pick_cost);
    units[i] += take;
    residual -= take * pick_cost;
  }
}

// Largest s <= cap with class_cost(n, s) <= limit.
i128 max_units(i128 n, i128 limit, i128 cap) {
  i128 lo = 0, hi = cap;
  while (lo < hi) {
    i128 mid = lo + (hi - lo + 1) / 2;
    if (class_cost(n, mid) <= limit)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Per class, the unit counts whose reduced-cost penalty against the
// relaxation stays within `gap`. rho is the boundary value per unit.
std::optional<std::pair<i128, i128>> penalty_box(const LayeredClass& c, i128 full_layers, const Rational& rho,
                                                 const Rational& gap, i128 budget) {
  const i128 n = c.copies;
  const long kMaxSteps = 1'000'000;
  i128 full = sat_mul(n, full_layers);
  // A layer exactly at the boundary ratio costs nothing either way.
  Rational at = c.weight / rho;
  i128 top = full;
  if (is_integer(at) && at.get_num() == from_i128(full_layers + 1)) top = sat_add(full, n);

  i128 lower = full;
  Rational spent = 0;
  long steps = 0;
  for (i128 q = full_layers - 1; q >= 0; --q) {
    if (++steps > kMaxSteps) return std::nullopt;
    Rational per_unit = c.weight - rho * Rational(from_i128(q + 1));
    Rational layer = per_unit * Rational(from_i128(n));
    if (spent + layer <= gap) {
      spent += layer;
      lower -= n;
      continue;
    }
    lower -= to_i128(floor_of((gap - spent) / per_unit));
    break;
  }

  i128 upper = top;
  spent = 0;
  steps = 0;
  for (i128 q = top / n;; ++q) {
    if (++steps > kMaxSteps) return std::nullopt;
    if (class_cost(n, upper) > budget) break;
    Rational per_unit = rho * Rational(from_i128(q + 1)) - c.weight;
    Rational layer = per_unit * Rational(from_i128(n));
    if (spent + layer <= gap) {
      spent += layer;
      upper = sat_add(upper, n);
      continue;
    }
    upper = sat_add(upper, to_i128(floor_of((gap - spent) / per_unit)));
    break;
  }
  // Never beyond what the budget allows on its own.
  upper = std::max(lower, std::min(upper, max_units(n, budget, upper)));
  return std::make_pair(lower, upper);
}

// Exact optimum over the product of per-class unit ranges [lo_i, hi_i], by
// a budget DP relative to the lower corner. Returns nothing when the
// configured caps would be exceeded; otherwise the best units found.
std::optional<std::vector<i128>> box_search(const std::vector<LayeredClass>& classes, const std::vector<i128>& lo,
                                            std::vector<i128> hi, i128 budget, const CapacityLimits& limits) {
  const std::size_t m = classes.size();
  i128 base = 0;
  for (std::size_t i = 0; i < m; ++i) base = sat_add(base, class_cost(classes[i].copies, lo[i]));
  if (base > budget) return std::nullopt;
  i128 residual = budget - base;
  if (residual > static_cast<i128>(limits.certify_budget_cap)) return std::nullopt;
  const std::int64_t room = static_cast<std::int64_t>(residual);

  struct Group {
    std::int64_t cost;
    std::int64_t count;
  };
  std::vector<std::vector<Group>> groups(m);
  std::vector<std::size_t> free;
  i128 work = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const i128 n = classes[i].copies;
    const i128 base_cost = class_cost(n, lo[i]);
    hi[i] = std::max(lo[i], std::min(hi[i], max_units(n, base_cost + residual, hi[i])));
    for (i128 s = lo[i]; s < hi[i];) {
      i128 q = s / n;
      i128 count = std::min((q + 1) * n, hi[i]) - s;
      groups[i].push_back({static_cast<std::int64_t>(q + 1), static_cast<std::int64_t>(count)});
      s += count;
    }
    if (!groups[i].empty()) free.push_back(i);
    work += static_cast<i128>(groups[i].size()) * (residual + 1);
  }
  if (work > static_cast<i128>(limits.certify_work_cap)) return std::nullopt;
  if (static_cast<i128>(free.size()) * (residual + 1) > (i128(1) << 24)) return std::nullopt;

  std::vector<i128> values;
  Integer den = detail::common_denominator(classes);
  Integer value_bound = 0;
  for (const auto& c : classes) {
    Integer v = Rational(c.weight * den).get_num();
    value_bound += v;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 90) return std::nullopt;
    values.push_back(to_i128(v));
  }
  if (mpz_sizeinbase(Integer(value_bound * (from_i128(residual) + 1)).get_mpz_t(), 2) > 120) return std::nullopt;

  std::vector<std::vector<i128>> tables;
  std::vector<i128> table(static_cast<std::size_t>(room) + 1, 0);
  std::deque<std::pair<std::int64_t, i128>> window;
  for (std::size_t i : free) {
    for (const Group& g : groups[i]) {
      for (std::int64_t r = 0; r < g.cost && r <= room; ++r) {
        window.clear();
        for (std::int64_t j = 0, b = r; b <= room; ++j, b += g.cost) {
          i128 shifted = table[static_cast<std::size_t>(b)] - values[i] * j;
          while (!window.empty() && window.back().second <= shifted) window.pop_back();
          window.emplace_back(j, shifted);
          if (j - window.front().first > g.count) window.pop_front();
          table[static_cast<std::size_t>(b)] = window.front().second + values[i] * j;
        }
      }
    }
    tables.push_back(table);
  }

  std::vector<i128> units = lo;
  std::int64_t b = room;
  for (std::size_t t = free.size(); t-- > 0;) {
    std::size_t i = free[t];
    const i128 n = classes[i].copies;
    const i128 base_cost = class_cost(n, lo[i]);
    const i128 target = tables[t][static_cast<std::size_t>(b)];
    bool found = false;
    for (i128 s = lo[i]; s <= hi[i]; ++s) {
      i128 extra = class_cost(n, s) - base_cost;
      if (extra > b) break;
      i128 prev = t == 0 ? 0 : tables[t - 1][static_cast<std::size_t>(b - static_cast<std::int64_t>(extra))];
      if (prev + values[i] * (s - lo[i]) == target) {
        units[i] = s;
        b -= static_cast<std::int64_t>(extra);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("box search backtracking failed");
  }
  return units;
}

Rational units_value(const std::vector<LayeredClass>& classes, const std::vector<i128>& units) {
  Rational total = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) total += classes[i].weight * from_i128(units[i]);
  return total;
}

}  // namespace

CapacityResult multiset_capacity_fast(const WeightMultiset& w, const Integer& k, const CapacityLimits& limits) {
  if (k < 0) throw std::domain_error("capacity index must be nonnegative");
  if (mpz_sizeinbase(Integer(2 * k).get_mpz_t(), 2) > 120)
    throw ResourceLimit("capacity index " + to_string(k) + " too large for 128-bit budget arithmetic");
  if (w.class_count() > limits.fast_max_classes)
    throw ResourceLimit("fast solver accepts at most " + std::to_string(limits.fast_max_classes) +
                        " weight classes, got " + std::to_string(w.class_count()));
  std::vector<LayeredClass> classes = detail::layered_classes(w, k);
  if (classes.empty() || k == 0) {
    CapacityResult r{0, 0, true, {}};
    r.witness = detail::make_assignment(classes, std::vector<i128>(classes.size(), 0));
    return r;
  }
  const i128 budget = to_i128(k);

  Boundary seed = lagrangian_seed(classes, budget);
  const Rational rho = 1 / seed.lambda;
  std::vector<i128> units(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) units[i] = classes[i].copies * seed.levels[i];
  const i128 spent = seed_cost(classes, seed.levels);
  greedy_fill(classes, units, budget - spent);

  Rational upper = rho * Rational(k);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    Rational d = Rational(from_i128(seed.levels[i]));
    upper += Rational(from_i128(classes[i].copies)) *
             (d * classes[i].weight - rho * Rational(from_i128(triangular(seed.levels[i]))));
  }

  CapacityResult result;
  result.upper = upper;
  Rational best = units_value(classes, units);
  Rational gap = upper - best;
  bool exact = gap == 0;

  if (!exact) {
    std::vector<i128> lo(classes.size()), hi(classes.size());
    bool boxed = true;
    for (std::size_t i = 0; i < classes.size() && boxed; ++i) {
      auto box = penalty_box(classes[i], seed.levels[i], rho, gap, budget);
      if (!box) {
        boxed = false;
        break;
      }
      lo[i] = box->first;
      hi[i] = box->second;
    }
    std::optional<std::vector<i128>> found;
    if (boxed) found = box_search(classes, lo, hi, budget, limits);
    if (found) {
      exact = true;
    } else {
      // Uncertified local exchange around the incumbent.
      for (int width = limits.exchange_window; width >= 1 && !found; --width) {
        for (std::size_t i = 0; i < classes.size(); ++i) {
          i128 span = sat_mul(classes[i].copies, width);
          lo[i] = std::max<i128>(0, units[i] - span);
          hi[i] = sat_add(units[i], span);
          if (boxed) {
            auto box = penalty_box(classes[i], seed.levels[i], rho, gap, budget);
            lo[i] = std::max(lo[i], box->first);
            hi[i] = std::min(hi[i], box->second);
          }
        }
        found = box_search(classes, lo, hi, budget, limits);
      }
    }
    if (found && units_value(classes, *found) > best) {
      units = *found;
      best = units_value(classes, units);
    }
    if (best == upper) exact = true;
    if (!exact && 2 * k <= limits.oracle_budget_limit) {
      // Small enough for the dynamic program: let it settle the value.
      CapacityResult settled = multiset_capacity_oracle(w, k, limits);
      settled.upper = settled.best;
      return settled;
    }
  }

  result.best = best;
  result.exact = exact;
  if (exact) result.upper = best;
  result.witness = detail::make_assignment(classes, units);
  return result;
}

}  // namespace symcap
