#include "symcap/ech_capacities.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <utility>

#include "capacity_internal.hpp"

namespace symcap {

Rational ball_capacity(const Rational& a, const Integer& k) {
  if (a <= 0) throw InvalidDomain("ball capacity needs a > 0");
  if (k < 0) throw std::domain_error("capacity index must be nonnegative");
  // d(d+1)/2 <= k  <=>  2d + 1 <= sqrt(8k + 1)
  Integer d = (isqrt(8 * k + 1) - 1) / 2;
  return Rational(d) * a;
}

namespace {

// sum_{i=0}^{n-1} floor((a i + b) / m) for a, b >= 0, m > 0, in O(log) steps.
template <typename Int>
Int floor_sum(Int n, Int m, Int a, Int b) {
  Int total = 0;
  for (;;) {
    if (a >= m) {
      total += (n - 1) * n / 2 * (a / m);
      a %= m;
    }
    if (b >= m) {
      total += n * (b / m);
      b %= m;
    }
    Int top = a * n + b;
    if (top < m) break;
    n = top / m;
    b = top % m;
    std::swap(m, a);
  }
  return total;
}

// Number of pairs (m, n) >= 0 with m*small + n*large <= t.
template <typename Int>
Int lattice_count(const Int& small, const Int& large, const Int& t) {
  Int rows = t / large + 1;
  // Row n contributes floor((t - n*large) / small) + 1; reverse the rows.
  return rows + floor_sum<Int>(rows, small, large, t - (rows - 1) * large);
}

// Smallest lattice value t with at least k + 1 points <= t.
template <typename Int>
Int kth_lattice_value(const Int& small, const Int& large, const Int& k) {
  Int lo = 0;
  Int hi = k * small;
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (lattice_count<Int>(small, large, mid) >= k + 1)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

struct ScaledPair {
  Integer small;
  Integer large;
  Integer denominator;
};

ScaledPair scale_to_integers(const Ellipsoid& e) {
  Integer den;
  mpz_lcm(den.get_mpz_t(), e.a().get_den_mpz_t(), e.b().get_den_mpz_t());
  Rational a = e.a() * den;
  Rational b = e.b() * den;
  return {a.get_num(), b.get_num(), den};
}

}  // namespace

Rational ellipsoid_capacity(const Ellipsoid& e, const Integer& k, const CapacityLimits& limits) {
  if (k < 0) throw std::domain_error("capacity index must be nonnegative");
  if (k > limits.ellipsoid_max_k)
    throw ResourceLimit("ellipsoid capacity index " + to_string(k) + " exceeds configured maximum " +
                        to_string(limits.ellipsoid_max_k));
  ScaledPair s = scale_to_integers(e);
  Integer top = k * s.small;
  // Counts stay below (k + 1)^2 and intermediate products below 2 top + large.
  if (mpz_sizeinbase(k.get_mpz_t(), 2) <= 56 && mpz_sizeinbase(top.get_mpz_t(), 2) <= 100 &&
      mpz_sizeinbase(s.large.get_mpz_t(), 2) <= 100) {
    i128 v = kth_lattice_value<i128>(to_i128(s.small), to_i128(s.large), to_i128(k));
    return make_rational(from_i128(v), s.denominator);
  }
  Integer v = kth_lattice_value<Integer>(s.small, s.large, k);
  return make_rational(v, s.denominator);
}

std::vector<Rational> ellipsoid_capacity_sweep(const Ellipsoid& e, std::uint64_t kmax) {
  ScaledPair s = scale_to_integers(e);
  Rational top_value = ellipsoid_capacity(e, Integer(static_cast<unsigned long>(kmax)));
  Integer top = floor_of(top_value * s.denominator);
  std::vector<Integer> values;
  for (Integer used = 0; used <= top; used += s.large)
    for (Integer v = used; v <= top; v += s.small) values.push_back(v);
  std::sort(values.begin(), values.end());
  std::vector<Rational> out;
  out.reserve(kmax + 1);
  for (std::uint64_t i = 0; i <= kmax; ++i) out.push_back(make_rational(values[i], s.denominator));
  return out;
}

namespace detail {

std::vector<LayeredClass> layered_classes(const WeightMultiset& w, const Integer& budget_units) {
  std::vector<LayeredClass> out;
  out.reserve(w.class_count());
  Integer cap = budget_units + 1;
  for (const auto& e : w.entries()) {
    Integer n = e.multiplicity < cap ? e.multiplicity : cap;
    out.push_back({e.weight, to_i128(n)});
  }
  return out;
}

i128 sat_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r) || r > kInfinity) return kInfinity;
  return r;
}

i128 sat_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r) || r > kInfinity) return kInfinity;
  return r;
}

i128 triangular(i128 d) { return (d % 2 == 0) ? sat_mul(d / 2, d + 1) : sat_mul(d, (d + 1) / 2); }

i128 class_cost(i128 copies, i128 units) {
  i128 q = units / copies;
  i128 r = units % copies;
  return sat_add(sat_mul(copies, triangular(q)), sat_mul(r, q + 1));
}

CandidateAssignment make_assignment(const std::vector<LayeredClass>& classes, const std::vector<i128>& units) {
  CandidateAssignment c;
  Integer budget = 0;
  Rational value = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    i128 n = classes[i].copies;
    c.classes.push_back({from_i128(units[i] / n), from_i128(units[i] % n)});
    budget += 2 * from_i128(class_cost(n, units[i]));
    value += classes[i].weight * from_i128(units[i]);
  }
  c.budget = budget;
  c.value = value;
  return c;
}

Integer common_denominator(const std::vector<LayeredClass>& classes) {
  Integer den = 1;
  for (const auto& c : classes) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.weight.get_den_mpz_t());
  return den;
}

}  // namespace detail

namespace {

using detail::LayeredClass;

// Dynamic program over the budget: table[i][b] is the best scaled value
// using classes 0..i with at most b triangular units. Each class is added
// layer by layer as a bounded knapsack item (cost q + 1, n copies), solved
// per residue class with a monotone deque.
template <typename V>
class OracleTables {
 public:
  OracleTables(const std::vector<LayeredClass>& classes, const std::vector<V>& values, std::int64_t budget)
      : classes_(classes), values_(values), budget_(budget) {
    std::vector<V> current(static_cast<std::size_t>(budget_) + 1, V(0));
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      i128 n = classes_[i].copies;
      for (i128 q = 0;; ++q) {
        // Any unit of layer q needs layers below it full first.
        i128 reach = detail::sat_add(detail::sat_mul(n, detail::triangular(q)), q + 1);
        if (reach > budget_) break;
        add_layer(current, static_cast<std::int64_t>(q + 1), n, values_[i]);
      }
      tables_.push_back(current);
    }
  }

  const V& best() const { return tables_.back()[static_cast<std::size_t>(budget_)]; }
  const std::vector<V>& final_table() const { return tables_.back(); }

  std::vector<i128> units() const {
    std::vector<i128> out(classes_.size(), 0);
    std::int64_t b = budget_;
    for (std::size_t i = classes_.size(); i-- > 0;) {
      i128 n = classes_[i].copies;
      const V& target = tables_[i][static_cast<std::size_t>(b)];
      bool found = false;
      for (i128 s = 0;; ++s) {
        i128 cost = detail::class_cost(n, s);
        if (cost > b) break;
        V prev = i == 0 ? V(0) : tables_[i - 1][static_cast<std::size_t>(b - static_cast<std::int64_t>(cost))];
        if (prev + values_[i] * V(static_cast<long>(s)) == target) {
          out[i] = s;
          b -= static_cast<std::int64_t>(cost);
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("capacity oracle backtracking failed");
    }
    return out;
  }

 private:
  static void add_layer(std::vector<V>& table, std::int64_t cost, i128 copies, const V& value) {
    std::int64_t size = static_cast<std::int64_t>(table.size());
    std::deque<std::pair<std::int64_t, V>> window;  // (index j, table[old] - j*value), decreasing
    for (std::int64_t r = 0; r < cost && r < size; ++r) {
      window.clear();
      for (std::int64_t j = 0, b = r; b < size; ++j, b += cost) {
        V shifted = table[static_cast<std::size_t>(b)] - value * V(static_cast<long>(j));
        while (!window.empty() && window.back().second <= shifted) window.pop_back();
        window.emplace_back(j, shifted);
        while (static_cast<i128>(j - window.front().first) > copies) window.pop_front();
        table[static_cast<std::size_t>(b)] = window.front().second + value * V(static_cast<long>(j));
      }
    }
  }

  const std::vector<LayeredClass>& classes_;
  const std::vector<V>& values_;
  std::int64_t budget_;
  std::vector<std::vector<V>> tables_;
};

struct OracleInput {
  std::vector<LayeredClass> classes;
  Integer denominator;
  std::vector<Integer> scaled;
  bool fits_i128 = false;
};

OracleInput prepare_oracle(const WeightMultiset& w, const Integer& k, const CapacityLimits& limits) {
  if (k < 0) throw std::domain_error("capacity index must be nonnegative");
  if (2 * k > limits.oracle_budget_limit)
    throw ResourceLimit("oracle budget 2k = " + to_string(Integer(2 * k)) + " exceeds limit " +
                        to_string(limits.oracle_budget_limit) + "; use multiset_capacity_fast");
  OracleInput in;
  in.classes = detail::layered_classes(w, k);
  in.denominator = detail::common_denominator(in.classes);
  Integer total = 0;
  for (const auto& c : in.classes) {
    in.scaled.push_back(Rational(c.weight * in.denominator).get_num());
    total += in.scaled.back();
  }
  // Any table entry is at most k * sum of scaled values.
  in.fits_i128 = mpz_sizeinbase(Integer(total * (k + 1)).get_mpz_t(), 2) < 120;
  return in;
}

template <typename V>
std::vector<V> convert_values(const std::vector<Integer>& scaled);

template <>
std::vector<i128> convert_values<i128>(const std::vector<Integer>& scaled) {
  std::vector<i128> out;
  for (const auto& s : scaled) out.push_back(to_i128(s));
  return out;
}

template <>
std::vector<Integer> convert_values<Integer>(const std::vector<Integer>& scaled) {
  return scaled;
}

Integer to_integer(const i128& v) { return from_i128(v); }
Integer to_integer(const Integer& v) { return v; }

template <typename V>
CapacityResult run_oracle(const OracleInput& in, std::int64_t budget) {
  std::vector<V> values = convert_values<V>(in.scaled);
  OracleTables<V> tables(in.classes, values, budget);
  CapacityResult result;
  result.best = make_rational(to_integer(tables.best()), in.denominator);
  result.upper = result.best;
  result.exact = true;
  result.witness = detail::make_assignment(in.classes, tables.units());
  return result;
}

template <typename V>
std::vector<Rational> run_sweep(const OracleInput& in, std::int64_t budget) {
  std::vector<V> values = convert_values<V>(in.scaled);
  OracleTables<V> tables(in.classes, values, budget);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(budget) + 1);
  for (const auto& v : tables.final_table()) {
    out.push_back(make_rational(to_integer(v), in.denominator));
  }
  return out;
}

}  // namespace

CapacityResult multiset_capacity_oracle(const WeightMultiset& w, const Integer& k, const CapacityLimits& limits) {
  OracleInput in = prepare_oracle(w, k, limits);
  if (in.classes.empty()) return CapacityResult{0, 0, true, CandidateAssignment{{}, 0, 0}};
  std::int64_t budget = k.get_si();
  return in.fits_i128 ? run_oracle<i128>(in, budget) : run_oracle<Integer>(in, budget);
}

std::vector<Rational> multiset_capacity_sweep(const WeightMultiset& w, std::uint64_t kmax,
                                              const CapacityLimits& limits) {
  Integer k(static_cast<unsigned long>(kmax));
  OracleInput in = prepare_oracle(w, k, limits);
  if (in.classes.empty()) return std::vector<Rational>(kmax + 1, Rational(0));
  std::int64_t budget = static_cast<std::int64_t>(kmax);
  return in.fits_i128 ? run_sweep<i128>(in, budget) : run_sweep<Integer>(in, budget);
}

Rational assignment_value(const WeightMultiset& w, const CandidateAssignment& c) {
  if (c.classes.size() != w.class_count()) throw DimensionMismatch("assignment does not match the multiset");
  Rational total = 0;
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const auto& e = w.entries()[i];
    const auto& lv = c.classes[i];
    Integer level_sum = e.multiplicity * lv.base_level + lv.promoted;
    total += e.weight * Rational(level_sum);
  }
  return total;
}

Integer assignment_budget(const WeightMultiset& w, const CandidateAssignment& c) {
  if (c.classes.size() != w.class_count()) throw DimensionMismatch("assignment does not match the multiset");
  Integer total = 0;
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const auto& e = w.entries()[i];
    const auto& lv = c.classes[i];
    if (lv.promoted < 0 || lv.promoted > e.multiplicity || lv.base_level < 0)
      throw InvalidDomain("assignment levels out of range");
    Integer d = lv.base_level;
    Integer up = d + 1;
    total += (e.multiplicity - lv.promoted) * (d * d + d) + lv.promoted * (up * up + up);
  }
  return total;
}

}  // namespace symcap
