#include "symcap/weight_calculus.hpp"

#include <algorithm>
#include <map>

namespace symcap {

WeightMultiset::WeightMultiset(std::vector<WeightEntry> entries) {
  std::map<Rational, Integer, std::greater<>> merged;
  for (auto& e : entries) {
    if (e.weight <= 0) throw InvalidDomain("weights must be positive, got " + to_string(e.weight));
    if (e.multiplicity < 1)
      throw InvalidDomain("multiplicity must be at least 1, got " + to_string(e.multiplicity));
    merged[e.weight] += e.multiplicity;
  }
  entries_.reserve(merged.size());
  for (auto& [w, m] : merged) entries_.push_back({w, m});
}

Integer WeightMultiset::total_multiplicity() const {
  Integer total = 0;
  for (const auto& e : entries_) total += e.multiplicity;
  return total;
}

Rational WeightMultiset::area() const {
  Rational total = 0;
  for (const auto& e : entries_) total += Rational(e.multiplicity) * e.weight * e.weight;
  return total / 2;
}

WeightMultiset WeightMultiset::scaled(const Rational& t) const {
  if (t <= 0) throw InvalidDomain("scale factor must be positive");
  std::vector<WeightEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({e.weight * t, e.multiplicity});
  return WeightMultiset(std::move(out));
}

WeightMultiset WeightMultiset::merged_with(const WeightMultiset& other) const {
  std::vector<WeightEntry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return WeightMultiset(std::move(all));
}

WeightMultiset ellipsoid_weights(const Ellipsoid& e) {
  std::vector<WeightEntry> out;
  Rational small = e.a();
  Rational large = e.b();
  while (small > 0) {
    Integer q = floor_of(large / small);
    out.push_back({small, q});
    Rational rest = large - Rational(q) * small;
    large = small;
    small = rest;
  }
  return WeightMultiset(std::move(out));
}

WeightExpansion weight_expansion(const MomentProfile& profile, const ExpansionOptions& options) {
  struct Pending {
    std::vector<Point> region;
    TraceSide side;
    std::optional<std::size_t> parent;
    std::size_t depth;
  };

  WeightExpansion result;
  std::map<Rational, Integer, std::greater<>> counts;
  std::vector<Pending> stack;
  stack.push_back({profile.vertices(), TraceSide::Root, std::nullopt, 0});

  while (!stack.empty()) {
    Pending item = std::move(stack.back());
    stack.pop_back();
    if (item.depth >= options.depth_limit) {
      std::string residual;
      for (const auto& p : item.region) residual += " (" + to_string(p.x) + ", " + to_string(p.y) + ")";
      throw NonTermination("weight expansion exceeded depth " + std::to_string(options.depth_limit) +
                           "; residual region:" + residual);
    }
    const auto& v = item.region;

    // The largest inscribed triangle touches the convex boundary where x + y
    // is minimal, which always happens at a vertex.
    Rational head = v.front().x + v.front().y;
    for (const auto& p : v) head = std::min<Rational>(head, p.x + p.y);
    std::size_t left = 0;
    while (v[left].x + v[left].y != head) ++left;
    std::size_t right = v.size() - 1;
    while (v[right].x + v[right].y != head) --right;

    std::size_t node = result.trace.nodes.size();
    result.trace.nodes.push_back({head, item.side, item.parent, item.depth});
    result.trace.max_depth = std::max(result.trace.max_depth, item.depth);
    counts[head] += 1;

    // Push the x-axis piece first so the y-axis piece is expanded first.
    if (right + 1 < v.size()) {
      std::vector<Point> lower;
      for (std::size_t i = right; i < v.size(); ++i) lower.push_back({v[i].x + v[i].y - head, v[i].y});
      stack.push_back({MomentProfile(std::move(lower)).vertices(), TraceSide::Lower, node, item.depth + 1});
    }
    if (left > 0) {
      std::vector<Point> upper;
      for (std::size_t i = 0; i <= left; ++i) upper.push_back({v[i].x, v[i].x + v[i].y - head});
      stack.push_back({MomentProfile(std::move(upper)).vertices(), TraceSide::Upper, node, item.depth + 1});
    }
  }

  std::vector<WeightEntry> entries;
  for (auto& [w, m] : counts) entries.push_back({w, m});
  result.weights = WeightMultiset(std::move(entries));
  return result;
}

MomentProfile realize(const WeightMultiset& weights, const Integer& limit) {
  if (weights.empty()) throw InvalidDomain("cannot realize an empty weight multiset");
  Integer total = weights.total_multiplicity();
  if (total > limit)
    throw ResourceLimit("explicit realization refused: total multiplicity " + to_string(total) +
                        " exceeds limit " + to_string(limit));

  const auto& classes = weights.entries();
  Rational top = 0;
  for (const auto& c : classes) top += Rational(c.multiplicity) * c.weight;

  // Vertex heights, built from the largest weight downwards.
  std::vector<Point> by_class;
  by_class.reserve(classes.size());
  Integer before = 0;          // multiplicity of strictly larger classes
  Rational weighted_before = 0;  // sum of m_i * w_i over those classes
  for (const auto& c : classes) {
    by_class.push_back({c.weight, weighted_before - Rational(before) * c.weight});
    before += c.multiplicity;
    weighted_before += Rational(c.multiplicity) * c.weight;
  }

  std::vector<Point> vertices;
  vertices.reserve(classes.size() + 1);
  vertices.push_back({0, top});
  for (auto it = by_class.rbegin(); it != by_class.rend(); ++it) vertices.push_back(*it);
  return MomentProfile(std::move(vertices));
}

}  // namespace symcap
