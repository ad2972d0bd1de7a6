#pragma once

// Finite persistence diagrams on a metric pair: finite formal sums of ground
// points modulo points of A. Diagrams are kept in excision normal form (no
// stored point lies in A), which makes the monoid free on X \ A and equality
// a plain multiset comparison.

#include "wass/metric_pair.hpp"

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace wass {

using Multiplicity = std::uint64_t;

template <MetricPair Pair>
class Diagram {
 public:
  using pair_type = Pair;
  using point_type = point_t<Pair>;
  using PointMap = std::map<point_type, Multiplicity>;

  explicit Diagram(std::shared_ptr<const Pair> pair) : pair_(std::move(pair)) {
    if (!pair_) throw invalid_input("diagram needs a metric pair");
  }

  Diagram(std::shared_ptr<const Pair> pair, std::initializer_list<point_type> points)
      : Diagram(std::move(pair)) {
    for (const auto& x : points) insert(x);
  }

  /// Adds k copies of x; points of A are dropped.
  Diagram& insert(const point_type& x, Multiplicity k = 1) {
    if (k == 0 || pair_->in_A(x)) return *this;
    points_[x] += k;
    return *this;
  }

  const Pair& pair() const { return *pair_; }
  const std::shared_ptr<const Pair>& pair_ptr() const { return pair_; }
  const PointMap& points() const { return points_; }

  bool empty() const { return points_.empty(); }
  /// Number of points counted with multiplicity.
  Multiplicity size() const {
    Multiplicity total = 0;
    for (const auto& [x, k] : points_) total += k;
    return total;
  }
  Multiplicity multiplicity(const point_type& x) const {
    auto it = points_.find(x);
    return it == points_.end() ? 0 : it->second;
  }

  /// Points repeated by multiplicity, in canonical order.
  std::vector<point_type> expanded() const {
    std::vector<point_type> out;
    out.reserve(size());
    for (const auto& [x, k] : points_)
      for (Multiplicity i = 0; i < k; ++i) out.push_back(x);
    return out;
  }

  friend Diagram operator+(const Diagram& a, const Diagram& b) {
    if (!same_pair(a.pair_, b.pair_)) throw invalid_input("diagrams live on different metric pairs");
    Diagram out = a;
    for (const auto& [x, k] : b.points_) out.points_[x] += k;
    return out;
  }
  Diagram& operator+=(const Diagram& b) { return *this = *this + b; }

  /// Equality of normal forms, which is equality modulo D(A).
  friend bool operator==(const Diagram& a, const Diagram& b) {
    return same_pair(a.pair_, b.pair_) && a.points_ == b.points_;
  }

 private:
  std::shared_ptr<const Pair> pair_;
  PointMap points_;
};

/// Excision: drops every point of A, keeping multiplicities of the rest.
template <MetricPair Pair, class Range>
Diagram<Pair> reduce(const Range& raw, std::shared_ptr<const Pair> pair) {
  Diagram<Pair> out(std::move(pair));
  for (const auto& x : raw) out.insert(x);
  return out;
}

template <MetricPair Pair>
Diagram<Pair> add(const Diagram<Pair>& a, const Diagram<Pair>& b) {
  return a + b;
}

/// The restriction of alpha to points with d(x, A) > eps.
template <MetricPair Pair>
Diagram<Pair> truncate_eps(const Diagram<Pair>& alpha, const ExtReal& eps) {
  if (!(eps > ExtReal(0))) throw invalid_input("truncation threshold must be positive");
  Diagram<Pair> out(alpha.pair_ptr());
  for (const auto& [x, k] : alpha.points())
    if (alpha.pair().dist_to_A(x) > eps) out.insert(x, k);
  return out;
}

template <MetricPair Pair>
bool equals_mod_A(const Diagram<Pair>& a, const Diagram<Pair>& b) {
  if (!same_pair(a.pair_ptr(), b.pair_ptr()))
    throw invalid_input("diagrams live on different metric pairs");
  return a == b;
}

}  // namespace wass
