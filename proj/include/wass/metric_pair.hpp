#pragma once

// Metric pairs (X, d, A): a ground metric together with a distinguished
// subset A that acts as a free sink and source. Everything downstream is
// written against the MetricPair concept; FunctionPair adapts arbitrary
// callables, HalfPlanePair and GraphPMetricPair are the built-in instances.

#include "wass/ext_real.hpp"

#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace wass {

template <class P>
concept MetricPair = requires(const P& pair, const typename P::point_type& x) {
  typename P::point_type;
  { pair.dist(x, x) } -> std::convertible_to<ExtReal>;
  { pair.in_A(x) } -> std::convertible_to<bool>;
  { pair.dist_to_A(x) } -> std::convertible_to<ExtReal>;
  { pair.project_to_A(x) } -> std::convertible_to<std::optional<typename P::point_type>>;
  { pair.p_metric_certificate() } -> std::convertible_to<std::optional<Exponent>>;
} && std::totally_ordered<typename P::point_type> && std::copyable<typename P::point_type>;

template <MetricPair Pair>
using point_t = typename Pair::point_type;

/// True when diagrams built on `a` and `b` may be combined.
template <MetricPair Pair>
bool same_pair(const std::shared_ptr<const Pair>& a, const std::shared_ptr<const Pair>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if constexpr (std::equality_comparable<Pair>) {
    return *a == *b;
  } else {
    return false;
  }
}

/// Whether W_p on diagrams over `pair` is certified translation invariant:
/// always for p = 1, otherwise only when the pair carries a p-metric
/// certificate covering p.
template <MetricPair Pair>
bool certifies_translation_invariance(const Pair& pair, Exponent p) {
  if (p == Exponent(1)) return true;
  auto cert = pair.p_metric_certificate();
  return cert && p <= *cert;
}

/// Metric pair assembled from user-supplied oracles. Two FunctionPairs are
/// never considered the same pair unless they are the same object.
template <class Point>
class FunctionPair {
 public:
  using point_type = Point;
  using Dist = std::function<ExtReal(const Point&, const Point&)>;
  using Membership = std::function<bool(const Point&)>;
  using DistToA = std::function<ExtReal(const Point&)>;
  using Projection = std::function<std::optional<Point>(const Point&)>;

  FunctionPair(Dist dist, Membership in_A, DistToA dist_to_A, Projection project = {},
               std::optional<Exponent> certificate = std::nullopt)
      : dist_(std::move(dist)),
        in_A_(std::move(in_A)),
        dist_to_A_(std::move(dist_to_A)),
        project_(std::move(project)),
        certificate_(certificate) {}

  /// The pair (X, d, {}) with empty subspace.
  static FunctionPair without_subspace(Dist dist, std::optional<Exponent> certificate = {}) {
    return FunctionPair(
        std::move(dist), [](const Point&) { return false; },
        [](const Point&) { return ExtReal::infinity(); }, {}, certificate);
  }

  ExtReal dist(const Point& x, const Point& y) const { return dist_(x, y); }
  bool in_A(const Point& x) const { return in_A_(x); }
  ExtReal dist_to_A(const Point& x) const { return in_A_(x) ? ExtReal(0) : dist_to_A_(x); }
  std::optional<Point> project_to_A(const Point& x) const {
    if (in_A_(x)) return x;
    if (!project_) return std::nullopt;
    return project_(x);
  }
  std::optional<Exponent> p_metric_certificate() const { return certificate_; }

 private:
  Dist dist_;
  Membership in_A_;
  DistToA dist_to_A_;
  Projection project_;
  std::optional<Exponent> certificate_;
};

/// The p-strengthening d_p(x, y) = min(d(x, y), ||(d(x,A), d(y,A))||_p):
/// the cheapest way to move x to y when one detour through A is allowed.
template <MetricPair Pair>
ExtReal strengthened_dist(const Pair& pair, Exponent p, const point_t<Pair>& x,
                          const point_t<Pair>& y) {
  if (x == y) return 0;
  ExtReal direct = pair.dist(x, y);
  ExtReal detour = lp_norm({pair.dist_to_A(x), pair.dist_to_A(y)}, p);
  return min(direct, detour);
}

template <MetricPair Pair>
class StrengthenedMetric {
 public:
  StrengthenedMetric(std::shared_ptr<const Pair> pair, Exponent p)
      : pair_(std::move(pair)), p_(p) {}
  ExtReal operator()(const point_t<Pair>& x, const point_t<Pair>& y) const {
    return strengthened_dist(*pair_, p_, x, y);
  }
  Exponent p() const { return p_; }

 private:
  std::shared_ptr<const Pair> pair_;
  Exponent p_;
};

template <MetricPair Pair>
StrengthenedMetric<Pair> p_strengthened(std::shared_ptr<const Pair> pair, Exponent p) {
  return StrengthenedMetric<Pair>(std::move(pair), p);
}

/// The point of X/A that A collapses to.
struct CollapsedA {
  friend constexpr auto operator<=>(CollapsedA, CollapsedA) = default;
};

template <class Point>
using QuotientPoint = std::variant<Point, CollapsedA>;

/// Distance on X/A: d_p between ordinary points, d(x, A) to the collapsed
/// point. Points of A are identified with the collapsed point.
template <MetricPair Pair>
class QuotientMetric {
 public:
  using point_type = QuotientPoint<point_t<Pair>>;

  QuotientMetric(std::shared_ptr<const Pair> pair, Exponent p) : pair_(std::move(pair)), p_(p) {}

  point_type project(const point_t<Pair>& x) const {
    if (pair_->in_A(x)) return CollapsedA{};
    return x;
  }

  ExtReal operator()(const point_type& a, const point_type& b) const {
    const auto* x = std::get_if<0>(&a);
    const auto* y = std::get_if<0>(&b);
    if (x && pair_->in_A(*x)) x = nullptr;
    if (y && pair_->in_A(*y)) y = nullptr;
    if (!x && !y) return 0;
    if (!x) return pair_->dist_to_A(*y);
    if (!y) return pair_->dist_to_A(*x);
    return strengthened_dist(*pair_, p_, *x, *y);
  }

  Exponent p() const { return p_; }

 private:
  std::shared_ptr<const Pair> pair_;
  Exponent p_;
};

template <MetricPair Pair>
QuotientMetric<Pair> quotient_metric(std::shared_ptr<const Pair> pair, Exponent p) {
  return QuotientMetric<Pair>(std::move(pair), p);
}

/// Outcome of a sampled p-metric check. The certificate speaks only for the
/// sample it was computed on.
struct PMetricReport {
  bool passed = true;
  std::size_t sample_size = 0;
  Exponent p;
  // Indices (x, y, z) into the sample of the first violating ordered triple:
  // d(x, y) > ||(d(x, z), d(z, y))||_p.
  std::size_t x = 0, y = 0, z = 0;
  ExtReal lhs, rhs;
};

/// Tests the p-strengthened triangle inequality on every ordered triple of
/// the sample, in lexicographic index order. Float comparisons allow a
/// relative slack of `tol`; exact values are compared exactly.
template <class Point, class Dist>
PMetricReport check_p_metric(const Dist& dist, std::span<const Point> points, Exponent p,
                             double tol = 1e-9) {
  if (points.empty()) throw invalid_input("check_p_metric needs a nonempty sample");
  const std::size_t n = points.size();
  std::vector<ExtReal> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = dist(points[i], points[j]);

  PMetricReport report;
  report.sample_size = n;
  report.p = p;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ExtReal& lhs = table[i * n + j];
      for (std::size_t k = 0; k < n; ++k) {
        ExtReal rhs = lp_norm({table[i * n + k], table[k * n + j]}, p);
        if (lhs > rhs && !approx_equal(lhs, rhs, tol)) {
          report.passed = false;
          report.x = i;
          report.y = j;
          report.z = k;
          report.lhs = lhs;
          report.rhs = rhs;
          return report;
        }
      }
    }
  }
  return report;
}

/// D_p((x, y), (x', y')) = ||(d_X(x, x'), d_Y(y, y'))||_p.
template <class DistX, class DistY>
class ProductMetric {
 public:
  ProductMetric(DistX dx, DistY dy, Exponent p) : dx_(std::move(dx)), dy_(std::move(dy)), p_(p) {}

  template <class PX, class PY>
  ExtReal operator()(const std::pair<PX, PY>& a, const std::pair<PX, PY>& b) const {
    return lp_norm({dx_(a.first, b.first), dy_(a.second, b.second)}, p_);
  }

 private:
  DistX dx_;
  DistY dy_;
  Exponent p_;
};

template <class DistX, class DistY>
ProductMetric<DistX, DistY> product_metric(DistX dx, DistY dy, Exponent p) {
  return ProductMetric<DistX, DistY>(std::move(dx), std::move(dy), p);
}

}  // namespace wass
