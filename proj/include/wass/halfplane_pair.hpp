#pragma once

// The pair (R^2, l^q, {(x, y) : x >= y}) of classical persistence diagrams:
// points (b, d) with b < d live off the diagonal half plane A.

#include "wass/metric_pair.hpp"

#include <compare>
#include <optional>

namespace wass {

struct Point2 {
  ExtReal b;
  ExtReal d;

  friend std::strong_ordering operator<=>(const Point2& u, const Point2& v) {
    if (auto c = u.b <=> v.b; c != 0) return c;
    return u.d <=> v.d;
  }
  friend bool operator==(const Point2& u, const Point2& v) { return u.b == v.b && u.d == v.d; }
};

class HalfPlanePair {
 public:
  using point_type = Point2;

  explicit HalfPlanePair(Exponent q = Exponent::infinity()) : q_(q) {
    // dist_to_A((b, d)) = (d - b) * 2^(1/q) / 2, attained at the midpoint
    // ((b + d)/2, (b + d)/2) for every q.
    diagonal_factor_ = q.is_infinite() ? ExtReal(Rational(1, 2)) : root(ExtReal(2), q) / ExtReal(2);
  }

  Exponent q() const { return q_; }

  ExtReal dist(const Point2& u, const Point2& v) const {
    return lp_norm({abs(u.b - v.b), abs(u.d - v.d)}, q_);
  }
  bool in_A(const Point2& x) const { return x.b >= x.d; }
  ExtReal dist_to_A(const Point2& x) const {
    if (in_A(x)) return 0;
    return (x.d - x.b) * diagonal_factor_;
  }
  std::optional<Point2> project_to_A(const Point2& x) const {
    if (in_A(x)) return x;
    ExtReal mid = (x.b + x.d) / ExtReal(2);
    return Point2{mid, mid};
  }
  /// Every metric is a 1-metric; l^q on the plane is a length metric, so no
  /// larger exponent is certified.
  std::optional<Exponent> p_metric_certificate() const { return Exponent(1); }

  friend bool operator==(const HalfPlanePair& a, const HalfPlanePair& b) { return a.q_ == b.q_; }

 private:
  Exponent q_;
  ExtReal diagonal_factor_;
};

}  // namespace wass
