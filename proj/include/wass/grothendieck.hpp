#pragma once

// Group completion of commutative monoids carrying a translation invariant
// metric. Formal differences a - b are compared by
//
//   rho(a - b, c - d) = dist(a + d, c + b),
//
// which is well defined and is the unique translation invariant extension of
// dist exactly when dist is translation invariant. Virtual persistence
// diagrams are the completion of the diagram monoid under W_1 (or W_p when
// the pair certifies it).

#include "wass/wasserstein.hpp"

#include <concepts>
#include <string>
#include <utility>

namespace wass {

template <class M>
concept MetricMonoid = requires(const M& m, const typename M::element_type& a) {
  typename M::element_type;
  { m.zero() } -> std::convertible_to<typename M::element_type>;
  { m.add(a, a) } -> std::convertible_to<typename M::element_type>;
  { m.dist(a, a) } -> std::convertible_to<ExtReal>;
};

/// A formal difference pos - neg in the Grothendieck group K(M).
template <class Element>
struct GrothendieckElement {
  Element pos;
  Element neg;
};

template <MetricMonoid M>
ExtReal groth_metric(const M& monoid, const GrothendieckElement<typename M::element_type>& x,
                     const GrothendieckElement<typename M::element_type>& y) {
  return monoid.dist(monoid.add(x.pos, y.neg), monoid.add(y.pos, x.neg));
}

template <MetricMonoid M>
GrothendieckElement<typename M::element_type> groth_add(
    const M& monoid, const GrothendieckElement<typename M::element_type>& x,
    const GrothendieckElement<typename M::element_type>& y) {
  return {monoid.add(x.pos, y.pos), monoid.add(x.neg, y.neg)};
}

/// (N, +, |a - b|).
struct NaturalMonoid {
  using element_type = BigInt;
  BigInt zero() const { return 0; }
  BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
  ExtReal dist(const BigInt& a, const BigInt& b) const { return ExtReal(Rational(abs(a - b))); }
};

/// (D(X, A), +, W_p).
template <MetricPair Pair>
class DiagramMonoid {
 public:
  using element_type = Diagram<Pair>;

  DiagramMonoid(std::shared_ptr<const Pair> pair, Exponent p) : pair_(std::move(pair)), p_(p) {}

  Diagram<Pair> zero() const { return Diagram<Pair>(pair_); }
  Diagram<Pair> add(const Diagram<Pair>& a, const Diagram<Pair>& b) const { return a + b; }
  ExtReal dist(const Diagram<Pair>& a, const Diagram<Pair>& b) const {
    return wasserstein_p(a, b, p_).distance;
  }
  bool translation_invariant() const { return certifies_translation_invariance(*pair_, p_); }

 private:
  std::shared_ptr<const Pair> pair_;
  Exponent p_;
};

/// An element of K(X, A): positive and negative diagrams with no point in
/// common.
template <MetricPair Pair>
class VirtualDiagram {
 public:
  explicit VirtualDiagram(std::shared_ptr<const Pair> pair) : pos_(pair), neg_(std::move(pair)) {}

  const Diagram<Pair>& pos() const { return pos_; }
  const Diagram<Pair>& neg() const { return neg_; }
  const Pair& pair() const { return pos_.pair(); }
  const std::shared_ptr<const Pair>& pair_ptr() const { return pos_.pair_ptr(); }

  friend VirtualDiagram operator+(const VirtualDiagram& a, const VirtualDiagram& b) {
    return canonicalize(a.pos_ + b.pos_, a.neg_ + b.neg_);
  }
  friend VirtualDiagram operator-(const VirtualDiagram& a) {
    VirtualDiagram out(a.pair_ptr());
    out.pos_ = a.neg_;
    out.neg_ = a.pos_;
    return out;
  }
  friend VirtualDiagram operator-(const VirtualDiagram& a, const VirtualDiagram& b) {
    return a + (-b);
  }
  friend bool operator==(const VirtualDiagram& a, const VirtualDiagram& b) {
    return a.pos_ == b.pos_ && a.neg_ == b.neg_;
  }

  template <MetricPair P>
  friend VirtualDiagram<P> canonicalize(const Diagram<P>& pos, const Diagram<P>& neg);

 private:
  Diagram<Pair> pos_;
  Diagram<Pair> neg_;
};

/// Cancels common multiplicity so that pos and neg share no point.
template <MetricPair Pair>
VirtualDiagram<Pair> canonicalize(const Diagram<Pair>& pos, const Diagram<Pair>& neg) {
  if (!same_pair(pos.pair_ptr(), neg.pair_ptr()))
    throw invalid_input("diagrams live on different metric pairs");
  VirtualDiagram<Pair> out(pos.pair_ptr());
  for (const auto& [x, k] : pos.points()) {
    Multiplicity other = neg.multiplicity(x);
    if (k > other) out.pos_.insert(x, k - other);
  }
  for (const auto& [x, k] : neg.points()) {
    Multiplicity other = pos.multiplicity(x);
    if (k > other) out.neg_.insert(x, k - other);
  }
  return out;
}

/// W~_1(V1, V2) = W_1(V1.pos + V2.neg, V2.pos + V1.neg); the matching of that
/// diagram pair is the certificate.
template <MetricPair Pair>
WassersteinResult<point_t<Pair>> virtual_w1(const VirtualDiagram<Pair>& v1,
                                            const VirtualDiagram<Pair>& v2) {
  if (!same_pair(v1.pair_ptr(), v2.pair_ptr()))
    throw invalid_input("virtual diagrams live on different metric pairs");
  return wasserstein_p(v1.pos() + v2.neg(), v2.pos() + v1.neg(), Exponent(1));
}

/// W~_p. Only defined when W_p is translation invariant on the pair, which
/// is certified for p = 1 and whenever d_p is a p-metric.
template <MetricPair Pair>
ExtReal virtual_wp(const VirtualDiagram<Pair>& v1, const VirtualDiagram<Pair>& v2, Exponent p) {
  if (!same_pair(v1.pair_ptr(), v2.pair_ptr()))
    throw invalid_input("virtual diagrams live on different metric pairs");
  if (!certifies_translation_invariance(v1.pair(), p)) {
    throw refused_computation(
        "W_" + p.str() +
        " does not extend to virtual diagrams on this pair: translation invariance of W_p "
        "holds exactly when the p-strengthened metric d_p is a p-metric, and the pair carries "
        "no such certificate for p = " + p.str());
  }
  DiagramMonoid<Pair> monoid(v1.pair_ptr(), p);
  return groth_metric(monoid, GrothendieckElement<Diagram<Pair>>{v1.pos(), v1.neg()},
                      GrothendieckElement<Diagram<Pair>>{v2.pos(), v2.neg()});
}

}  // namespace wass
