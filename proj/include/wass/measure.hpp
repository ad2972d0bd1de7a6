#pragma once

// Finitely supported measures on X \ A and their Jordan pairs.

#include "wass/diagram.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace wass {

template <MetricPair Pair>
class DiscreteMeasure {
 public:
  using pair_type = Pair;
  using point_type = point_t<Pair>;
  using AtomMap = std::map<point_type, ExtReal>;

  explicit DiscreteMeasure(std::shared_ptr<const Pair> pair) : pair_(std::move(pair)) {
    if (!pair_) throw invalid_input("measure needs a metric pair");
  }

  /// Adds mass at x. Mass on A is dropped; zero-mass atoms are not stored.
  DiscreteMeasure& add_mass(const point_type& x, const ExtReal& mass) {
    if (!mass.is_finite()) throw invalid_input("atom mass must be finite");
    if (mass.sign() < 0) throw invalid_input("negative mass in a nonnegative measure");
    if (mass.is_zero() || pair_->in_A(x)) return *this;
    auto [it, inserted] = atoms_.try_emplace(x, mass);
    if (!inserted) it->second += mass;
    return *this;
  }

  void erase(const point_type& x) { atoms_.erase(x); }

  const Pair& pair() const { return *pair_; }
  const std::shared_ptr<const Pair>& pair_ptr() const { return pair_; }
  const AtomMap& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  ExtReal mass(const point_type& x) const {
    auto it = atoms_.find(x);
    return it == atoms_.end() ? ExtReal(0) : it->second;
  }

  ExtReal total_mass() const {
    ExtReal total = 0;
    for (const auto& [x, m] : atoms_) total += m;
    return total;
  }

  friend DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (!same_pair(a.pair_, b.pair_)) throw invalid_input("measures live on different metric pairs");
    DiscreteMeasure out = a;
    for (const auto& [x, m] : b.atoms_) out.add_mass(x, m);
    return out;
  }

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return same_pair(a.pair_, b.pair_) && a.atoms_ == b.atoms_;
  }

 private:
  std::shared_ptr<const Pair> pair_;
  AtomMap atoms_;
};

/// A finite signed measure in Jordan form: plus and minus share no atom.
template <MetricPair Pair>
class SignedDiscreteMeasure {
 public:
  using point_type = point_t<Pair>;

  explicit SignedDiscreteMeasure(std::shared_ptr<const Pair> pair)
      : plus_(pair), minus_(std::move(pair)) {}

  /// The Jordan form of plus - minus.
  static SignedDiscreteMeasure from_parts(const DiscreteMeasure<Pair>& plus,
                                          const DiscreteMeasure<Pair>& minus) {
    if (!same_pair(plus.pair_ptr(), minus.pair_ptr()))
      throw invalid_input("measures live on different metric pairs");
    SignedDiscreteMeasure out(plus.pair_ptr());
    for (const auto& [x, m] : plus.atoms()) out.add_mass(x, m);
    for (const auto& [x, m] : minus.atoms()) out.add_mass(x, -m);
    return out;
  }

  /// Adds signed mass at x, keeping the Jordan form.
  SignedDiscreteMeasure& add_mass(const point_type& x, const ExtReal& mass) {
    if (!mass.is_finite()) throw invalid_input("atom mass must be finite");
    if (mass.is_zero() || plus_.pair().in_A(x)) return *this;
    ExtReal net = plus_.mass(x) - minus_.mass(x) + mass;
    plus_.erase(x);
    minus_.erase(x);
    if (net.sign() > 0) plus_.add_mass(x, net);
    if (net.sign() < 0) minus_.add_mass(x, -net);
    return *this;
  }

  const DiscreteMeasure<Pair>& plus() const { return plus_; }
  const DiscreteMeasure<Pair>& minus() const { return minus_; }
  const Pair& pair() const { return plus_.pair(); }
  const std::shared_ptr<const Pair>& pair_ptr() const { return plus_.pair_ptr(); }

  /// mu(X) = mu+(X) - mu-(X).
  ExtReal total_mass() const { return plus_.total_mass() - minus_.total_mass(); }

  friend bool operator==(const SignedDiscreteMeasure& a, const SignedDiscreteMeasure& b) {
    return a.plus_ == b.plus_ && a.minus_ == b.minus_;
  }

 private:
  DiscreteMeasure<Pair> plus_;
  DiscreteMeasure<Pair> minus_;
};

/// Each point of multiplicity k becomes an atom of mass k.
template <MetricPair Pair>
DiscreteMeasure<Pair> diagram_as_measure(const Diagram<Pair>& alpha) {
  DiscreteMeasure<Pair> out(alpha.pair_ptr());
  for (const auto& [x, k] : alpha.points())
    out.add_mass(x, ExtReal(Rational(BigInt(k))));
  return out;
}

}  // namespace wass
