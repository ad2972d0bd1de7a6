#pragma once

// Random instance generators and brute-force reference implementations used
// by the unit tests and the acceptance harness. The oracles here share no
// solver code with the library.

#include "wass/wass.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace wass {

// gtest value printer.
inline void PrintTo(const ExtReal& v, std::ostream* os) { *os << v.str(); }

}  // namespace wass

namespace wass::testing {

using Rng = std::mt19937_64;
using HalfPlane = std::shared_ptr<const HalfPlanePair>;
using Graph = std::shared_ptr<const GraphPMetricPair>;

inline ExtReal q(long long num, long long den = 1) { return ExtReal(Rational(num, den)); }

/// Equal when both values are exact, else within tol.
inline bool agrees(const ExtReal& a, const ExtReal& b, double tol = 1e-9) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return approx_equal(a, b, tol);
}

inline HalfPlane halfplane(Exponent q = Exponent::infinity()) { return std::make_shared<const HalfPlanePair>(q); }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// A point strictly above the diagonal with coordinates on a 1/4 grid, or a
/// float point when `exact` is false.
inline Point2 random_point(Rng& rng, bool exact = true) {
  if (exact) {
    int b = uniform(rng, 0, 40);
    int len = uniform(rng, 1, 24);
    return {q(b, 4), q(b + len, 4)};
  }
  std::uniform_real_distribution<double> u(0.0, 10.0), l(0.05, 6.0);
  double b = u(rng);
  return {ExtReal::approx(b), ExtReal::approx(b + l(rng))};
}

inline Diagram<HalfPlanePair> random_diagram(Rng& rng, const HalfPlane& pair, int max_points, bool exact = true) {
  Diagram<HalfPlanePair> out(pair);
  int n = uniform(rng, 0, max_points);
  for (int i = 0; i < n; ++i) {
    // Occasionally repeat a point to exercise multiplicities.
    if (!out.points().empty() && uniform(rng, 0, 5) == 0) {
      out.insert(out.points().begin()->first);
    } else {
      out.insert(random_point(rng, exact));
    }
  }
  return out;
}

/// Connected-ish random graph on `n` vertices v0..v{n-1} with integer
/// weights; some vertices form A.
inline WeightedGraph random_graph(Rng& rng, int n, double edge_prob = 0.5, bool allow_zero = false) {
  WeightedGraph g;
  for (int i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  std::bernoulli_distribution edge(edge_prob);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) g.add_edge("v" + std::to_string(i), "v" + std::to_string(j), q(uniform(rng, allow_zero ? 0 : 1, 9)));
  g.canonicalize();
  return g;
}

inline Graph random_graph_pair(Rng& rng, int n, Exponent p, int subset_size = 1) {
  WeightedGraph g = random_graph(rng, n, 0.6);
  std::vector<std::string> subset;
  for (int i = 0; i < subset_size && i < n; ++i) subset.push_back("v" + std::to_string(i));
  return std::make_shared<const GraphPMetricPair>(std::move(g), p, subset);
}

inline Diagram<GraphPMetricPair> random_graph_diagram(Rng& rng, const Graph& pair, int max_points) {
  Diagram<GraphPMetricPair> out(pair);
  auto vs = pair->vertices();
  int n = uniform(rng, 0, max_points);
  for (int i = 0; i < n; ++i) out.insert(vs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vs.size()) - 1))]);
  return out;
}

/// Measure with `atoms` atoms on a 1/2 grid and masses in {1/2, 1, 3/2, 2}.
inline DiscreteMeasure<HalfPlanePair> random_measure(Rng& rng, const HalfPlane& pair, int atoms,
                                                     bool exact = true) {
  DiscreteMeasure<HalfPlanePair> out(pair);
  for (int i = 0; i < atoms; ++i) {
    Point2 x = random_point(rng, exact);
    ExtReal mass = exact ? q(uniform(rng, 1, 4), 2) : ExtReal::approx(std::uniform_real_distribution<double>(0.1, 2.0)(rng));
    out.add_mass(x, mass);
  }
  return out;
}

/// Rescales nu so that its total mass equals that of mu.
inline DiscreteMeasure<HalfPlanePair> rebalance(const DiscreteMeasure<HalfPlanePair>& nu, const ExtReal& target) {
  DiscreteMeasure<HalfPlanePair> out(nu.pair_ptr());
  ExtReal total = nu.total_mass();
  for (const auto& [x, w] : nu.atoms()) out.add_mass(x, w * target / total);
  return out;
}

// Oracles.

/// All-pairs l^p path costs by enumerating every simple path.
inline std::vector<std::vector<ExtReal>> brute_force_graph_metric(const WeightedGraph& g, Exponent p) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::pair<std::size_t, ExtReal>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<std::vector<ExtReal>> best(n, std::vector<ExtReal>(n, ExtReal::infinity()));
  std::vector<char> on_path(n, 0);
  std::vector<ExtReal> legs;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t s, std::size_t u) {
    best[s][u] = min(best[s][u], lp_norm(legs, p));
    for (const auto& [v, w] : adj[u]) {
      if (on_path[v]) continue;
      on_path[v] = 1;
      legs.push_back(w);
      walk(s, v);
      legs.pop_back();
      on_path[v] = 0;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = 1;
    walk(s, s);
    on_path[s] = 0;
  }
  return best;
}

/// W_p with ground cost d itself (no strengthening): both diagrams are padded
/// with the projections onto A of the other side's points and every
/// bijection is enumerated; pairs inside A cost nothing.
template <MetricPair Pair>
ExtReal projection_oracle(const Diagram<Pair>& alpha, const Diagram<Pair>& beta, Exponent p) {
  const Pair& pair = alpha.pair();
  auto xs = alpha.expanded();
  auto ys = beta.expanded();
  const std::size_t n = xs.size(), m = ys.size();
  for (std::size_t j = 0; j < m; ++j) xs.push_back(*pair.project_to_A(ys[j]));
  for (std::size_t i = 0; i < n; ++i) ys.push_back(*pair.project_to_A(xs[i]));
  std::vector<std::size_t> perm(n + m);
  std::iota(perm.begin(), perm.end(), 0);
  ExtReal best = ExtReal::infinity();
  std::vector<ExtReal> legs;
  do {
    legs.clear();
    for (std::size_t i = 0; i < n + m; ++i) {
      const auto& x = xs[i];
      const auto& y = ys[perm[i]];
      if (pair.in_A(x) && pair.in_A(y)) continue;
      legs.push_back(pair.dist(x, y));
    }
    best = min(best, lp_norm(legs, p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Balanced transport cost (integral of d^p) by splitting both measures into
/// equal quanta of size 1/scale and enumerating every bijection of quanta.
/// Masses must be exact multiples of 1/scale.
template <MetricPair Pair>
ExtReal quanta_transport_oracle(const DiscreteMeasure<Pair>& mu, const DiscreteMeasure<Pair>& nu, Exponent p,
                                long long scale) {
  using Point = point_t<Pair>;
  auto quanta = [&](const DiscreteMeasure<Pair>& m) {
    std::vector<Point> out;
    for (const auto& [x, w] : m.atoms()) {
      Rational units = w.rational() * scale;
      if (denominator(units) != 1) throw std::logic_error("mass is not a multiple of the quantum");
      for (BigInt k = 0; k < numerator(units); ++k) out.push_back(x);
    }
    return out;
  };
  auto xs = quanta(mu), ys = quanta(nu);
  if (xs.size() != ys.size()) return ExtReal::infinity();
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  ExtReal best = ExtReal::infinity();
  do {
    ExtReal total = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) total += pow(mu.pair().dist(xs[i], ys[perm[i]]), p);
    best = min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best * ExtReal(Rational(1, scale));
}

}  // namespace wass::testing
