#pragma once

// Optimal transport between finitely supported measures on a metric pair:
// balanced W_p, partial W_p^A (mass may enter or leave through A), signed
// W_1 and the transshipment form of W_1.

#include "wass/grothendieck.hpp"
#include "wass/measure.hpp"
#include "wass/min_cost_flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <vector>

namespace wass {

template <class Point>
struct Flow {
  Point from;
  Point to;
  ExtReal mass;
  ExtReal unit_cost;  // d(from, to)
};

template <class Point>
struct BoundaryFlow {
  Point point;
  ExtReal mass;
  ExtReal unit_cost;  // d(point, A)
};

/// A coupling, possibly relative to A. `cost` is the integral of d^p against
/// the plan (so the distance is its p-th root). Potentials are only filled in
/// for balanced transport at p = 1.
template <class Point>
struct TransportPlan {
  std::vector<Flow<Point>> flows;
  std::vector<BoundaryFlow<Point>> to_A;
  std::vector<BoundaryFlow<Point>> from_A;
  ExtReal cost = 0;
  Exponent p;
  std::optional<std::vector<std::pair<Point, ExtReal>>> potentials;

  bool empty() const { return flows.empty() && to_A.empty() && from_A.empty(); }
};

template <class Point>
struct TransportResult {
  ExtReal distance;
  TransportPlan<Point> plan;
};

namespace detail {

struct BipartiteSolution {
  bool feasible = false;
  std::vector<std::tuple<std::size_t, std::size_t, ExtReal>> flows;  // (i, j, mass)
  std::vector<ExtReal> source_potential, sink_potential;
};

inline bool same_total(const ExtReal& a, const ExtReal& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return approx_equal(a, b, 1e-12);
}

template <class Value>
BipartiteSolution solve_bipartite_as(const std::vector<ExtReal>& supply,
                                     const std::vector<ExtReal>& demand,
                                     const std::vector<ExtReal>& cost, Value (*convert)(const ExtReal&),
                                     ExtReal (*back)(const Value&)) {
  const std::size_t n = supply.size(), m = demand.size();
  const std::size_t s = 0, t = n + m + 1;
  flow::MinCostFlow<Value> net(n + m + 2);
  Value total(0);
  for (const auto& a : supply) total += convert(a);
  for (std::size_t i = 0; i < n; ++i) net.add_arc(s, 1 + i, convert(supply[i]), Value(0));
  for (std::size_t j = 0; j < m; ++j) net.add_arc(1 + n + j, t, convert(demand[j]), Value(0));
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> middle;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (const ExtReal& c = cost[i * m + j]; c.is_finite())
        middle.emplace_back(i, j, net.add_arc(1 + i, 1 + n + j, total, convert(c)));

  Value eps(0);
  if constexpr (std::is_floating_point_v<Value>) eps = Value(1e-12) * std::max(Value(1), total);
  auto outcome = net.solve(s, t, total, eps);

  BipartiteSolution out;
  out.feasible = !(outcome.flow < total - eps);
  if (!out.feasible) return out;
  for (auto [i, j, id] : middle)
    if (net.flow(id) > eps) out.flows.emplace_back(i, j, back(net.flow(id)));
  const auto& pi = net.potentials();
  for (std::size_t i = 0; i < n; ++i) out.source_potential.push_back(back(-pi[1 + i]));
  for (std::size_t j = 0; j < m; ++j) out.sink_potential.push_back(back(pi[1 + n + j]));
  return out;
}

inline ExtReal from_rational(const Rational& q) { return ExtReal(q); }
inline ExtReal from_double(const double& x) { return ExtReal::approx(x); }

/// Balanced transport between supply and demand vectors with cost[i * m + j]
/// per unit; infinite cells are not available. Returns potentials f, g with
/// f_i + g_j <= cost_ij, tight on every used cell.
inline BipartiteSolution solve_bipartite(const std::vector<ExtReal>& supply,
                                         const std::vector<ExtReal>& demand,
                                         const std::vector<ExtReal>& cost) {
  bool exact = true;
  for (const auto& v : supply) exact = exact && v.is_exact();
  for (const auto& v : demand) exact = exact && v.is_exact();
  for (const auto& v : cost) exact = exact && (!v.is_finite() || v.is_exact());
  if (exact) return solve_bipartite_as<Rational>(supply, demand, cost, as_rational, from_rational);
  return solve_bipartite_as<double>(supply, demand, cost, as_double, from_double);
}

template <class Map>
void split_support(const Map& atoms, std::vector<typename Map::key_type>& pts,
                   std::vector<ExtReal>& mass) {
  for (const auto& [x, w] : atoms) {
    pts.push_back(x);
    mass.push_back(w);
  }
}

template <MetricPair Pair>
void require_same_pair(const DiscreteMeasure<Pair>& mu, const DiscreteMeasure<Pair>& nu) {
  if (!same_pair(mu.pair_ptr(), nu.pair_ptr()))
    throw invalid_input("measures live on different metric pairs");
}

inline void require_finite_p(Exponent p) {
  if (p.is_infinite())
    throw invalid_input("W_p between measures is defined for finite p only");
}

}  // namespace detail

/// Integral of d^p against the plan, recomputed from the stored unit costs.
template <class Point>
ExtReal plan_cost(const TransportPlan<Point>& plan) {
  ExtReal total = 0;
  for (const auto& f : plan.flows) total += f.mass * pow(f.unit_cost, plan.p);
  for (const auto& f : plan.to_A) total += f.mass * pow(f.unit_cost, plan.p);
  for (const auto& f : plan.from_A) total += f.mass * pow(f.unit_cost, plan.p);
  return total;
}

/// Largest deviation of the plan's marginals from mu (outflow, including
/// to_A) and nu (inflow, including from_A).
template <MetricPair Pair>
ExtReal plan_marginal_error(const TransportPlan<point_t<Pair>>& plan, const DiscreteMeasure<Pair>& mu,
                            const DiscreteMeasure<Pair>& nu) {
  std::map<point_t<Pair>, ExtReal> out, in;
  for (const auto& [x, w] : mu.atoms()) out[x] -= w;
  for (const auto& [y, w] : nu.atoms()) in[y] -= w;
  for (const auto& f : plan.flows) {
    out[f.from] += f.mass;
    in[f.to] += f.mass;
  }
  for (const auto& f : plan.to_A) out[f.point] += f.mass;
  for (const auto& f : plan.from_A) in[f.point] += f.mass;
  ExtReal worst = 0;
  for (const auto& [x, e] : out) worst = max(worst, abs(e));
  for (const auto& [y, e] : in) worst = max(worst, abs(e));
  return worst;
}

/// Classical W_p for finite p. Unequal total masses give +inf with an empty
/// plan. At p = 1 the plan carries Kantorovich potentials f with
/// f(x) - f(y) <= d(x, y) and cost = sum f dmu - sum f dnu.
template <MetricPair Pair>
TransportResult<point_t<Pair>> wasserstein_measures(const DiscreteMeasure<Pair>& mu,
                                                    const DiscreteMeasure<Pair>& nu, Exponent p) {
  using Point = point_t<Pair>;
  detail::require_same_pair(mu, nu);
  detail::require_finite_p(p);
  const Pair& pair = mu.pair();
  TransportResult<Point> result;
  result.plan.p = p;
  if (!detail::same_total(mu.total_mass(), nu.total_mass())) {
    result.distance = ExtReal::infinity();
    result.plan.cost = ExtReal::infinity();
    return result;
  }

  std::vector<Point> xs, ys;
  std::vector<ExtReal> a, b;
  detail::split_support(mu.atoms(), xs, a);
  detail::split_support(nu.atoms(), ys, b);
  const std::size_t n = xs.size(), m = ys.size();
  std::vector<ExtReal> unit(n * m), cost(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      unit[i * m + j] = pair.dist(xs[i], ys[j]);
      cost[i * m + j] = unit[i * m + j].is_finite() ? pow(unit[i * m + j], p) : unit[i * m + j];
    }

  auto sol = detail::solve_bipartite(a, b, cost);
  if (!sol.feasible) {
    result.distance = ExtReal::infinity();
    result.plan.cost = ExtReal::infinity();
    return result;
  }
  for (const auto& [i, j, w] : sol.flows) result.plan.flows.push_back({xs[i], ys[j], w, unit[i * m + j]});
  result.plan.cost = plan_cost(result.plan);
  result.distance = root(result.plan.cost, p);

  if (p == Exponent(1)) {
    // c-transform of the sink potentials: phi(z) = min_j d(z, y_j) - g_j is
    // 1-Lipschitz, dominates f on the sources and equals -g_j on y_j.
    std::map<Point, ExtReal> phi;
    auto transform = [&](const Point& z) {
      ExtReal best = ExtReal::infinity();
      for (std::size_t j = 0; j < m; ++j) {
        ExtReal d = pair.dist(z, ys[j]);
        if (d.is_finite()) best = min(best, d - sol.sink_potential[j]);
      }
      return best;
    };
    bool finite = true;
    for (const auto& z : xs) finite = finite && (phi[z] = transform(z)).is_finite();
    for (const auto& z : ys) finite = finite && (phi[z] = transform(z)).is_finite();
    if (finite) result.plan.potentials.emplace(phi.begin(), phi.end());
  }
  return result;
}

/// sum f dmu - sum f dnu for the plan's potentials.
template <MetricPair Pair>
ExtReal kr_dual_value(const std::vector<std::pair<point_t<Pair>, ExtReal>>& potentials,
                      const DiscreteMeasure<Pair>& mu, const DiscreteMeasure<Pair>& nu) {
  std::map<point_t<Pair>, ExtReal> f(potentials.begin(), potentials.end());
  auto at = [&](const point_t<Pair>& x) {
    auto it = f.find(x);
    if (it == f.end()) throw invalid_input("potential missing on a support point");
    return it->second;
  };
  ExtReal total = 0;
  for (const auto& [x, w] : mu.atoms()) total += w * at(x);
  for (const auto& [y, w] : nu.atoms()) total -= w * at(y);
  return total;
}

/// max over ordered pairs of f(x) - f(y) - d(x, y); feasible when <= 0.
template <MetricPair Pair>
ExtReal kr_lipschitz_violation(const Pair& pair,
                               const std::vector<std::pair<point_t<Pair>, ExtReal>>& potentials) {
  ExtReal worst = ExtReal::neg_infinity();
  for (const auto& [x, fx] : potentials)
    for (const auto& [y, fy] : potentials) {
      ExtReal d = pair.dist(x, y);
      if (d.is_finite()) worst = max(worst, fx - fy - d);
    }
  return potentials.empty() ? ExtReal(0) : worst;
}

/// W_p^A via a collapsed point for A: both measures are padded at the
/// collapsed point up to total mass t (default |mu| + |nu|) and transported
/// under the quotient metric. Any t >= |mu| + |nu| gives the same value.
template <MetricPair Pair>
TransportResult<point_t<Pair>> partial_wasserstein(const DiscreteMeasure<Pair>& mu,
                                                   const DiscreteMeasure<Pair>& nu, Exponent p,
                                                   std::optional<ExtReal> padding = std::nullopt) {
  using Point = point_t<Pair>;
  using Q = QuotientPoint<Point>;
  detail::require_same_pair(mu, nu);
  detail::require_finite_p(p);
  const Pair& pair = mu.pair();
  const QuotientMetric<Pair> dbar = quotient_metric(mu.pair_ptr(), p);

  const ExtReal mass_mu = mu.total_mass(), mass_nu = nu.total_mass();
  const ExtReal t = padding ? *padding : mass_mu + mass_nu;
  if (!t.is_finite() || t < mass_mu + mass_nu)
    throw invalid_input("padding mass must be at least |mu| + |nu|");

  std::vector<Q> xs, ys;
  std::vector<ExtReal> a, b;
  for (const auto& [x, w] : mu.atoms()) {
    xs.push_back(x);
    a.push_back(w);
  }
  for (const auto& [y, w] : nu.atoms()) {
    ys.push_back(y);
    b.push_back(w);
  }
  xs.push_back(CollapsedA{});
  a.push_back(t - mass_mu);
  ys.push_back(CollapsedA{});
  b.push_back(t - mass_nu);

  const std::size_t n = xs.size(), m = ys.size();
  std::vector<ExtReal> cost(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ExtReal d = dbar(xs[i], ys[j]);
      cost[i * m + j] = d.is_finite() ? pow(d, p) : d;
    }

  TransportResult<Point> result;
  result.plan.p = p;
  auto sol = detail::solve_bipartite(a, b, cost);
  if (!sol.feasible) {
    result.distance = ExtReal::infinity();
    result.plan.cost = ExtReal::infinity();
    return result;
  }

  std::map<Point, ExtReal> to_A, from_A;
  for (const auto& [i, j, w] : sol.flows) {
    const Point* x = std::get_if<Point>(&xs[i]);
    const Point* y = std::get_if<Point>(&ys[j]);
    if (x && y) {
      ExtReal direct = pair.dist(*x, *y);
      ExtReal detour = pow(pair.dist_to_A(*x), p) + pow(pair.dist_to_A(*y), p);
      if (direct.is_finite() && !(detour < pow(direct, p))) {
        result.plan.flows.push_back({*x, *y, w, direct});
        continue;
      }
      to_A[*x] += w;
      from_A[*y] += w;
    } else if (x) {
      to_A[*x] += w;
    } else if (y) {
      from_A[*y] += w;
    }
  }
  for (const auto& [x, w] : to_A) result.plan.to_A.push_back({x, w, pair.dist_to_A(x)});
  for (const auto& [y, w] : from_A) result.plan.from_A.push_back({y, w, pair.dist_to_A(y)});
  result.plan.cost = plan_cost(result.plan);
  result.distance = root(result.plan.cost, p);
  return result;
}

/// W_p^A on a network with explicit A source and A sink nodes: atoms of mu
/// ship to atoms of nu at d^p or into A at d(x, A)^p, atoms of nu are fed
/// from A at d(y, A)^p. Reference formulation for partial_wasserstein.
template <MetricPair Pair>
ExtReal partial_wasserstein_direct(const DiscreteMeasure<Pair>& mu, const DiscreteMeasure<Pair>& nu,
                                   Exponent p) {
  using Point = point_t<Pair>;
  detail::require_same_pair(mu, nu);
  detail::require_finite_p(p);
  const Pair& pair = mu.pair();
  std::vector<Point> xs, ys;
  std::vector<ExtReal> a, b;
  detail::split_support(mu.atoms(), xs, a);
  detail::split_support(nu.atoms(), ys, b);
  const std::size_t n = xs.size(), m = ys.size();
  // Sources: atoms of mu, then A with supply |nu|. Sinks: atoms of nu, then
  // A with demand |mu|.
  a.push_back(nu.total_mass());
  b.push_back(mu.total_mass());
  auto powered = [&](const ExtReal& d) { return d.is_finite() ? pow(d, p) : d; };
  std::vector<ExtReal> cost((n + 1) * (m + 1), ExtReal(0));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= m; ++j) {
      ExtReal& c = cost[i * (m + 1) + j];
      if (i < n && j < m) c = powered(pair.dist(xs[i], ys[j]));
      else if (i < n) c = powered(pair.dist_to_A(xs[i]));
      else if (j < m) c = powered(pair.dist_to_A(ys[j]));
    }
  auto sol = detail::solve_bipartite(a, b, cost);
  if (!sol.feasible) return ExtReal::infinity();
  ExtReal total = 0;
  for (const auto& [i, j, w] : sol.flows) total += w * cost[i * (m + 1) + j];
  return root(total, p);
}

/// W_1^{+-}(mu, nu) = W_1(mu+ + nu-, mu- + nu+), evaluated on the given
/// parts, which need not be in Jordan form.
template <MetricPair Pair>
TransportResult<point_t<Pair>> signed_w1(const DiscreteMeasure<Pair>& mu_plus,
                                         const DiscreteMeasure<Pair>& mu_minus,
                                         const DiscreteMeasure<Pair>& nu_plus,
                                         const DiscreteMeasure<Pair>& nu_minus) {
  return wasserstein_measures(mu_plus + nu_minus, mu_minus + nu_plus, Exponent(1));
}

template <MetricPair Pair>
TransportResult<point_t<Pair>> signed_w1(const SignedDiscreteMeasure<Pair>& mu,
                                         const SignedDiscreteMeasure<Pair>& nu) {
  return signed_w1(mu.plus(), mu.minus(), nu.plus(), nu.minus());
}

/// Partial W_1 between mu+ + nu- and nu+ + mu-.
template <MetricPair Pair>
TransportResult<point_t<Pair>> signed_partial_w1(const SignedDiscreteMeasure<Pair>& mu,
                                                 const SignedDiscreteMeasure<Pair>& nu) {
  if (!same_pair(mu.pair_ptr(), nu.pair_ptr()))
    throw invalid_input("measures live on different metric pairs");
  return partial_wasserstein(mu.plus() + nu.minus(), nu.plus() + mu.minus(), Exponent(1));
}

template <class Point>
struct TransshipmentResult {
  ExtReal cost;
  std::vector<Flow<Point>> flows;
};

namespace detail {

/// Minimum cost flow meeting net supplies on a complete uncapacitated
/// network, by a max-flow start followed by negative cycle cancelling.
template <class Value>
std::optional<std::vector<std::vector<Value>>> cancel_cycles(const std::vector<Value>& supply,
                                                             const std::vector<std::vector<std::optional<Value>>>& cost) {
  const std::size_t n = supply.size();
  const std::size_t S = n, T = n + 1, N = n + 2;
  Value total(0);
  for (const auto& s : supply)
    if (s > Value(0)) total += s;
  Value eps(0);
  if constexpr (std::is_floating_point_v<Value>) eps = Value(1e-12) * std::max(Value(1), total);

  // cap[u][v] residual capacities on a dense graph.
  std::vector<std::vector<Value>> cap(N, std::vector<Value>(N, Value(0)));
  std::vector<std::vector<Value>> flow(n, std::vector<Value>(n, Value(0)));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && cost[u][v]) cap[u][v] = total;
    if (supply[u] > Value(0)) cap[S][u] = supply[u];
    if (supply[u] < Value(0)) cap[u][T] = -supply[u];
  }
  auto push = [&](std::size_t u, std::size_t v, const Value& amount) {
    cap[u][v] -= amount;
    cap[v][u] += amount;
    if (u < n && v < n) {
      // Net flow is kept on whichever direction is positive.
      if (flow[v][u] > Value(0)) {
        Value back = std::min(flow[v][u], amount);
        flow[v][u] -= back;
        flow[u][v] += amount - back;
      } else {
        flow[u][v] += amount;
      }
    }
  };

  // Edmonds-Karp.
  Value sent(0);
  for (;;) {
    std::vector<std::size_t> parent(N, N);
    parent[S] = S;
    std::queue<std::size_t> q;
    q.push(S);
    while (!q.empty() && parent[T] == N) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < N; ++v)
        if (parent[v] == N && cap[u][v] > eps) {
          parent[v] = u;
          q.push(v);
        }
    }
    if (parent[T] == N) break;
    Value amount = total;
    for (std::size_t v = T; v != S; v = parent[v]) amount = std::min(amount, cap[parent[v]][v]);
    for (std::size_t v = T; v != S; v = parent[v]) push(parent[v], v, amount);
    sent += amount;
  }
  if (sent < total - eps) return std::nullopt;

  // Residual arc u -> v (u, v < n) costs cost[u][v] when forward capacity
  // remains and -cost[v][u] when it undoes flow on v -> u.
  auto residual_cost = [&](std::size_t u, std::size_t v) -> std::optional<Value> {
    if (flow[v][u] > eps) return -*cost[v][u];
    if (cost[u][v] && cap[u][v] > eps) return *cost[u][v];
    return std::nullopt;
  };
  for (;;) {
    std::vector<Value> dist(n, Value(0));
    std::vector<std::size_t> pred(n, n);
    std::size_t last = n;
    for (std::size_t round = 0; round < n; ++round) {
      last = n;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
          if (u == v) continue;
          auto c = residual_cost(u, v);
          if (!c) continue;
          if (dist[u] + *c < dist[v] - eps) {
            dist[v] = dist[u] + *c;
            pred[v] = u;
            last = v;
          }
        }
      if (last == n) break;
    }
    if (last == n) break;
    std::size_t v = last;
    for (std::size_t k = 0; k < n && v != n; ++k) v = pred[v];
    if (v == n) break;
    std::vector<std::size_t> cycle{v};
    for (std::size_t u = pred[v]; u != v; u = pred[u]) cycle.push_back(u);
    std::reverse(cycle.begin(), cycle.end());
    // cycle[k] -> cycle[k + 1] are residual arcs.
    Value cycle_cost(0);
    Value amount = total;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      std::size_t a = cycle[k], b = cycle[(k + 1) % cycle.size()];
      cycle_cost += *residual_cost(a, b);
      Value room = flow[b][a] > eps ? flow[b][a] : cap[a][b];
      amount = std::min(amount, room);
    }
    if (!(cycle_cost < -eps) || !(amount > eps)) break;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      std::size_t a = cycle[k], b = cycle[(k + 1) % cycle.size()];
      push(a, b, amount);
    }
  }
  return flow;
}

}  // namespace detail

/// Minimum cost flow with net supply s(x) at each point (positive = source)
/// and per-unit arc cost d on every ordered pair of points. Supplies must
/// sum to zero; otherwise the result is +inf.
template <MetricPair Pair>
TransshipmentResult<point_t<Pair>> min_cost_transshipment(const Pair& pair,
                                                          const std::map<point_t<Pair>, ExtReal>& supplies) {
  using Point = point_t<Pair>;
  TransshipmentResult<Point> out;
  std::vector<Point> pts;
  std::vector<ExtReal> s;
  ExtReal balance = 0, positive = 0;
  for (const auto& [x, w] : supplies) {
    if (!w.is_finite()) throw invalid_input("supply must be finite");
    if (w.is_zero()) continue;
    pts.push_back(x);
    s.push_back(w);
    balance += w;
    if (w.sign() > 0) positive += w;
  }
  if (!detail::same_total(balance + positive, positive)) {
    out.cost = ExtReal::infinity();
    return out;
  }
  const std::size_t n = pts.size();
  std::vector<std::vector<ExtReal>> d(n, std::vector<ExtReal>(n));
  bool exact = true;
  for (const auto& w : s) exact = exact && w.is_exact();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      d[u][v] = pair.dist(pts[u], pts[v]);
      exact = exact && (!d[u][v].is_finite() || d[u][v].is_exact());
    }

  auto run = [&]<class Value>(Value (*convert)(const ExtReal&), ExtReal (*back)(const Value&)) {
    std::vector<Value> supply;
    for (const auto& w : s) supply.push_back(convert(w));
    if constexpr (std::is_floating_point_v<Value>) {
      // Rebalance the rounding residue onto the largest supply.
      Value sum(0);
      for (const auto& w : supply) sum += w;
      if (!supply.empty())
        *std::max_element(supply.begin(), supply.end(),
                          [](Value a, Value b) { return std::fabs(a) < std::fabs(b); }) -= sum;
    }
    std::vector<std::vector<std::optional<Value>>> c(n, std::vector<std::optional<Value>>(n));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && d[u][v].is_finite()) c[u][v] = convert(d[u][v]);
    auto flow = detail::cancel_cycles<Value>(supply, c);
    if (!flow) {
      out.cost = ExtReal::infinity();
      return;
    }
    Value eps(0);
    if constexpr (std::is_floating_point_v<Value>) eps = Value(1e-12) * std::max(Value(1), convert(positive));
    out.cost = 0;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if ((*flow)[u][v] > eps) {
          ExtReal w = back((*flow)[u][v]);
          out.flows.push_back({pts[u], pts[v], w, d[u][v]});
          out.cost += w * d[u][v];
        }
  };
  if (exact) {
    run(detail::as_rational, detail::from_rational);
  } else {
    run(detail::as_double, detail::from_double);
  }
  return out;
}

/// W_1 in transshipment form: net supply mu - nu per point.
template <MetricPair Pair>
ExtReal transshipment_w1(const DiscreteMeasure<Pair>& mu, const DiscreteMeasure<Pair>& nu) {
  detail::require_same_pair(mu, nu);
  if (!detail::same_total(mu.total_mass(), nu.total_mass())) return ExtReal::infinity();
  std::map<point_t<Pair>, ExtReal> net;
  for (const auto& [x, w] : mu.atoms()) net[x] += w;
  for (const auto& [y, w] : nu.atoms()) net[y] -= w;
  return min_cost_transshipment(mu.pair(), net).cost;
}

/// Min-cost flow with net supply (mu+ - mu-) - (nu+ - nu-) per point.
template <MetricPair Pair>
ExtReal signed_transshipment_w1(const SignedDiscreteMeasure<Pair>& mu,
                                const SignedDiscreteMeasure<Pair>& nu) {
  if (!same_pair(mu.pair_ptr(), nu.pair_ptr()))
    throw invalid_input("measures live on different metric pairs");
  if (!detail::same_total(mu.total_mass(), nu.total_mass())) return ExtReal::infinity();
  std::map<point_t<Pair>, ExtReal> net;
  for (const auto& [x, w] : mu.plus().atoms()) net[x] += w;
  for (const auto& [x, w] : mu.minus().atoms()) net[x] -= w;
  for (const auto& [x, w] : nu.plus().atoms()) net[x] -= w;
  for (const auto& [x, w] : nu.minus().atoms()) net[x] += w;
  return min_cost_transshipment(mu.pair(), net).cost;
}

/// (M+(X, A), +, W_1) or, when `relative`, the partial W_1^A.
template <MetricPair Pair>
class MeasureMonoid {
 public:
  using element_type = DiscreteMeasure<Pair>;

  explicit MeasureMonoid(std::shared_ptr<const Pair> pair, bool relative = false)
      : pair_(std::move(pair)), relative_(relative) {}

  DiscreteMeasure<Pair> zero() const { return DiscreteMeasure<Pair>(pair_); }
  DiscreteMeasure<Pair> add(const DiscreteMeasure<Pair>& a, const DiscreteMeasure<Pair>& b) const {
    return a + b;
  }
  ExtReal dist(const DiscreteMeasure<Pair>& a, const DiscreteMeasure<Pair>& b) const {
    return relative_ ? partial_wasserstein(a, b, Exponent(1)).distance
                     : wasserstein_measures(a, b, Exponent(1)).distance;
  }

 private:
  std::shared_ptr<const Pair> pair_;
  bool relative_;
};

}  // namespace wass
