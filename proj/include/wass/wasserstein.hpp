#pragma once

// W_p between finite diagrams on a metric pair.
//
// A matching pairs points of alpha with points of beta or sends them into A.
// Its p-cost is the l^p norm of the per-leg costs, where a real pair (x, y)
// costs d_p(x, y) (which already accounts for a single detour through A) and
// an A-leg costs d(x, A). Minimising over matchings reduces to a square
// assignment problem of size |alpha| + |beta| with dummy rows and columns.

#include "wass/assignment.hpp"
#include "wass/diagram.hpp"

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace wass {

template <class Point>
struct MatchedPair {
  Point from;
  Point to;
  ExtReal cost;
};

template <class Point>
struct ToA {
  Point point;
  ExtReal cost;
};

template <class Point>
struct Matching {
  std::vector<MatchedPair<Point>> real_pairs;
  std::vector<ToA<Point>> to_A_source;  // points of the source sent to A
  std::vector<ToA<Point>> to_A_target;  // points of the target drawn from A
  ExtReal cost;
  Exponent p;

  bool empty() const {
    return real_pairs.empty() && to_A_source.empty() && to_A_target.empty();
  }
};

template <class Point>
struct WassersteinResult {
  ExtReal distance;
  Matching<Point> matching;
};

/// l^p aggregate of the costs stored in the matching.
template <class Point>
ExtReal matching_cost(const Matching<Point>& m) {
  std::vector<ExtReal> legs;
  legs.reserve(m.real_pairs.size() + m.to_A_source.size() + m.to_A_target.size());
  for (const auto& e : m.real_pairs) legs.push_back(e.cost);
  for (const auto& e : m.to_A_source) legs.push_back(e.cost);
  for (const auto& e : m.to_A_target) legs.push_back(e.cost);
  for (const auto& c : legs)
    if (c.sign() < 0) throw invalid_input("matching has a negative leg cost");
  return lp_norm(legs, m.p);
}

/// Recomputes every leg cost from the pair's geometry and aggregates them.
/// Throws if a matched point lies in A or a stored leg cost disagrees with
/// the geometry beyond `tol`.
template <MetricPair Pair>
ExtReal matching_cost(const Pair& pair, const Matching<point_t<Pair>>& m, double tol = 1e-9) {
  std::vector<ExtReal> legs;
  auto check = [&](const point_t<Pair>& x) {
    if (pair.in_A(x)) throw invalid_input("matching contains a point of A");
  };
  auto push = [&](ExtReal c, const ExtReal& stored) {
    if (!approx_equal(c, stored, tol)) throw invalid_input("matching leg cost disagrees with the metric");
    legs.push_back(std::move(c));
  };
  for (const auto& e : m.real_pairs) {
    check(e.from);
    check(e.to);
    push(strengthened_dist(pair, m.p, e.from, e.to), e.cost);
  }
  for (const auto& e : m.to_A_source) {
    check(e.point);
    push(pair.dist_to_A(e.point), e.cost);
  }
  for (const auto& e : m.to_A_target) {
    check(e.point);
    push(pair.dist_to_A(e.point), e.cost);
  }
  return lp_norm(legs, m.p);
}

/// Whether the matching's marginals are alpha and beta (modulo A).
template <MetricPair Pair>
bool is_matching_between(const Matching<point_t<Pair>>& m, const Diagram<Pair>& alpha,
                         const Diagram<Pair>& beta) {
  Diagram<Pair> src(alpha.pair_ptr()), dst(beta.pair_ptr());
  for (const auto& e : m.real_pairs) {
    src.insert(e.from);
    dst.insert(e.to);
  }
  for (const auto& e : m.to_A_source) src.insert(e.point);
  for (const auto& e : m.to_A_target) dst.insert(e.point);
  return src == alpha && dst == beta;
}

namespace detail {

template <class Cost>
std::vector<std::size_t> optimal_rows(const std::vector<ExtReal>& cells, std::size_t n,
                                      Cost (*convert)(const ExtReal&), bool& feasible) {
  assignment::CostMatrix<Cost> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (const auto& v = cells[i * n + j]; v.is_finite()) c(i, j) = convert(v);
  auto sol = assignment::solve_lex_min_assignment(c);
  feasible = sol.feasible;
  return sol.row_to_col;
}

inline Rational as_rational(const ExtReal& x) { return x.rational(); }
inline double as_double(const ExtReal& x) { return x.to_double(); }

}  // namespace detail

/// Exact W_p with an optimal matching as certificate. Returns +inf with an
/// empty matching when every matching has infinite cost.
template <MetricPair Pair>
WassersteinResult<point_t<Pair>> wasserstein_p(const Diagram<Pair>& alpha,
                                               const Diagram<Pair>& beta, Exponent p) {
  using Point = point_t<Pair>;
  if (!same_pair(alpha.pair_ptr(), beta.pair_ptr()))
    throw invalid_input("diagrams live on different metric pairs");
  const Pair& pair = alpha.pair();
  const std::vector<Point> xs = alpha.expanded();
  const std::vector<Point> ys = beta.expanded();
  const std::size_t n = xs.size(), m = ys.size(), size = n + m;

  WassersteinResult<Point> result;
  result.matching.p = p;
  result.distance = 0;
  result.matching.cost = 0;
  if (size == 0) return result;

  // Rows: xs then m dummies. Columns: ys then n dummies.
  std::vector<ExtReal> to_A_x(n), to_A_y(m);
  for (std::size_t i = 0; i < n; ++i) to_A_x[i] = pair.dist_to_A(xs[i]);
  for (std::size_t j = 0; j < m; ++j) to_A_y[j] = pair.dist_to_A(ys[j]);
  std::vector<ExtReal> cost(size * size, ExtReal(0));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      ExtReal& c = cost[i * size + j];
      if (i < n && j < m) {
        c = strengthened_dist(pair, p, xs[i], ys[j]);
      } else if (i < n) {
        c = to_A_x[i];
      } else if (j < m) {
        c = to_A_y[j];
      }
    }
  }

  std::vector<std::size_t> rows;
  bool feasible = false;
  if (p.is_infinite()) {
    std::vector<ExtReal> candidates;
    for (const auto& c : cost)
      if (c.is_finite()) candidates.push_back(c);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    assignment::CostMatrix<ExtReal> matrix(size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        if (cost[i * size + j].is_finite()) matrix(i, j) = cost[i * size + j];
    auto b = assignment::bottleneck_assignment(matrix, candidates);
    feasible = b.feasible;
    rows = std::move(b.row_to_col);
  } else {
    // Minimise the sum of p-th powers; exact kernel when every power is exact.
    std::vector<ExtReal> powers(cost.size());
    bool all_exact = true;
    for (std::size_t k = 0; k < cost.size(); ++k) {
      powers[k] = cost[k].is_finite() ? pow(cost[k], p) : cost[k];
      if (powers[k].is_finite() && !powers[k].is_exact()) all_exact = false;
    }
    rows = all_exact ? detail::optimal_rows<Rational>(powers, size, detail::as_rational, feasible)
                     : detail::optimal_rows<double>(powers, size, detail::as_double, feasible);
  }

  if (!feasible) {
    result.distance = ExtReal::infinity();
    result.matching.cost = ExtReal::infinity();
    return result;
  }

  auto& matching = result.matching;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = rows[i];
    const ExtReal& c = cost[i * size + j];
    if (i < n && j < m) {
      matching.real_pairs.push_back({xs[i], ys[j], c});
    } else if (i < n) {
      matching.to_A_source.push_back({xs[i], c});
    } else if (j < m) {
      matching.to_A_target.push_back({ys[j], c});
    }
  }
  std::sort(matching.to_A_target.begin(), matching.to_A_target.end(),
            [](const auto& a, const auto& b) { return a.point < b.point; });
  matching.cost = matching_cost(matching);
  result.distance = matching.cost;
  return result;
}

/// Reference value by enumerating every matching: each point of alpha goes
/// to a distinct point of beta or to A, leftover points of beta come from A.
/// Limited to |alpha| + |beta| <= 12.
template <MetricPair Pair>
ExtReal brute_force_wasserstein(const Diagram<Pair>& alpha, const Diagram<Pair>& beta,
                                Exponent p) {
  using Point = point_t<Pair>;
  if (!same_pair(alpha.pair_ptr(), beta.pair_ptr()))
    throw invalid_input("diagrams live on different metric pairs");
  if (alpha.size() + beta.size() > 12)
    throw refused_computation("brute-force matching enumeration is limited to 12 points");
  const Pair& pair = alpha.pair();
  const std::vector<Point> xs = alpha.expanded();
  const std::vector<Point> ys = beta.expanded();

  ExtReal best = ExtReal::infinity();
  std::vector<char> taken(ys.size(), 0);
  std::vector<ExtReal> legs;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (i == xs.size()) {
      std::size_t mark = legs.size();
      for (std::size_t j = 0; j < ys.size(); ++j)
        if (!taken[j]) legs.push_back(pair.dist_to_A(ys[j]));
      best = min(best, lp_norm(legs, p));
      legs.resize(mark);
      return;
    }
    legs.push_back(pair.dist_to_A(xs[i]));
    visit(i + 1);
    legs.pop_back();
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (taken[j]) continue;
      taken[j] = 1;
      legs.push_back(strengthened_dist(pair, p, xs[i], ys[j]));
      visit(i + 1);
      legs.pop_back();
      taken[j] = 0;
    }
  };
  visit(0);
  return best;
}

/// W_p(alpha + gamma, beta + gamma) - W_p(alpha, beta). Never positive beyond
/// rounding; zero whenever W_p is translation invariant.
template <MetricPair Pair>
ExtReal check_translation_invariance(const Diagram<Pair>& alpha, const Diagram<Pair>& beta,
                                     const Diagram<Pair>& gamma, Exponent p) {
  ExtReal shifted = wasserstein_p(alpha + gamma, beta + gamma, p).distance;
  ExtReal base = wasserstein_p(alpha, beta, p).distance;
  return shifted - base;
}

/// Symmetric matrix of pairwise W_p values; cells are computed concurrently.
template <MetricPair Pair>
std::vector<std::vector<ExtReal>> distance_matrix(const std::vector<Diagram<Pair>>& diagrams,
                                                  Exponent p, unsigned threads = 0) {
  const std::size_t k = diagrams.size();
  for (std::size_t i = 1; i < k; ++i)
    if (!same_pair(diagrams[0].pair_ptr(), diagrams[i].pair_ptr()))
      throw invalid_input("diagrams live on different metric pairs");
  std::vector<std::vector<ExtReal>> out(k, std::vector<ExtReal>(k, ExtReal(0)));
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) cells.emplace_back(i, j);

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, cells.size())));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t c = t; c < cells.size(); c += threads) {
        auto [i, j] = cells[c];
        out[i][j] = wasserstein_p(diagrams[i], diagrams[j], p).distance;
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) out[j][i] = out[i][j];
  return out;
}

}  // namespace wass
