#pragma once

// Square assignment kernels over a dense cost matrix with forbidden cells.
//
// solve_min_assignment: shortest augmenting paths with row/column potentials
// (Hungarian / Jonker-Volgenant family), O(n^3). Works for any ordered field
// type; used with Rational for exact results and double otherwise.
//
// bottleneck_assignment: minimises the largest used entry by binary search
// over the sorted entries with a Hopcroft-Karp feasibility test.
//
// lex_min_perfect_matching: among the perfect matchings of a bipartite
// graph, the one whose row -> column vector is lexicographically smallest.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <type_traits>
#include <vector>

namespace wass::assignment {

inline constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

/// n x n matrix; an empty optional marks a forbidden (infinite) cell.
template <class Cost>
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n) : n_(n), cells_(n * n) {}
  std::size_t size() const { return n_; }
  std::optional<Cost>& operator()(std::size_t i, std::size_t j) { return cells_[i * n_ + j]; }
  const std::optional<Cost>& operator()(std::size_t i, std::size_t j) const {
    return cells_[i * n_ + j];
  }

 private:
  std::size_t n_;
  std::vector<std::optional<Cost>> cells_;
};

template <class Cost>
struct Solution {
  bool feasible = false;
  std::vector<std::size_t> row_to_col;
  // Reduced cost c(i, j) - row_potential[i] - col_potential[j] is >= 0 on
  // every allowed cell and 0 on the assignment.
  std::vector<Cost> row_potential;
  std::vector<Cost> col_potential;
};

template <class Cost>
Solution<Cost> solve_min_assignment(const CostMatrix<Cost>& c) {
  const std::size_t n = c.size();
  Solution<Cost> out;
  // 1-based; column 0 is the virtual start of each augmenting search.
  std::vector<Cost> u(n + 1, Cost(0)), v(n + 1, Cost(0)), minv(n + 1, Cost(0));
  std::vector<std::size_t> owner(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1), has_min(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    owner[0] = i;
    std::size_t j0 = 0;
    std::fill(used.begin(), used.end(), 0);
    std::fill(has_min.begin(), has_min.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = owner[j0];
      bool have_delta = false;
      Cost delta(0);
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (const auto& cell = c(i0 - 1, j - 1)) {
          Cost cur = *cell - u[i0] - v[j];
          if (!has_min[j] || cur < minv[j]) {
            minv[j] = cur;
            has_min[j] = 1;
            way[j] = j0;
          }
        }
        if (has_min[j] && (!have_delta || minv[j] < delta)) {
          delta = minv[j];
          have_delta = true;
          j1 = j;
        }
      }
      if (!have_delta) return out;  // no perfect matching avoids forbidden cells
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[owner[j]] += delta;
          v[j] -= delta;
        } else if (has_min[j]) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  out.feasible = true;
  out.row_to_col.assign(n, kUnassigned);
  for (std::size_t j = 1; j <= n; ++j) out.row_to_col[owner[j] - 1] = j - 1;
  out.row_potential.assign(u.begin() + 1, u.end());
  out.col_potential.assign(v.begin() + 1, v.end());
  return out;
}

/// Rows' allowed columns, each list sorted ascending.
using Adjacency = std::vector<std::vector<std::size_t>>;

/// Maximum bipartite matching (Hopcroft-Karp). Returns row -> column with
/// kUnassigned for unmatched rows.
inline std::vector<std::size_t> maximum_matching(const Adjacency& adj, std::size_t cols) {
  const std::size_t rows = adj.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> row_match(rows, kUnassigned), col_match(cols, kUnassigned);
  std::vector<std::size_t> level(rows);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_match[r] == kUnassigned) {
        level[r] = 0;
        q.push(r);
      } else {
        level[r] = kInf;
      }
    }
    while (!q.empty()) {
      std::size_t r = q.front();
      q.pop();
      for (std::size_t c : adj[r]) {
        std::size_t next = col_match[c];
        if (next == kUnassigned) {
          found = true;
        } else if (level[next] == kInf) {
          level[next] = level[r] + 1;
          q.push(next);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> it(rows);
  auto dfs = [&](auto&& self, std::size_t r) -> bool {
    for (; it[r] < adj[r].size(); ++it[r]) {
      std::size_t c = adj[r][it[r]];
      std::size_t next = col_match[c];
      if (next == kUnassigned || (level[next] == level[r] + 1 && self(self, next))) {
        row_match[r] = c;
        col_match[c] = r;
        ++it[r];
        return true;
      }
    }
    level[r] = kInf;
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t r = 0; r < rows; ++r)
      if (row_match[r] == kUnassigned) dfs(dfs, r);
  }
  return row_match;
}

/// Starting from any perfect matching `initial` of the square graph `adj`,
/// returns the lexicographically smallest perfect matching. Row i is fixed to
/// the smallest column that still admits a completion, found by an
/// alternating-path search over the unfixed part.
inline std::vector<std::size_t> lex_min_perfect_matching(const Adjacency& adj,
                                                         std::vector<std::size_t> initial) {
  const std::size_t n = adj.size();
  std::vector<std::size_t>& row_to_col = initial;
  std::vector<std::size_t> col_to_row(n, kUnassigned);
  for (std::size_t r = 0; r < n; ++r) col_to_row[row_to_col[r]] = r;

  std::vector<char> fixed_col(n, 0), seen(n);
  std::vector<std::size_t> parent_row(n);
  std::queue<std::size_t> queue;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : adj[i]) {
      if (fixed_col[j]) continue;
      if (row_to_col[i] == j) break;
      // Give j to i. Row r = owner of j loses its column and column j0 of i
      // becomes free; look for an alternating path r ~> j0 avoiding fixed
      // columns and j itself.
      const std::size_t r = col_to_row[j];
      const std::size_t j0 = row_to_col[i];
      std::fill(seen.begin(), seen.end(), 0);
      while (!queue.empty()) queue.pop();
      queue.push(r);
      bool found = false;
      while (!queue.empty() && !found) {
        std::size_t u = queue.front();
        queue.pop();
        for (std::size_t c : adj[u]) {
          if (fixed_col[c] || c == j || seen[c]) continue;
          seen[c] = 1;
          parent_row[c] = u;
          if (c == j0) {
            found = true;
            break;
          }
          queue.push(col_to_row[c]);
        }
      }
      if (!found) continue;
      std::size_t c = j0;
      for (;;) {
        std::size_t u = parent_row[c];
        std::size_t prev = row_to_col[u];
        row_to_col[u] = c;
        col_to_row[c] = u;
        if (u == r) break;
        c = prev;
      }
      row_to_col[i] = j;
      col_to_row[j] = i;
      break;
    }
    fixed_col[row_to_col[i]] = 1;
  }
  return row_to_col;
}

/// Tightness of a reduced cost: exact zero for exact types, a small absolute
/// slack for floating point.
template <class Cost>
bool is_tight(const Cost& reduced, const Cost& slack) {
  if constexpr (std::is_floating_point_v<Cost>) {
    return std::fabs(reduced) <= slack;
  } else {
    (void)slack;
    return reduced == Cost(0);
  }
}

/// Minimum-cost assignment whose row -> column vector is lexicographically
/// smallest among all optimal assignments. Optimal assignments are exactly
/// the perfect matchings on cells with zero reduced cost under optimal
/// potentials.
template <class Cost>
Solution<Cost> solve_lex_min_assignment(const CostMatrix<Cost>& c) {
  Solution<Cost> sol = solve_min_assignment(c);
  if (!sol.feasible) return sol;
  const std::size_t n = c.size();
  Cost slack(0);
  if constexpr (std::is_floating_point_v<Cost>) {
    Cost scale(1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (const auto& cell = c(i, j)) scale = std::max(scale, std::fabs(*cell));
    slack = Cost(1e-12) * scale * static_cast<Cost>(n);
  }
  Adjacency tight(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& cell = c(i, j);
      if (!cell) continue;
      bool on_matching = sol.row_to_col[i] == j;
      if (on_matching || is_tight<Cost>(*cell - sol.row_potential[i] - sol.col_potential[j], slack))
        tight[i].push_back(j);
    }
  }
  sol.row_to_col = lex_min_perfect_matching(tight, std::move(sol.row_to_col));
  return sol;
}

struct BottleneckResult {
  bool feasible = false;
  std::size_t threshold_index = 0;
  std::vector<std::size_t> row_to_col;
};

/// Smallest candidate t such that the cells with value <= t contain a
/// perfect matching, together with the lexicographically smallest such
/// matching. `candidates` must be sorted ascending.
template <class Value>
BottleneckResult bottleneck_assignment(const CostMatrix<Value>& c,
                                       const std::vector<Value>& candidates) {
  const std::size_t n = c.size();
  BottleneckResult out;
  auto graph_at = [&](std::size_t k) {
    Adjacency adj(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (const auto& cell = c(i, j); cell && !(candidates[k] < *cell)) adj[i].push_back(j);
    return adj;
  };
  auto perfect = [&](const Adjacency& adj) {
    auto m = maximum_matching(adj, n);
    bool ok = std::none_of(m.begin(), m.end(), [](std::size_t x) { return x == kUnassigned; });
    return std::pair{ok, m};
  };

  if (n == 0) {
    out.feasible = true;
    return out;
  }
  if (candidates.empty()) return out;
  if (!perfect(graph_at(candidates.size() - 1)).first) return out;

  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (perfect(graph_at(mid)).first) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  Adjacency adj = graph_at(lo);
  auto [ok, matching] = perfect(adj);
  out.feasible = ok;
  out.threshold_index = lo;
  out.row_to_col = lex_min_perfect_matching(adj, std::move(matching));
  return out;
}

}  // namespace wass::assignment
