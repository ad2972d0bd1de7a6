#pragma once

// Successive shortest augmenting paths with node potentials. Arc costs must
// be nonnegative, so zero potentials are feasible at the start and every
// shortest-path search runs Dijkstra on nonnegative reduced costs.
//
// Value is Rational (exact) or double. For doubles, residual capacities at
// or below `eps` are treated as saturated.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace wass::flow {

template <class Value>
class MinCostFlow {
 public:
  struct Arc {
    std::size_t from, to;
    Value capacity;
    Value cost;
    Value flow;
  };

  struct Outcome {
    Value flow;
    Value cost;
  };

  explicit MinCostFlow(std::size_t nodes) : adj_(nodes), potential_(nodes, Value(0)) {}

  std::size_t node_count() const { return adj_.size(); }

  /// Adds u -> v; returns the arc id. cost must be >= 0.
  std::size_t add_arc(std::size_t u, std::size_t v, Value capacity, Value cost) {
    if (cost < Value(0)) throw std::invalid_argument("negative arc cost");
    std::size_t id = arcs_.size();
    arcs_.push_back({u, v, capacity, cost, Value(0)});
    arcs_.push_back({v, u, Value(0), -cost, Value(0)});
    adj_[u].push_back(id);
    adj_[v].push_back(id + 1);
    return id;
  }

  const Arc& arc(std::size_t id) const { return arcs_[id]; }
  const Value& flow(std::size_t id) const { return arcs_[id].flow; }

  /// Reduced costs cost(u, v) + potential[u] - potential[v] are >= 0 on every
  /// residual arc once solve() returns.
  const std::vector<Value>& potentials() const { return potential_; }

  /// Pushes up to `required` units from s to t at minimum cost.
  Outcome solve(std::size_t s, std::size_t t, const Value& required, const Value& eps = Value(0)) {
    const std::size_t n = adj_.size();
    Outcome out{Value(0), Value(0)};
    std::vector<Value> dist(n);
    std::vector<char> reached(n), done(n);
    std::vector<std::size_t> via(n);

    while (out.flow < required && residual_positive(required - out.flow, eps)) {
      std::fill(reached.begin(), reached.end(), 0);
      std::fill(done.begin(), done.end(), 0);
      using Entry = std::pair<Value, std::size_t>;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
      dist[s] = Value(0);
      reached[s] = 1;
      heap.emplace(Value(0), s);
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u] || d != dist[u]) continue;
        done[u] = 1;
        for (std::size_t id : adj_[u]) {
          const Arc& a = arcs_[id];
          if (!residual_positive(a.capacity - a.flow, eps)) continue;
          Value reduced = a.cost + potential_[u] - potential_[a.to];
          if constexpr (std::is_floating_point_v<Value>) {
            if (reduced < Value(0)) reduced = Value(0);
          }
          Value cand = d + reduced;
          if (!reached[a.to] || cand < dist[a.to]) {
            dist[a.to] = cand;
            reached[a.to] = 1;
            via[a.to] = id;
            heap.emplace(cand, a.to);
          }
        }
      }
      if (!reached[t]) break;

      const Value dt = dist[t];
      for (std::size_t v = 0; v < n; ++v)
        potential_[v] += (reached[v] && dist[v] < dt) ? dist[v] : dt;

      Value push = required - out.flow;
      for (std::size_t v = t; v != s; v = arcs_[via[v]].from) {
        const Arc& a = arcs_[via[v]];
        Value room = a.capacity - a.flow;
        if (room < push) push = room;
      }
      for (std::size_t v = t; v != s; v = arcs_[via[v]].from) {
        std::size_t id = via[v];
        arcs_[id].flow += push;
        arcs_[id ^ 1U].flow -= push;
        out.cost += push * arcs_[id].cost;
      }
      out.flow += push;
    }
    return out;
  }

 private:
  static bool residual_positive(const Value& room, const Value& eps) { return room > eps; }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Value> potential_;
};

}  // namespace wass::flow
