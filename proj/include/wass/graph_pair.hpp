#pragma once

// Weighted graphs with the path p-metric rho_p(v, v') = min over paths of the
// l^p norm of the edge weights, and the metric pair it induces on a vertex
// subset A. rho_p is a p-metric, so W_p over this pair is translation
// invariant for every choice of A.

#include "wass/metric_pair.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace wass {

struct Vertex {
  std::size_t id = 0;
  friend constexpr auto operator<=>(Vertex, Vertex) = default;
};

/// Undirected graph with weights in [0, inf]. Vertex ids follow the sorted
/// order of vertex names once finalized.
class WeightedGraph {
 public:
  struct Edge {
    std::size_t u, v;
    ExtReal weight;
  };

  std::size_t add_vertex(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, names_.size());
    if (inserted) names_.push_back(name);
    return it->second;
  }

  void add_edge(const std::string& u, const std::string& v, ExtReal weight) {
    if (weight.sign() < 0) throw invalid_input("negative edge weight on " + u + " -- " + v);
    std::size_t a = add_vertex(u);
    std::size_t b = add_vertex(v);
    edges_.push_back({a, b, std::move(weight)});
  }

  /// Renumbers vertices so that ids follow lexicographic name order.
  void canonicalize() {
    std::vector<std::size_t> order(names_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return names_[a] < names_[b]; });
    std::vector<std::size_t> new_id(names_.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = i;
    std::vector<std::string> names(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) names[new_id[i]] = names_[i];
    names_ = std::move(names);
    for (auto& e : edges_) {
      e.u = new_id[e.u];
      e.v = new_id[e.v];
    }
    for (auto& [name, id] : index_) id = new_id[id];
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& name(std::size_t id) const { return names_.at(id); }
  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
};

/// All-pairs path p-metric. For finite p this runs Dijkstra on the p-th
/// powers of the weights and takes p-th roots at the end; for p = inf it
/// runs the minimax (bottleneck) variant. Unreachable pairs are +inf.
inline std::vector<std::vector<ExtReal>> graph_p_metric(const WeightedGraph& g, Exponent p) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::pair<std::size_t, ExtReal>>> adj(n);
  for (const auto& e : g.edges()) {
    if (e.weight.sign() < 0) throw invalid_input("negative edge weight");
    if (e.weight.is_inf()) continue;
    ExtReal w = p.is_infinite() ? e.weight : pow(e.weight, p);
    adj[e.u].emplace_back(e.v, w);
    adj[e.v].emplace_back(e.u, w);
  }

  auto combine = [&](const ExtReal& path, const ExtReal& w) {
    return p.is_infinite() ? max(path, w) : path + w;
  };

  std::vector<std::vector<ExtReal>> table(n, std::vector<ExtReal>(n, ExtReal::infinity()));
  for (std::size_t s = 0; s < n; ++s) {
    auto& best = table[s];
    std::vector<bool> done(n, false);
    best[s] = 0;
    using Entry = std::pair<ExtReal, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(ExtReal(0), s);
    while (!heap.empty()) {
      auto [cost, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = true;
      for (const auto& [v, w] : adj[u]) {
        ExtReal cand = combine(cost, w);
        if (cand < best[v]) {
          best[v] = cand;
          heap.emplace(cand, v);
        }
      }
    }
    if (!p.is_infinite())
      for (auto& c : best) c = root(c, p);
  }
  return table;
}

/// Reads "u v weight" lines; "inf" is an accepted weight. A line holding a
/// single token declares an isolated vertex; a line "@A v1 v2 ..." lists the
/// vertices of the subspace A. '#' starts a comment line.
struct GraphSpec {
  WeightedGraph graph;
  std::vector<std::string> subset;
};

inline GraphSpec parse_graph(std::istream& in, bool exact, const std::string& source = "graph") {
  GraphSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(t);
    if (parts.empty() || parts[0][0] == '#') continue;
    if (parts[0] == "@A") {
      for (std::size_t i = 1; i < parts.size(); ++i) {
        spec.graph.add_vertex(parts[i]);
        spec.subset.push_back(parts[i]);
      }
      continue;
    }
    if (parts.size() == 1) {
      spec.graph.add_vertex(parts[0]);
      continue;
    }
    if (parts.size() != 3) throw invalid_input(where() + "expected 'u v weight'");
    try {
      spec.graph.add_edge(parts[0], parts[1], ExtReal::parse(parts[2], exact));
    } catch (const invalid_input& e) {
      throw invalid_input(where() + e.what());
    }
  }
  spec.graph.canonicalize();
  return spec;
}

/// (V, rho_p, A) for a weighted graph.
class GraphPMetricPair {
 public:
  using point_type = Vertex;

  GraphPMetricPair(WeightedGraph graph, Exponent p, const std::vector<std::string>& subset)
      : data_(std::make_shared<Data>()) {
    data_->p = p;
    data_->in_A.assign(graph.size(), false);
    for (const auto& name : subset) {
      auto id = graph.find(name);
      if (!id) throw invalid_input("subset vertex '" + name + "' is not in the graph");
      data_->in_A[*id] = true;
    }
    data_->table = graph_p_metric(graph, p);
    const std::size_t n = graph.size();
    data_->to_A.assign(n, ExtReal::infinity());
    data_->projection.assign(n, std::nullopt);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t a = 0; a < n; ++a) {
        if (!data_->in_A[a]) continue;
        if (data_->table[v][a] < data_->to_A[v]) {
          data_->to_A[v] = data_->table[v][a];
          data_->projection[v] = Vertex{a};
        }
      }
    }
    data_->graph = std::move(graph);
  }

  ExtReal dist(Vertex u, Vertex v) const { return data_->table.at(u.id).at(v.id); }
  bool in_A(Vertex v) const { return data_->in_A.at(v.id); }
  ExtReal dist_to_A(Vertex v) const { return data_->to_A.at(v.id); }
  std::optional<Vertex> project_to_A(Vertex v) const { return data_->projection.at(v.id); }
  std::optional<Exponent> p_metric_certificate() const { return data_->p; }

  Exponent p() const { return data_->p; }
  const WeightedGraph& graph() const { return data_->graph; }
  std::size_t size() const { return data_->graph.size(); }
  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = Vertex{i};
    return out;
  }
  std::optional<Vertex> vertex(const std::string& name) const {
    auto id = data_->graph.find(name);
    if (!id) return std::nullopt;
    return Vertex{*id};
  }
  const std::string& name(Vertex v) const { return data_->graph.name(v.id); }

  friend bool operator==(const GraphPMetricPair& a, const GraphPMetricPair& b) {
    return a.data_ == b.data_;
  }

 private:
  struct Data {
    WeightedGraph graph;
    Exponent p;
    std::vector<bool> in_A;
    std::vector<std::vector<ExtReal>> table;
    std::vector<ExtReal> to_A;
    std::vector<std::optional<Vertex>> projection;
  };
  std::shared_ptr<Data> data_;
};

}  // namespace wass
