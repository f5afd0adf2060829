#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lqharm/errors.hpp"
#include "lqharm/scalar.hpp"

namespace lqharm {

using VertexIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<VertexIndex>;

inline constexpr std::int64_t kUnreachable = -1;

template <class T>
struct EdgeSpec {
  std::string u;
  std::string v;
  T weight;
};

/// Stored edge; a <= b by vertex index, a == b for a self-loop.
template <class T>
struct Edge {
  VertexIndex a;
  VertexIndex b;
  T weight;
  bool is_loop() const { return a == b; }
};

/// Finite undirected graph with positive symmetric weights. Vertices are
/// opaque string ids; their indices follow lexicographic id order, which is
/// also the canonical summation order. Immutable after construction.
template <class T>
class WeightedGraph {
 public:
  using scalar_type = T;

  WeightedGraph() = default;

  static WeightedGraph from_edges(std::vector<EdgeSpec<T>> specs);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::string& id(VertexIndex v) const { return ids_.at(v); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<VertexIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  VertexIndex index(std::string_view id) const {
    if (auto v = find(id)) return *v;
    throw InputError("unknown vertex '" + std::string(id) + "'");
  }

  const std::vector<Edge<T>>& edges() const { return edges_; }
  const Edge<T>& edge(EdgeIndex e) const { return edges_.at(e); }

  std::span<const VertexIndex> neighbors(VertexIndex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::span<const T> neighbor_weights(VertexIndex v) const {
    return {adj_weight_.data() + offsets_[v], adj_weight_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeIndex> incident_edges(VertexIndex v) const {
    return {adj_edge_.data() + offsets_[v], adj_edge_.data() + offsets_[v + 1]};
  }

  /// mu_xy, zero when xy is not an edge.
  T weight(VertexIndex x, VertexIndex y) const {
    auto row = neighbors(x);
    auto it = std::lower_bound(row.begin(), row.end(), y);
    if (it == row.end() || *it != y) return T(0);
    return adj_weight_[offsets_[x] + static_cast<std::size_t>(it - row.begin())];
  }

  /// mu_x = sum_y mu_xy, a self-loop counted once.
  const T& measure(VertexIndex v) const { return measure_.at(v); }
  std::span<const T> measures() const { return measure_; }

  T total_volume() const {
    T total(0);
    for (const T& m : measure_) total += m;
    return total;
  }

  /// Breadth-first distances from p; kUnreachable for other components.
  std::vector<std::int64_t> distances_from(VertexIndex p) const;

  /// Edge count of a shortest path, nullopt when x and y are disconnected.
  std::optional<std::size_t> distance(VertexIndex x, VertexIndex y) const {
    const auto d = distances_from(x)[y];
    if (d == kUnreachable) return std::nullopt;
    return static_cast<std::size_t>(d);
  }

  /// Closed ball {x : d(x, p) <= radius}.
  VertexSet ball(VertexIndex p, std::size_t radius) const;

  /// Vertices outside omega at distance exactly 1 from it.
  VertexSet boundary(const VertexSet& omega) const;

  /// Connected components of the subgraph induced on `subset` (all vertices
  /// when empty), each sorted, ordered by smallest member.
  std::vector<VertexSet> components(const VertexSet& subset = {}) const;

  bool is_connected() const { return components().size() <= 1; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<Edge<T>> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexIndex> adj_;
  std::vector<T> adj_weight_;
  std::vector<EdgeIndex> adj_edge_;
  std::vector<T> measure_;
};

/// Interior vertex set together with its computed boundary.
struct Domain {
  VertexSet interior;
  VertexSet boundary;

  template <class T>
  static Domain of(const WeightedGraph<T>& g, VertexSet interior) {
    std::sort(interior.begin(), interior.end());
    interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
    for (VertexIndex v : interior)
      if (v >= g.num_vertices()) throw InputError("domain vertex index out of range");
    Domain d;
    d.boundary = g.boundary(interior);
    d.interior = std::move(interior);
    return d;
  }

  /// Interior and boundary merged.
  VertexSet closure() const {
    VertexSet all;
    std::merge(interior.begin(), interior.end(), boundary.begin(), boundary.end(), std::back_inserter(all));
    return all;
  }
};

inline bool contains(const VertexSet& set, VertexIndex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

// ---------------------------------------------------------------------------

template <class T>
WeightedGraph<T> WeightedGraph<T>::from_edges(std::vector<EdgeSpec<T>> specs) {
  WeightedGraph g;
  std::vector<std::string> ids;
  ids.reserve(specs.size() * 2);
  for (const auto& s : specs) {
    if (s.u.empty() || s.v.empty()) throw InputError("empty vertex id in edge list");
    if (!(s.weight > 0)) throw InputError("edge " + s.u + "-" + s.v + " has non-positive weight");
    ids.push_back(s.u);
    ids.push_back(s.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<std::int32_t>::max()) throw InputError("graph too large");
  g.ids_ = std::move(ids);
  g.index_.reserve(g.ids_.size());
  for (std::size_t i = 0; i < g.ids_.size(); ++i) g.index_.emplace(g.ids_[i], static_cast<VertexIndex>(i));

  g.edges_.reserve(specs.size());
  for (auto& s : specs) {
    VertexIndex a = g.index_.at(s.u);
    VertexIndex b = g.index_.at(s.v);
    if (a > b) std::swap(a, b);
    g.edges_.push_back(Edge<T>{a, b, std::move(s.weight)});
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge<T>& l, const Edge<T>& r) { return std::pair(l.a, l.b) < std::pair(r.a, r.b); });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].a == g.edges_[i - 1].a && g.edges_[i].b == g.edges_[i - 1].b)
      throw InputError("multiple edge between '" + g.ids_[g.edges_[i].a] + "' and '" + g.ids_[g.edges_[i].b] +
                       "'; encode multiplicity in the weight");
  }

  const std::size_t n = g.ids_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : g.edges_) {
    ++degree[e.a];
    if (!e.is_loop()) ++degree[e.b];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  const std::size_t slots = g.offsets_[n];
  g.adj_.resize(slots);
  g.adj_weight_.resize(slots);
  g.adj_edge_.resize(slots);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeIndex ei = 0; ei < g.edges_.size(); ++ei) {
    const auto& e = g.edges_[ei];
    auto put = [&](VertexIndex from, VertexIndex to) {
      const std::size_t k = cursor[from]++;
      g.adj_[k] = to;
      g.adj_weight_[k] = e.weight;
      g.adj_edge_[k] = ei;
    };
    put(e.a, e.b);
    if (!e.is_loop()) put(e.b, e.a);
  }
  // Rows are filled in edge order; edges are sorted by (a, b), so rows are
  // sorted for neighbors b > v but need a sort for neighbors a < v.
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t lo = g.offsets_[v], hi = g.offsets_[v + 1];
    std::vector<std::size_t> order(hi - lo);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = lo + k;
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return g.adj_[l] < g.adj_[r]; });
    std::vector<VertexIndex> nb;
    std::vector<T> w;
    std::vector<EdgeIndex> ed;
    for (std::size_t k : order) {
      nb.push_back(g.adj_[k]);
      w.push_back(g.adj_weight_[k]);
      ed.push_back(g.adj_edge_[k]);
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      g.adj_[lo + k] = nb[k];
      g.adj_weight_[lo + k] = w[k];
      g.adj_edge_[lo + k] = ed[k];
    }
  }

  g.measure_.assign(n, T(0));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = g.offsets_[v]; k < g.offsets_[v + 1]; ++k) g.measure_[v] += g.adj_weight_[k];
  return g;
}

template <class T>
std::vector<std::int64_t> WeightedGraph<T>::distances_from(VertexIndex p) const {
  std::vector<std::int64_t> dist(num_vertices(), kUnreachable);
  std::deque<VertexIndex> queue;
  dist.at(p) = 0;
  queue.push_back(p);
  while (!queue.empty()) {
    const VertexIndex x = queue.front();
    queue.pop_front();
    for (VertexIndex y : neighbors(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

template <class T>
VertexSet WeightedGraph<T>::ball(VertexIndex p, std::size_t radius) const {
  const auto dist = distances_from(p);
  VertexSet out;
  for (VertexIndex v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreachable && static_cast<std::size_t>(dist[v]) <= radius) out.push_back(v);
  return out;
}

template <class T>
VertexSet WeightedGraph<T>::boundary(const VertexSet& omega) const {
  std::vector<char> inside(num_vertices(), 0);
  for (VertexIndex v : omega) inside.at(v) = 1;
  std::vector<char> mark(num_vertices(), 0);
  for (VertexIndex x : omega)
    for (VertexIndex y : neighbors(x))
      if (!inside[y]) mark[y] = 1;
  VertexSet out;
  for (VertexIndex v = 0; v < mark.size(); ++v)
    if (mark[v]) out.push_back(v);
  return out;
}

template <class T>
std::vector<VertexSet> WeightedGraph<T>::components(const VertexSet& subset) const {
  const std::size_t n = num_vertices();
  std::vector<char> allowed(n, subset.empty() ? 1 : 0);
  for (VertexIndex v : subset) allowed.at(v) = 1;
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> out;
  for (VertexIndex s = 0; s < n; ++s) {
    if (!allowed[s] || seen[s]) continue;
    VertexSet comp;
    std::deque<VertexIndex> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      const VertexIndex x = queue.front();
      queue.pop_front();
      comp.push_back(x);
      for (VertexIndex y : neighbors(x)) {
        if (allowed[y] && !seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// mu_x looked up by vertex id.
template <class T>
T vertex_measure(const WeightedGraph<T>& g, std::string_view id) {
  return g.measure(g.index(id));
}

/// Widening conversion rational -> float64.
WeightedGraph<double> to_float(const WeightedGraph<Rational>& g);

}  // namespace lqharm
