#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lqharm/graph.hpp"

namespace lqharm {

/// Lazy window generator for an infinite, locally finite graph.
///
/// `ball_edges(R)` must return every edge of the infinite graph with both
/// endpoints in B_{R+1}(root). Since every neighbor of a vertex in B_R lies
/// in B_{R+1}, this contains all edges incident to B_R, and the measures of
/// B_R computed from the window are the intrinsic ones.
template <class T>
struct GraphFamily {
  std::string name;
  std::string root;
  std::function<std::vector<EdgeSpec<T>>(std::size_t radius)> ball_edges;
  /// Largest radius the generator supports (exponent caps etc.).
  std::size_t max_radius = 0;
  /// Certified inf_x mu_x, when the family is non-degenerate.
  std::optional<T> measure_lower_bound;
};

/// A materialized window: the graph on B_{R+1}(root) and the domain B_R.
template <class T>
struct Window {
  WeightedGraph<T> graph;
  Domain domain;
  VertexIndex root = 0;
  std::size_t radius = 0;
};

template <class T>
Window<T> materialize(const GraphFamily<T>& fam, std::size_t radius) {
  if (radius > fam.max_radius)
    throw InputError("family '" + fam.name + "': radius " + std::to_string(radius) + " exceeds the cap " +
                     std::to_string(fam.max_radius));
  std::vector<EdgeSpec<T>> edges;
  try {
    edges = fam.ball_edges(radius);
  } catch (const Error& e) {
    throw InputError("family '" + fam.name + "' failed to generate radius " + std::to_string(radius) + ": " +
                     e.what());
  }
  Window<T> w;
  w.graph = WeightedGraph<T>::from_edges(std::move(edges));
  const auto root = w.graph.find(fam.root);
  if (!root) throw InputError("family '" + fam.name + "': generator did not emit the root '" + fam.root + "'");
  w.root = *root;
  w.radius = radius;
  const auto dist = w.graph.distances_from(w.root);
  VertexSet interior;
  for (VertexIndex v = 0; v < dist.size(); ++v) {
    if (dist[v] == kUnreachable || dist[v] > static_cast<std::int64_t>(radius) + 1)
      throw InputError("family '" + fam.name + "': vertex '" + w.graph.id(v) + "' lies outside B_{R+1}");
    if (dist[v] <= static_cast<std::int64_t>(radius)) interior.push_back(v);
  }
  w.domain = Domain::of(w.graph, std::move(interior));
  return w;
}

}  // namespace lqharm
