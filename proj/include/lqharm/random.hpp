#pragma once

// Seeded generators for property sweeps: connected weighted graphs,
// functions, domains and Dirichlet problems.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lqharm/dirichlet.hpp"
#include "lqharm/function.hpp"
#include "lqharm/graph.hpp"

namespace lqharm::random {

using Rng = std::mt19937_64;

struct GraphShape {
  std::size_t vertices = 20;
  std::size_t extra_edges = 15;  // beyond a spanning tree
  bool self_loops = true;
};

inline std::string vertex_name(std::size_t i) {
  std::string s = std::to_string(i);
  return "v" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

/// Positive weight: p/q with p in 1..9, q in 1..8; uniform in [0.1, 3] for float64.
template <class T>
T random_weight(Rng& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 8);
  if constexpr (is_exact_v<T>) {
    const int p = num(rng);
    Rational r(p, den(rng));
    r.canonicalize();
    return r;
  } else {
    return std::uniform_real_distribution<double>(0.1, 3.0)(rng);
  }
}

/// Value in [-range, range]; rationals with denominators up to 6.
template <class T>
T random_value(Rng& rng, int range = 10) {
  if constexpr (is_exact_v<T>) {
    const int d = std::uniform_int_distribution<int>(1, 6)(rng);
    Rational r(std::uniform_int_distribution<int>(-range * d, range * d)(rng), d);
    r.canonicalize();
    return r;
  } else {
    return std::uniform_real_distribution<double>(-range, range)(rng);
  }
}

/// Random connected graph: a random recursive tree plus extra distinct edges
/// and, optionally, a few self-loops.
template <class T>
WeightedGraph<T> random_connected_graph(Rng& rng, const GraphShape& shape = {}) {
  const std::size_t n = std::max<std::size_t>(shape.vertices, 2);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<EdgeSpec<T>> edges;
  auto add = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) return;
    edges.push_back({vertex_name(a), vertex_name(b), random_weight<T>(rng)});
  };
  for (std::size_t i = 1; i < n; ++i) add(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng), i);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t max_extra = n * (n - 1) / 2 - (n - 1);
  for (std::size_t k = 0; k < std::min(shape.extra_edges, max_extra);) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b || used.count({std::min(a, b), std::max(a, b)})) continue;
    add(a, b);
    ++k;
  }
  if (shape.self_loops) {
    const std::size_t loops = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t k = 0; k < loops; ++k) {
      const std::size_t a = pick(rng);
      add(a, a);
    }
  }
  return WeightedGraph<T>::from_edges(std::move(edges));
}

template <class T>
VertexFunction<T> random_function(Rng& rng, const WeightedGraph<T>& g, int range = 10) {
  VertexFunction<T> f(g.num_vertices());
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) f.set(v, random_value<T>(rng, range));
  return f;
}

template <class T>
VertexFunction<T> random_nonnegative(Rng& rng, const WeightedGraph<T>& g, int range = 10) {
  VertexFunction<T> f(g.num_vertices());
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) f.set(v, abs_value(random_value<T>(rng, range)));
  return f;
}

/// Function supported on a random subset of about `fraction` of the vertices.
template <class T>
VertexFunction<T> random_sparse(Rng& rng, const WeightedGraph<T>& g, double fraction, int range = 10) {
  VertexFunction<T> f(g.num_vertices());
  std::bernoulli_distribution keep(fraction);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) f.set(v, keep(rng) ? random_value<T>(rng, range) : T(0));
  return f;
}

/// Connected interior grown by random BFS from a random seed vertex, with
/// a nonempty vertex boundary.
template <class T>
Domain random_domain(Rng& rng, const WeightedGraph<T>& g, std::size_t target) {
  const std::size_t n = g.num_vertices();
  target = std::clamp<std::size_t>(target, 1, n - 1);
  std::vector<char> in(n, 0);
  std::vector<VertexIndex> frontier{static_cast<VertexIndex>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng))};
  in[frontier[0]] = 1;
  VertexSet interior{frontier[0]};
  while (interior.size() < target && !frontier.empty()) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng);
    const VertexIndex x = frontier[k];
    std::vector<VertexIndex> fresh;
    for (VertexIndex y : g.neighbors(x))
      if (!in[y]) fresh.push_back(y);
    if (fresh.empty()) {
      frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(k));
      continue;
    }
    const VertexIndex y = fresh[std::uniform_int_distribution<std::size_t>(0, fresh.size() - 1)(rng)];
    in[y] = 1;
    interior.push_back(y);
    frontier.push_back(y);
  }
  std::sort(interior.begin(), interior.end());
  return Domain::of(g, std::move(interior));
}

/// Dirichlet problem on a random domain; constant boundary data when
/// `constant_boundary` is set.
template <class T>
DirichletProblem<T> random_dirichlet(Rng& rng, const WeightedGraph<T>& g, std::size_t interior_size,
                                     bool constant_boundary = false) {
  DirichletProblem<T> p;
  p.domain = random_domain(rng, g, interior_size);
  p.boundary_values = VertexFunction<T>(g.num_vertices());
  const T c = random_value<T>(rng);
  for (VertexIndex y : p.domain.boundary) p.boundary_values.set(y, constant_boundary ? c : random_value<T>(rng));
  return p;
}

}  // namespace lqharm::random
