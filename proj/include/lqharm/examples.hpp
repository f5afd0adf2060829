#pragma once

// Constructors for the standard families (Z, Z^2, regular trees), the
// finite-volume dyadic line with its harmonic function, gluing, and a small
// zoo of certified subharmonic functions.

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "lqharm/caccioppoli.hpp"
#include "lqharm/dirichlet.hpp"
#include "lqharm/family.hpp"
#include "lqharm/function.hpp"
#include "lqharm/graph.hpp"

namespace lqharm {

// Canonical vertex ids: "n" on the line, "x,y" on the square lattice,
// "t" plus ".k" per generation on trees.
std::string line_id(std::int64_t n);
std::string lattice2_id(std::int64_t x, std::int64_t y);
std::optional<std::int64_t> parse_line_id(std::string_view id);
std::optional<std::pair<std::int64_t, std::int64_t>> parse_lattice2_id(std::string_view id);
/// Depth of a tree id, nullopt if malformed.
std::optional<std::size_t> tree_depth(std::string_view id);

inline constexpr std::size_t kRationalDyadicCap = 200;
inline constexpr std::size_t kFloatDyadicCap = 900;

template <class T>
constexpr std::size_t dyadic_cap() {
  return is_exact_v<T> ? kRationalDyadicCap : kFloatDyadicCap;
}

/// 2^k for any integer k, exact in both modes.
template <class T>
T power_of_two(long k) {
  if constexpr (is_exact_v<T>) {
    return int_power(Rational(2), k);
  } else {
    return std::ldexp(1.0, static_cast<int>(k));
  }
}

// --- lattices and trees ------------------------------------------------------

template <class T>
GraphFamily<T> lattice(int dim) {
  GraphFamily<T> fam;
  fam.max_radius = 1'000'000;
  if (dim == 1) {
    fam.name = "z";
    fam.root = line_id(0);
    fam.measure_lower_bound = T(2);
    fam.ball_edges = [](std::size_t R) {
      std::vector<EdgeSpec<T>> edges;
      const auto m = static_cast<std::int64_t>(R) + 1;
      for (std::int64_t n = -m; n < m; ++n) edges.push_back({line_id(n), line_id(n + 1), T(1)});
      return edges;
    };
  } else if (dim == 2) {
    fam.name = "z2";
    fam.root = lattice2_id(0, 0);
    fam.measure_lower_bound = T(4);
    fam.ball_edges = [](std::size_t R) {
      std::vector<EdgeSpec<T>> edges;
      const auto m = static_cast<std::int64_t>(R) + 1;
      for (std::int64_t x = -m; x <= m; ++x) {
        for (std::int64_t y = -m; y <= m; ++y) {
          if (std::abs(x) + std::abs(y) > m) continue;
          if (std::abs(x + 1) + std::abs(y) <= m) edges.push_back({lattice2_id(x, y), lattice2_id(x + 1, y), T(1)});
          if (std::abs(x) + std::abs(y + 1) <= m) edges.push_back({lattice2_id(x, y), lattice2_id(x, y + 1), T(1)});
        }
      }
      return edges;
    };
  } else {
    throw InputError("lattice dimension must be 1 or 2 (got " + std::to_string(dim) + ")");
  }
  return fam;
}

/// (b+1)-regular tree with unit weights: the root has b+1 children, every
/// other vertex b children and one parent.
template <class T>
GraphFamily<T> regular_tree(int branching) {
  if (branching < 2) throw InputError("tree branching must be >= 2");
  GraphFamily<T> fam;
  fam.name = "tree" + std::to_string(branching);
  fam.root = "t";
  fam.measure_lower_bound = T(branching + 1);
  // Keep windows below ~4M vertices.
  std::size_t cap = 0;
  for (double size = branching + 2; size < 4e6; size *= branching) ++cap;
  fam.max_radius = cap;
  fam.ball_edges = [branching](std::size_t R) {
    std::vector<EdgeSpec<T>> edges;
    std::vector<std::string> frontier{"t"};
    for (std::size_t depth = 0; depth <= R; ++depth) {
      std::vector<std::string> next;
      const int kids = depth == 0 ? branching + 1 : branching;
      for (const auto& parent : frontier) {
        for (int k = 0; k < kids; ++k) {
          std::string child = parent + "." + std::to_string(k);
          edges.push_back({parent, child, T(1)});
          next.push_back(std::move(child));
        }
      }
      frontier = std::move(next);
    }
    return edges;
  };
  return fam;
}

// --- dyadic line -------------------------------------------------------------

/// Z with mu_{n,n+1} = 2^{1 - max(|n|, |n+1|)}; finite total volume.
template <class T>
GraphFamily<T> dyadic_line() {
  GraphFamily<T> fam;
  fam.name = "dyadic-line";
  fam.root = line_id(0);
  fam.max_radius = dyadic_cap<T>();
  fam.ball_edges = [](std::size_t R) {
    std::vector<EdgeSpec<T>> edges;
    const auto m = static_cast<std::int64_t>(R) + 1;
    for (std::int64_t n = -m; n < m; ++n) {
      const long top = static_cast<long>(std::max(std::abs(n), std::abs(n + 1)));
      edges.push_back({line_id(n), line_id(n + 1), power_of_two<T>(1 - top)});
    }
    return edges;
  };
  return fam;
}

/// f(n) = 2^n - 1 for n >= 0 and 1 - 2^{-n} for n < 0, harmonic on the dyadic line.
template <class T>
T dyadic_harmonic_value(std::int64_t n) {
  const auto cap = static_cast<std::int64_t>(dyadic_cap<T>()) + 1;
  if (std::abs(n) > cap)
    throw InputError("dyadic exponent " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));
  if (n >= 0) return T(power_of_two<T>(static_cast<long>(n)) - 1);
  return T(1 - power_of_two<T>(static_cast<long>(-n)));
}

template <class T>
FunctionSource<T> dyadic_harmonic() {
  return [](std::string_view id) -> std::optional<T> {
    const auto n = parse_line_id(id);
    if (!n) return std::nullopt;
    return dyadic_harmonic_value<T>(*n);
  };
}

/// |f| for the dyadic harmonic f; subharmonic as the modulus of a harmonic function.
template <class T>
FunctionSource<T> dyadic_abs() {
  return [](std::string_view id) -> std::optional<T> {
    const auto n = parse_line_id(id);
    if (!n) return std::nullopt;
    return abs_value(dyadic_harmonic_value<T>(*n));
  };
}

// --- gluing --------------------------------------------------------------------

template <class T>
struct GlueResult {
  WeightedGraph<T> graph;
  std::string seam;  // id of the identified vertex (the right mark)
};

namespace detail {

template <class T>
std::vector<EdgeSpec<T>> glue_edges(std::vector<EdgeSpec<T>> left, std::string_view left_mark,
                                    std::vector<EdgeSpec<T>> right, std::string_view right_mark,
                                    const std::string& prefix) {
  bool left_has = false, right_has = false;
  std::vector<std::string> right_ids;
  for (const auto& e : right) {
    right_has = right_has || e.u == right_mark || e.v == right_mark;
    right_ids.push_back(e.u);
    right_ids.push_back(e.v);
  }
  std::sort(right_ids.begin(), right_ids.end());
  auto rename = [&](const std::string& id) {
    if (id == left_mark) return std::string(right_mark);
    std::string out = prefix + id;
    if (std::binary_search(right_ids.begin(), right_ids.end(), out))
      throw InputError("glue: renamed left vertex '" + out + "' collides with a right vertex; choose another prefix");
    return out;
  };
  std::vector<EdgeSpec<T>> out = std::move(right);
  for (auto& e : left) {
    left_has = left_has || e.u == left_mark || e.v == left_mark;
    out.push_back({rename(e.u), rename(e.v), std::move(e.weight)});
  }
  if (!left_has) throw InputError("glue: left mark '" + std::string(left_mark) + "' is not a vertex");
  if (!right_has) throw InputError("glue: right mark '" + std::string(right_mark) + "' is not a vertex");
  return out;
}

template <class T>
std::vector<EdgeSpec<T>> edge_specs(const WeightedGraph<T>& g) {
  std::vector<EdgeSpec<T>> out;
  out.reserve(g.num_edges());
  for (const auto& e : g.edges()) out.push_back({g.id(e.a), g.id(e.b), e.weight});
  return out;
}

}  // namespace detail

/// Identifies `left_mark` with `right_mark`, keeping every edge and weight.
/// Left vertices other than the mark are renamed with `prefix`; a self-loop
/// at the left mark becomes a self-loop at the seam.
template <class T>
GlueResult<T> glue(const WeightedGraph<T>& left, std::string_view left_mark, const WeightedGraph<T>& right,
                   std::string_view right_mark, const std::string& prefix = "g1:") {
  GlueResult<T> out;
  out.graph = WeightedGraph<T>::from_edges(
      detail::glue_edges(detail::edge_specs(left), left_mark, detail::edge_specs(right), right_mark, prefix));
  out.seam = std::string(right_mark);
  return out;
}

/// Family of the glued graph rooted at the seam. Balls around the seam are
/// unions of the two balls, so windows glue window by window.
template <class T>
GraphFamily<T> glue(const GraphFamily<T>& left, const GraphFamily<T>& right, const std::string& prefix = "g1:") {
  GraphFamily<T> fam;
  fam.name = left.name + "^" + right.name;
  fam.root = right.root;
  fam.max_radius = std::min(left.max_radius, right.max_radius);
  fam.ball_edges = [left, right, prefix](std::size_t R) {
    return detail::glue_edges(left.ball_edges(R), left.root, right.ball_edges(R), right.root, prefix);
  };
  return fam;
}

/// g = 0 on the renamed left side and g = f on the right side (f(seam) = 0).
template <class T>
FunctionSource<T> glued_function(FunctionSource<T> right, const std::string& prefix = "g1:") {
  return [right = std::move(right), prefix](std::string_view id) -> std::optional<T> {
    if (id.substr(0, prefix.size()) == prefix) return T(0);
    return right(id);
  };
}

// --- subharmonic zoo -----------------------------------------------------------

template <class T>
FunctionSource<T> abs_first_coordinate() {
  return [](std::string_view id) -> std::optional<T> {
    const auto p = parse_lattice2_id(id);
    if (!p) return std::nullopt;
    return T(static_cast<long>(std::abs(p->first)));
  };
}

template <class T>
FunctionSource<T> square_on_line() {
  return [](std::string_view id) -> std::optional<T> {
    const auto n = parse_line_id(id);
    if (!n) return std::nullopt;
    return T(static_cast<long>(*n * *n));
  };
}

template <class T>
FunctionSource<T> identity_on_line() {
  return [](std::string_view id) -> std::optional<T> {
    const auto n = parse_line_id(id);
    if (!n) return std::nullopt;
    return T(static_cast<long>(*n));
  };
}

/// Distance to the root on a tree; subharmonic since b > 1.
template <class T>
FunctionSource<T> tree_distance() {
  return [](std::string_view id) -> std::optional<T> {
    const auto d = tree_depth(id);
    if (!d) return std::nullopt;
    return T(static_cast<long>(*d));
  };
}

template <class T>
FunctionSource<T> constant_function(T c) {
  return [c = std::move(c)](std::string_view) -> std::optional<T> { return c; };
}

template <class T>
struct ZooEntry {
  std::string name;
  GraphFamily<T> family;
  FunctionSource<T> function;
};

inline constexpr std::size_t kBumpRadius = 6;

/// Harmonic function on B_6 of Z^2 with boundary data 1 + x^2 on the sphere
/// of radius 7; the family is capped so windows stay inside the solved ball.
template <class T>
ZooEntry<T> dirichlet_bump() {
  auto fam = lattice<T>(2);
  const auto window = materialize(fam, kBumpRadius);
  DirichletProblem<T> p;
  p.domain = window.domain;
  p.boundary_values = VertexFunction<T>(window.graph.num_vertices());
  for (VertexIndex y : p.domain.boundary) {
    const auto xy = parse_lattice2_id(window.graph.id(y));
    p.boundary_values.set(y, T(static_cast<long>(1 + xy->first * xy->first)));
  }
  const auto report = solve_dirichlet(window.graph, p);
  auto values = std::make_shared<ValueMap<T>>(to_map(window.graph, report.solution));
  fam.name = "z2-bump";
  fam.max_radius = kBumpRadius;
  FunctionSource<T> f = [values](std::string_view id) -> std::optional<T> {
    auto it = values->find(std::string(id));
    if (it == values->end()) return std::nullopt;
    return it->second;
  };
  return {"dirichlet-bump", std::move(fam), std::move(f)};
}

/// Names: abs-coordinate-Z2, square-Z, dirichlet-bump, dyadic-abs, distance-tree.
template <class T>
ZooEntry<T> subharmonic_zoo(std::string_view name) {
  if (name == "abs-coordinate-Z2") return {std::string(name), lattice<T>(2), abs_first_coordinate<T>()};
  if (name == "square-Z") return {std::string(name), lattice<T>(1), square_on_line<T>()};
  if (name == "dirichlet-bump") return dirichlet_bump<T>();
  if (name == "dyadic-abs") return {std::string(name), dyadic_line<T>(), dyadic_abs<T>()};
  if (name == "distance-tree") return {std::string(name), regular_tree<T>(2), tree_distance<T>()};
  throw InputError("unknown subharmonic zoo entry '" + std::string(name) + "'");
}

// --- built-in inequality corpus ------------------------------------------------

inline constexpr double kCorpusExponents[] = {1.25, 1.5, 2.0, 3.0, 4.0};
inline constexpr std::pair<std::size_t, std::size_t> kCorpusRadii[] = {{1, 3}, {2, 5}, {3, 7}};

/// Dyadic line, Z, Z^2 and the binary (3-regular) tree with their zoo
/// functions, five exponents and three radius pairs each, all (r, R)
/// multiplied by `scale`.
template <class T>
std::vector<CorpusCase<T>> builtin_corpus(std::size_t scale) {
  std::vector<ZooEntry<T>> entries = {subharmonic_zoo<T>("dyadic-abs"), subharmonic_zoo<T>("square-Z"),
                                      subharmonic_zoo<T>("abs-coordinate-Z2"), subharmonic_zoo<T>("distance-tree")};
  std::vector<CorpusCase<T>> out;
  for (const auto& z : entries) {
    for (double q : kCorpusExponents) {
      for (auto [r, R] : kCorpusRadii) {
        CorpusCase<T> c;
        c.family = z.family;
        c.function_name = z.name;
        c.function = z.function;
        c.q = q;
        c.inner = r * scale;
        c.outer = R * scale;
        c.label = z.name + "/q=" + std::to_string(q).substr(0, 4) + "/r=" + std::to_string(c.inner) +
                  "/R=" + std::to_string(c.outer);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace lqharm
