#pragma once

// First-order calculus on weighted graphs: the normalized Laplacian, the
// random-walk transition operator, oriented gradients, the vertex and edge
// inner products, L^q norms and sub/superharmonic classification.
//
// Float64 evaluations go through the SIMD kernel table; rational evaluations
// are exact. Reductions run in vertex/edge index order.

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <type_traits>
#include <vector>

#include "lqharm/function.hpp"
#include "lqharm/graph.hpp"
#include "lqharm/simd/kernels.hpp"

namespace lqharm {

template <class T>
T reduce_sum(const std::vector<T>& terms) {
  if constexpr (std::is_same_v<T, double>) {
    return simd::sum(terms);
  } else {
    T total(0);
    for (const T& t : terms) total += t;
    return total;
  }
}

namespace detail {

template <class T>
void require_row(const WeightedGraph<T>& g, const VertexFunction<T>& f, VertexIndex x) {
  required(g, f, x);
  for (VertexIndex y : g.neighbors(x)) required(g, f, y);
}

}  // namespace detail

/// (1/mu_x) sum_y mu_xy (f(y) - f(x)). Self-loops contribute nothing.
template <class T>
T laplacian(const WeightedGraph<T>& g, const VertexFunction<T>& f, VertexIndex x) {
  detail::require_row(g, f, x);
  const auto nb = g.neighbors(x);
  const auto w = g.neighbor_weights(x);
  if constexpr (std::is_same_v<T, double>) {
    return simd::active().gather_diff(nb.data(), w.data(), f.values().data(), f[x], nb.size()) / g.measure(x);
  } else {
    T acc(0);
    for (std::size_t k = 0; k < nb.size(); ++k) acc += w[k] * (f[nb[k]] - f[x]);
    return T(acc / g.measure(x));
  }
}

/// P f(x) = sum_y (mu_xy / mu_x) f(y).
template <class T>
T transition_apply(const WeightedGraph<T>& g, const VertexFunction<T>& f, VertexIndex x) {
  detail::require_row(g, f, x);
  const auto nb = g.neighbors(x);
  const auto w = g.neighbor_weights(x);
  if constexpr (std::is_same_v<T, double>) {
    return simd::active().gather_dot(nb.data(), w.data(), f.values().data(), nb.size()) / g.measure(x);
  } else {
    T acc(0);
    for (std::size_t k = 0; k < nb.size(); ++k) acc += w[k] * f[nb[k]];
    return T(acc / g.measure(x));
  }
}

/// Laplacian evaluated on every vertex of `where`.
template <class T>
VertexFunction<T> laplacian_on(const WeightedGraph<T>& g, const VertexFunction<T>& f, const VertexSet& where) {
  VertexFunction<T> out(g.num_vertices());
  for (VertexIndex x : where) out.set(x, laplacian(g, f, x));
  return out;
}

// --- orientation and gradient ------------------------------------------------

/// Direction per edge. The canonical orientation runs from the smaller to the
/// larger vertex index (i.e. identifier order).
class EdgeOrientation {
 public:
  EdgeOrientation() = default;
  static EdgeOrientation canonical(std::size_t num_edges) {
    EdgeOrientation o;
    o.reversed_.assign(num_edges, 0);
    return o;
  }

  /// f-adapted orientation: every edge ends at the endpoint with the larger
  /// value; ties (and edges with undefined values) keep identifier order.
  template <class T>
  static EdgeOrientation adapted(const WeightedGraph<T>& g, const VertexFunction<T>& f) {
    auto o = canonical(g.num_edges());
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      const T* fa = f.get(ed.a);
      const T* fb = f.get(ed.b);
      if (fa && fb && *fb < *fa) o.reversed_[e] = 1;
    }
    return o;
  }

  std::size_t size() const { return reversed_.size(); }
  bool reversed(EdgeIndex e) const { return reversed_.at(e) != 0; }
  void reverse(EdgeIndex e) { reversed_.at(e) ^= 1; }

  template <class T>
  VertexIndex start(const WeightedGraph<T>& g, EdgeIndex e) const {
    return reversed(e) ? g.edge(e).b : g.edge(e).a;
  }
  template <class T>
  VertexIndex end(const WeightedGraph<T>& g, EdgeIndex e) const {
    return reversed(e) ? g.edge(e).a : g.edge(e).b;
  }

 private:
  std::vector<char> reversed_;
};

/// grad_e f = f(end) - f(start); zero on self-loops.
template <class T>
T gradient(const WeightedGraph<T>& g, const EdgeOrientation& orientation, const VertexFunction<T>& f, EdgeIndex e) {
  if (orientation.size() != g.num_edges()) throw InputError("orientation does not match the graph");
  const VertexIndex s = orientation.start(g, e);
  const VertexIndex t = orientation.end(g, e);
  const T& fs = required(g, f, s);
  const T& ft = required(g, f, t);
  if (s == t) return T(0);
  return T(ft - fs);
}

/// Gradient on every edge whose endpoints both carry values.
template <class T>
EdgeFunction<T> gradient_all(const WeightedGraph<T>& g, const EdgeOrientation& orientation,
                             const VertexFunction<T>& f) {
  EdgeFunction<T> out(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e)
    if (f.defined(g.edge(e).a) && f.defined(g.edge(e).b)) out.set(e, gradient(g, orientation, f, e));
  return out;
}

// --- inner products ----------------------------------------------------------

namespace detail {

template <class T>
T paired_sum(const PartialFunction<T>& a, const PartialFunction<T>& b, std::span<const T> weights,
             const char* what) {
  if (a.size() != weights.size() || b.size() != weights.size())
    throw InputError(std::string(what) + ": function size does not match the graph");
  std::vector<T> lhs, rhs, w;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const T* x = a.get(i);
    const T* y = b.get(i);
    if (x && y) {
      lhs.push_back(*x);
      rhs.push_back(*y);
      w.push_back(weights[i]);
    } else if ((x && *x != 0) || (y && *y != 0)) {
      throw InputError(std::string(what) + ": support of one argument leaves the domain of the other at index " +
                       std::to_string(i));
    }
  }
  if constexpr (std::is_same_v<T, double>) {
    for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] *= rhs[i];
    return simd::dot(lhs, w);
  } else {
    T total(0);
    for (std::size_t i = 0; i < lhs.size(); ++i) total += lhs[i] * rhs[i] * w[i];
    return total;
  }
}

}  // namespace detail

/// <f1, f2> = sum_x f1(x) f2(x) mu_x. Undefined entries count as zero, but a
/// nonzero value paired with an undefined one is an error.
template <class T>
T inner_product_V(const WeightedGraph<T>& g, const VertexFunction<T>& f1, const VertexFunction<T>& f2) {
  return detail::paired_sum(f1, f2, g.measures(), "vertex inner product");
}

/// <u1, u2> = sum_e u1(e) u2(e) mu_e.
template <class T>
T inner_product_E(const WeightedGraph<T>& g, const EdgeFunction<T>& u1, const EdgeFunction<T>& u2) {
  std::vector<T> w;
  w.reserve(g.num_edges());
  for (const auto& e : g.edges()) w.push_back(e.weight);
  return detail::paired_sum<T>(u1, u2, w, "edge inner product");
}

template <class T>
struct GreenCheck {
  T laplacian_pairing;  // <Delta f, g>
  T gradient_pairing;   // <grad f, grad g>
  T residual;           // their sum, zero by Green's formula
  double scale;         // magnitude for float tolerances
};

/// Evaluates <Delta f, gtest> + <grad f, grad gtest>. gtest is finitely
/// supported (undefined entries are zero); f must be known on the support
/// and all its neighbors.
template <class T>
GreenCheck<T> check_green(const WeightedGraph<T>& g, const VertexFunction<T>& f, const VertexFunction<T>& gtest) {
  const VertexSet support = gtest.support();
  for (VertexIndex x : support) {
    for (VertexIndex y : std::span<const VertexIndex>(g.neighbors(x)))
      if (!f.defined(y))
        throw PreconditionError("test function support leaks outside the domain of f at '" + g.id(x) + "'",
                                g.id(x));
    if (!f.defined(x))
      throw PreconditionError("test function support leaks outside the domain of f at '" + g.id(x) + "'", g.id(x));
  }
  std::vector<T> lap_terms;
  for (VertexIndex x : support) lap_terms.push_back(T(laplacian(g, f, x) * gtest[x] * g.measure(x)));

  std::vector<char> in_support(g.num_vertices(), 0);
  for (VertexIndex x : support) in_support[x] = 1;
  std::vector<T> grad_terms;
  for (const auto& e : g.edges()) {
    if (e.is_loop() || !(in_support[e.a] || in_support[e.b])) continue;
    const T df = f[e.b] - f[e.a];
    const T dg = gtest[e.b] - gtest[e.a];
    grad_terms.push_back(T(e.weight * df * dg));
  }
  GreenCheck<T> out{reduce_sum(lap_terms), reduce_sum(grad_terms), T(0), 0.0};
  out.residual = out.laplacian_pairing + out.gradient_pairing;
  double scale = 1.0;
  for (const T& t : lap_terms) scale += std::abs(to_double(t));
  for (const T& t : grad_terms) scale += std::abs(to_double(t));
  out.scale = scale;
  return out;
}

// --- L^q norms -----------------------------------------------------------------

template <class T>
struct LqNorm {
  T power_sum;      // sum |f|^q mu_x
  double norm;      // power_sum^(1/q)
  bool exact;       // false when any power was evaluated in floating point
};

/// sum_{x in where} |f(x)|^q mu_x.
template <class T>
PowerValue<T> weighted_power_sum(const WeightedGraph<T>& g, const VertexFunction<T>& f, double q,
                                 const VertexSet& where) {
  if constexpr (std::is_same_v<T, double>) {
    std::vector<double> vals, mu, pw(where.size());
    vals.reserve(where.size());
    mu.reserve(where.size());
    for (VertexIndex x : where) {
      vals.push_back(required(g, f, x));
      mu.push_back(g.measure(x));
    }
    const auto& k = simd::active();
    k.abs_pow(vals.data(), q, pw.data(), vals.size());
    return {k.dot(pw.data(), mu.data(), pw.size()), false};
  } else {
    T total(0);
    bool exact = true;
    for (VertexIndex x : where) {
      auto p = abs_power(required(g, f, x), q);
      exact = exact && p.exact;
      total += p.value * g.measure(x);
    }
    return {total, exact};
  }
}

template <class T>
LqNorm<T> lq_norm(const WeightedGraph<T>& g, const VertexFunction<T>& f, double q, const VertexSet& where) {
  if (!(q > 0)) throw InputError("L^q norm needs q > 0");
  auto ps = weighted_power_sum(g, f, q, where);
  return {ps.value, std::pow(to_double(ps.value), 1.0 / q), ps.exact};
}

// --- classification ----------------------------------------------------------

enum class VertexVerdict { harmonic, strictly_subharmonic, strictly_superharmonic };
enum class DomainVerdict { harmonic, subharmonic, superharmonic, none };

std::string_view to_string(VertexVerdict v);
std::string_view to_string(DomainVerdict v);

inline bool is_subharmonic(DomainVerdict v) { return v == DomainVerdict::harmonic || v == DomainVerdict::subharmonic; }
inline bool is_superharmonic(DomainVerdict v) {
  return v == DomainVerdict::harmonic || v == DomainVerdict::superharmonic;
}

/// Relative tolerance base for float64 classification.
inline constexpr double kDefaultClassifyTolerance = 1e-9;

template <class T>
constexpr double default_tolerance() {
  return is_exact_v<T> ? 0.0 : kDefaultClassifyTolerance;
}

template <class T>
struct Classification {
  std::vector<VertexIndex> vertices;   // interior, ascending
  std::vector<T> laplacian;            // Delta f per vertex
  std::vector<double> tolerance;       // effective threshold per vertex
  std::vector<VertexVerdict> verdicts;
  DomainVerdict verdict = DomainVerdict::harmonic;
  double tolerance_base = 0.0;
};

/// Per-vertex and domain verdicts for f on omega. In float64 a vertex counts
/// as harmonic when |Delta f(x)| <= tol * max(1, max |f| over x and its
/// neighbors). Rational mode requires tol == 0 and decides signs exactly.
template <class T>
Classification<T> classify(const WeightedGraph<T>& g, const VertexFunction<T>& f, const Domain& omega,
                           double tol = default_tolerance<T>()) {
  if (tol < 0) throw InputError("classification tolerance must be non-negative");
  if (is_exact_v<T> && tol != 0) throw InputError("rational classification requires tol = 0");
  Classification<T> c;
  c.tolerance_base = tol;
  bool any_sub = false, any_super = false;
  for (VertexIndex x : omega.interior) {
    T lap = laplacian(g, f, x);
    double local = std::abs(to_double(f[x]));
    for (VertexIndex y : g.neighbors(x)) local = std::max(local, std::abs(to_double(f[y])));
    const double thr = tol * std::max(1.0, local);
    VertexVerdict v = VertexVerdict::harmonic;
    if constexpr (is_exact_v<T>) {
      if (lap > 0) v = VertexVerdict::strictly_subharmonic;
      if (lap < 0) v = VertexVerdict::strictly_superharmonic;
    } else {
      if (lap > thr) v = VertexVerdict::strictly_subharmonic;
      if (lap < -thr) v = VertexVerdict::strictly_superharmonic;
    }
    any_sub = any_sub || v == VertexVerdict::strictly_subharmonic;
    any_super = any_super || v == VertexVerdict::strictly_superharmonic;
    c.vertices.push_back(x);
    c.laplacian.push_back(std::move(lap));
    c.tolerance.push_back(thr);
    c.verdicts.push_back(v);
  }
  if (any_sub && any_super) c.verdict = DomainVerdict::none;
  else if (any_sub) c.verdict = DomainVerdict::subharmonic;
  else if (any_super) c.verdict = DomainVerdict::superharmonic;
  else c.verdict = DomainVerdict::harmonic;
  return c;
}

/// Throws PreconditionError naming the first vertex that is strictly
/// superharmonic.
template <class T>
void require_subharmonic(const WeightedGraph<T>& g, const Classification<T>& c) {
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    if (c.verdicts[i] == VertexVerdict::strictly_superharmonic)
      throw PreconditionError("function is not subharmonic at '" + g.id(c.vertices[i]) + "'", g.id(c.vertices[i]));
}

// --- polyharmonic iteration ----------------------------------------------------

template <class T>
struct IteratedLaplacian {
  VertexFunction<T> values;              // Delta^m f on the requested domain
  std::vector<std::size_t> usable_sizes;  // |U_k|: where Delta^k f is computable, k = 0..m
  std::size_t halo_depth = 0;            // rings consumed, = m
};

/// Delta^m f on omega.interior. Usable sets are the rings
/// U_k = {x : d(x, omega) <= m - k}; f must be known on U_0, and Delta^k f is
/// evaluated on U_k, whose neighbors all lie in U_{k-1}.
template <class T>
IteratedLaplacian<T> iterate_laplacian(const WeightedGraph<T>& g, const VertexFunction<T>& f, std::size_t m,
                                       const Domain& omega) {
  if (m == 0) throw InputError("iterate_laplacian needs m >= 1");
  if (omega.interior.empty()) throw InputError("iterate_laplacian needs a nonempty domain");
  // multi-source BFS from omega, capped at depth m
  std::vector<std::int64_t> depth(g.num_vertices(), kUnreachable);
  std::deque<VertexIndex> queue;
  for (VertexIndex x : omega.interior) {
    depth[x] = 0;
    queue.push_back(x);
  }
  while (!queue.empty()) {
    const VertexIndex x = queue.front();
    queue.pop_front();
    if (depth[x] == static_cast<std::int64_t>(m)) continue;
    for (VertexIndex y : g.neighbors(x)) {
      if (depth[y] != kUnreachable) continue;
      depth[y] = depth[x] + 1;
      queue.push_back(y);
    }
  }
  auto ring = [&](std::size_t k) {
    VertexSet out;
    for (VertexIndex v = 0; v < depth.size(); ++v)
      if (depth[v] != kUnreachable && depth[v] <= static_cast<std::int64_t>(m - k)) out.push_back(v);
    return out;
  };

  IteratedLaplacian<T> out;
  out.halo_depth = m;
  const VertexSet base = ring(0);
  for (VertexIndex x : base)
    if (!f.defined(x))
      throw InputError("Delta^" + std::to_string(m) + " on the domain needs f on a halo of depth " +
                       std::to_string(m) + "; f is undefined at '" + g.id(x) + "'");
  out.usable_sizes.push_back(base.size());
  VertexFunction<T> current = f;
  for (std::size_t k = 1; k <= m; ++k) {
    const VertexSet usable = ring(k);
    current = laplacian_on(g, current, usable);
    out.usable_sizes.push_back(usable.size());
  }
  out.values = VertexFunction<T>(g.num_vertices());
  for (VertexIndex x : omega.interior) out.values.set(x, current[x]);
  return out;
}

// --- L^q boundedness and L^1 preservation -------------------------------------

/// ||Delta f||_q / ||f||_q for finitely supported f (undefined entries are
/// zero), q >= 1. Delta = P - I with P an L^q contraction bounds this by 2.
template <class T>
double operator_norm_check(const WeightedGraph<T>& g, const VertexFunction<T>& f, double q) {
  if (!(q >= 1)) throw InputError("operator_norm_check needs q >= 1");
  VertexFunction<T> full(g.num_vertices());
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) full.set(v, f[v]);
  const VertexSet support = full.support();
  if (support.empty()) throw InputError("operator_norm_check: ratio undefined for f = 0");
  VertexSet neighborhood;
  const VertexSet ring = g.boundary(support);
  std::merge(support.begin(), support.end(), ring.begin(), ring.end(), std::back_inserter(neighborhood));
  const auto lap = laplacian_on(g, full, neighborhood);
  const auto num = weighted_power_sum(g, lap, q, neighborhood);
  const auto den = weighted_power_sum(g, full, q, support);
  return std::pow(to_double(num.value) / to_double(den.value), 1.0 / q);
}

/// ||Pf||_1 - ||f||_1 summed over `where` (all vertices when empty) for
/// f >= 0. Zero on any finite graph when `where` is everything; on a proper
/// subdomain it equals the flux of f across its boundary.
template <class T>
T check_l1_preservation(const WeightedGraph<T>& g, const VertexFunction<T>& f, const VertexSet& where = {}) {
  VertexSet region = where;
  if (region.empty())
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) region.push_back(v);
  for (VertexIndex x : region)
    if (required(g, f, x) < 0) throw InputError("L^1 preservation needs f >= 0; f < 0 at '" + g.id(x) + "'");
  std::vector<T> pf_terms, f_terms;
  for (VertexIndex x : region) {
    pf_terms.push_back(T(transition_apply(g, f, x) * g.measure(x)));
    f_terms.push_back(T(f[x] * g.measure(x)));
  }
  return T(reduce_sum(pf_terms) - reduce_sum(f_terms));
}

/// Pointwise min{f, a} on the domain of f.
template <class T>
VertexFunction<T> truncate_min(const VertexFunction<T>& f, const T& a) {
  VertexFunction<T> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (const T* v = f.get(i)) out.set(i, *v < a ? *v : a);
  return out;
}

}  // namespace lqharm
