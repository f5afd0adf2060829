#pragma once

// Discrete Dirichlet problem Delta f = -source on a finite connected domain
// with prescribed boundary values, plus the maximum-principle checks built on
// top of it.

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lqharm/calculus.hpp"
#include "lqharm/family.hpp"
#include "lqharm/function.hpp"
#include "lqharm/graph.hpp"

namespace lqharm {

template <class T>
struct DirichletProblem {
  Domain domain;
  VertexFunction<T> boundary_values;          // required on all of the boundary
  std::optional<VertexFunction<T>> source;  // on the interior; undefined = 0
};

enum class SolveMethod { automatic, direct, iterative };

std::string_view to_string(SolveMethod m);
SolveMethod parse_solve_method(std::string_view text);

struct SolveOptions {
  double tol = 1e-10;
  SolveMethod method = SolveMethod::automatic;
  std::size_t max_iterations = 1'000'000;
  std::size_t direct_limit = 2000;
  double relaxation = 1.0;  // Gauss-Seidel over-relaxation factor, in (0, 2)
};

template <class T>
struct SolveReport {
  VertexFunction<T> solution;  // on interior and boundary
  SolveMethod method = SolveMethod::direct;
  std::size_t iterations = 0;
  T residual{};  // max |Delta f + source| over the interior
};

namespace detail {

template <class T>
void validate_problem(const WeightedGraph<T>& g, const DirichletProblem<T>& p) {
  if (p.domain.interior.empty()) throw InputError("Dirichlet problem has an empty domain");
  if (p.domain.boundary.empty()) throw InputError("no boundary data: the domain has an empty boundary");
  const auto comps = g.components(p.domain.interior);
  if (comps.size() > 1)
    throw InputError("domain is disconnected; stranded component contains '" + g.id(comps[1].front()) + "'");
  if (p.boundary_values.size() != g.num_vertices()) throw InputError("boundary values do not match the graph");
  for (VertexIndex y : p.domain.boundary)
    if (!p.boundary_values.defined(y)) throw InputError("no boundary value at '" + g.id(y) + "'");
  if (p.source && p.source->size() != g.num_vertices()) throw InputError("source does not match the graph");
}

template <class T>
T source_at(const DirichletProblem<T>& p, VertexIndex x) {
  if (p.source && p.source->defined(x)) return (*p.source)[x];
  return T(0);
}

/// Symmetric positive definite sparse elimination (upper rows only). The
/// system matrix is an irreducibly diagonally dominant M-matrix, so no
/// pivoting is needed and the elimination is exact over the rationals.
template <class T>
std::vector<T> solve_spd_sparse(std::vector<std::vector<std::pair<std::uint32_t, T>>> rows, std::vector<T> rhs) {
  const std::size_t n = rows.size();
  for (std::size_t k = 0; k < n; ++k) {
    auto& rk = rows[k];
    if (rk.empty() || rk.front().first != k || rk.front().second == 0)
      throw DefectError("singular pivot in Dirichlet elimination");
    const T pivot = rk.front().second;
    for (std::size_t t = 1; t < rk.size(); ++t) {
      const std::uint32_t j = rk[t].first;
      const T factor = rk[t].second / pivot;
      // row_j -= factor * row_k restricted to columns >= j
      auto& rj = rows[j];
      std::vector<std::pair<std::uint32_t, T>> merged;
      merged.reserve(rj.size() + rk.size());
      std::size_t a = 0, b = t;
      while (a < rj.size() || b < rk.size()) {
        if (b >= rk.size() || (a < rj.size() && rj[a].first < rk[b].first)) {
          merged.push_back(std::move(rj[a++]));
        } else if (a >= rj.size() || rk[b].first < rj[a].first) {
          merged.emplace_back(rk[b].first, T(-(factor * rk[b].second)));
          ++b;
        } else {
          merged.emplace_back(rj[a].first, T(rj[a].second - factor * rk[b].second));
          ++a;
          ++b;
        }
      }
      rj = std::move(merged);
      rhs[j] -= factor * rhs[k];
    }
  }
  std::vector<T> x(n, T(0));
  for (std::size_t k = n; k-- > 0;) {
    T acc = rhs[k];
    const auto& rk = rows[k];
    for (std::size_t t = 1; t < rk.size(); ++t) acc -= rk[t].second * x[rk[t].first];
    x[k] = acc / rk.front().second;
  }
  return x;
}

/// Cuthill-McKee order of a connected vertex set.
template <class T>
std::vector<VertexIndex> bandwidth_order(const WeightedGraph<T>& g, const VertexSet& interior) {
  std::vector<char> in(g.num_vertices(), 0), seen(g.num_vertices(), 0);
  for (VertexIndex v : interior) in[v] = 1;
  auto degree = [&](VertexIndex v) {
    std::size_t d = 0;
    for (VertexIndex y : g.neighbors(v)) d += in[y] && y != v;
    return d;
  };
  VertexIndex start = interior.front();
  for (VertexIndex v : interior)
    if (degree(v) < degree(start)) start = v;
  std::vector<VertexIndex> order;
  std::deque<VertexIndex> queue{start};
  seen[start] = 1;
  while (!queue.empty()) {
    const VertexIndex x = queue.front();
    queue.pop_front();
    order.push_back(x);
    std::vector<VertexIndex> next;
    for (VertexIndex y : g.neighbors(x))
      if (in[y] && !seen[y]) {
        seen[y] = 1;
        next.push_back(y);
      }
    std::stable_sort(next.begin(), next.end(), [&](VertexIndex l, VertexIndex r) { return degree(l) < degree(r); });
    for (VertexIndex y : next) queue.push_back(y);
  }
  return order;
}

template <class T>
T max_residual(const WeightedGraph<T>& g, const DirichletProblem<T>& p, const VertexFunction<T>& f) {
  T worst(0);
  for (VertexIndex x : p.domain.interior) {
    const T r = abs_value(T(laplacian(g, f, x) + source_at(p, x)));
    if (r > worst) worst = r;
  }
  return worst;
}

template <class T>
void solve_direct(const WeightedGraph<T>& g, const DirichletProblem<T>& p, VertexFunction<T>& f) {
  const auto order = bandwidth_order(g, p.domain.interior);
  std::vector<std::uint32_t> pos(g.num_vertices(), UINT32_MAX);
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<std::uint32_t>(k);
  std::vector<std::vector<std::pair<std::uint32_t, T>>> rows(order.size());
  std::vector<T> rhs(order.size(), T(0));
  for (std::size_t k = 0; k < order.size(); ++k) {
    const VertexIndex x = order[k];
    const auto nb = g.neighbors(x);
    const auto w = g.neighbor_weights(x);
    T diag = g.measure(x);
    T b = T(g.measure(x) * source_at(p, x));
    std::vector<std::pair<std::uint32_t, T>> upper;
    for (std::size_t t = 0; t < nb.size(); ++t) {
      const VertexIndex y = nb[t];
      if (y == x) {
        diag -= w[t];
      } else if (pos[y] != UINT32_MAX) {
        if (pos[y] > k) upper.emplace_back(pos[y], T(-w[t]));
      } else {
        b += w[t] * p.boundary_values[y];
      }
    }
    std::sort(upper.begin(), upper.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    rows[k].emplace_back(static_cast<std::uint32_t>(k), diag);
    for (auto& e : upper) rows[k].push_back(std::move(e));
    rhs[k] = b;
  }
  const auto x = solve_spd_sparse(std::move(rows), std::move(rhs));
  for (std::size_t k = 0; k < order.size(); ++k) f.set(order[k], x[k]);
}

/// One Gauss-Seidel sweep in index order; returns nothing, updates f in place.
inline void gauss_seidel_sweep(const WeightedGraph<double>& g, const DirichletProblem<double>& p,
                               VertexFunction<double>& f, double omega) {
  const auto& k = simd::active();
  for (VertexIndex x : p.domain.interior) {
    const auto nb = g.neighbors(x);
    const auto w = g.neighbor_weights(x);
    const double flux = k.gather_diff(nb.data(), w.data(), f.values().data(), f[x], nb.size());
    const double diag = g.measure(x) - g.weight(x, x);
    f.set(x, f[x] + omega * (flux + g.measure(x) * source_at(p, x)) / diag);
  }
}

}  // namespace detail

/// Solves Delta f = -source on the interior with f = boundary_values on the
/// boundary. Rational problems are always solved by exact elimination.
template <class T>
SolveReport<T> solve_dirichlet(const WeightedGraph<T>& g, const DirichletProblem<T>& p,
                               const SolveOptions& opt = {}) {
  detail::validate_problem(g, p);
  SolveMethod method = opt.method;
  if constexpr (is_exact_v<T>) {
    if (method == SolveMethod::iterative) throw InputError("iterative solves are float64 only");
    method = SolveMethod::direct;
  } else {
    if (method == SolveMethod::automatic)
      method = p.domain.interior.size() <= opt.direct_limit ? SolveMethod::direct : SolveMethod::iterative;
    if (!(opt.relaxation > 0 && opt.relaxation < 2)) throw InputError("relaxation factor must lie in (0, 2)");
  }

  SolveReport<T> report;
  report.method = method;
  VertexFunction<T> f(g.num_vertices());
  for (VertexIndex y : p.domain.boundary) f.set(y, p.boundary_values[y]);

  if (method == SolveMethod::direct) {
    detail::solve_direct(g, p, f);
    report.residual = detail::max_residual(g, p, f);
    if constexpr (is_exact_v<T>) {
      if (report.residual != 0) throw DefectError("exact elimination left a nonzero residual");
    } else {
      // Large data can leave a rounding residual above tol; polish it.
      while (report.residual > opt.tol) {
        if (report.iterations >= opt.max_iterations)
          throw ConvergenceError("direct solve could not be polished below tolerance");
        detail::gauss_seidel_sweep(g, p, f, 1.0);
        ++report.iterations;
        report.residual = detail::max_residual(g, p, f);
      }
    }
  } else {
    if constexpr (!is_exact_v<T>) {
      double avg = 0.0;
      for (VertexIndex y : p.domain.boundary) avg += p.boundary_values[y];
      avg /= static_cast<double>(p.domain.boundary.size());
      for (VertexIndex x : p.domain.interior) f.set(x, avg);
      report.residual = detail::max_residual(g, p, f);
      while (report.residual > opt.tol) {
        if (report.iterations >= opt.max_iterations)
          throw ConvergenceError("Gauss-Seidel did not reach tolerance within " +
                                 std::to_string(opt.max_iterations) + " sweeps (residual " +
                                 std::to_string(report.residual) + ")");
        detail::gauss_seidel_sweep(g, p, f, opt.relaxation);
        ++report.iterations;
        report.residual = detail::max_residual(g, p, f);
      }
    }
  }
  report.solution = std::move(f);
  return report;
}

// --- maximum principle -------------------------------------------------------

template <class T>
struct MaxPrincipleVerdict {
  T max_interior{};
  T max_boundary{};
  bool bound_holds = false;    // max over interior <= max over boundary (+ tol)
  bool equality_case = false;  // max over interior reaches the boundary max (- tol)
  bool constant = false;       // f constant on interior and boundary (within tol)
  bool rigidity_holds = false; // equality_case implies constant
  bool holds() const { return bound_holds && rigidity_holds; }
};

/// Checks max_Omega f <= max_dOmega f and the rigidity clause for f
/// subharmonic on omega. Float tolerances scale with max(1, sup |f|).
template <class T>
MaxPrincipleVerdict<T> check_max_principle(const WeightedGraph<T>& g, const VertexFunction<T>& f,
                                           const Domain& omega, double tol = default_tolerance<T>()) {
  if (omega.interior.empty() || omega.boundary.empty())
    throw InputError("maximum principle needs a nonempty interior and boundary");
  const auto c = classify(g, f, omega, tol);
  require_subharmonic(g, c);

  MaxPrincipleVerdict<T> v;
  v.max_interior = required(g, f, omega.interior.front());
  v.max_boundary = required(g, f, omega.boundary.front());
  T lo = v.max_interior, hi = v.max_interior;
  double sup = 0.0;
  for (VertexIndex x : omega.interior) {
    if (f[x] > v.max_interior) v.max_interior = f[x];
  }
  for (VertexIndex y : omega.boundary) {
    if (required(g, f, y) > v.max_boundary) v.max_boundary = f[y];
  }
  for (VertexIndex x : omega.closure()) {
    if (f[x] < lo) lo = f[x];
    if (f[x] > hi) hi = f[x];
    sup = std::max(sup, std::abs(to_double(f[x])));
  }
  if constexpr (is_exact_v<T>) {
    v.bound_holds = v.max_interior <= v.max_boundary;
    v.equality_case = v.max_interior >= v.max_boundary;
    v.constant = lo == hi;
  } else {
    const double t = tol * std::max(1.0, sup);
    v.bound_holds = v.max_interior <= v.max_boundary + t;
    v.equality_case = v.max_interior >= v.max_boundary - t;
    v.constant = hi - lo <= t;
  }
  v.rigidity_holds = !v.equality_case || v.constant;
  return v;
}

// --- non-degenerate graphs ---------------------------------------------------

/// Power sums of |f|^q mu_x per distance shell 0..radius around `center`.
template <class T>
std::vector<PowerValue<T>> shell_power_sums(const WeightedGraph<T>& g, const VertexFunction<T>& f, double q,
                                            const std::vector<std::int64_t>& dist, std::size_t radius) {
  std::vector<VertexSet> shells(radius + 1);
  for (VertexIndex v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreachable && static_cast<std::size_t>(dist[v]) <= radius) shells[dist[v]].push_back(v);
  std::vector<PowerValue<T>> out;
  out.reserve(shells.size());
  for (const auto& s : shells) out.push_back(weighted_power_sum(g, f, q, s));
  return out;
}

/// Finite-scale stand-in for "tail sums tend to zero": the outer half of the
/// annulus (inner, outer] carries at most half of the annulus mass.
template <class T>
bool tail_vanishing(const std::vector<PowerValue<T>>& shells, std::size_t inner, std::size_t outer) {
  const std::size_t mid = (inner + outer) / 2;
  double tail = 0.0, far = 0.0;
  for (std::size_t d = inner + 1; d <= outer && d < shells.size(); ++d) {
    const double s = to_double(shells[d].value);
    tail += s;
    if (d > mid) far += s;
  }
  return far <= 0.5 * tail;
}

template <class T>
struct NondegenerateCheck {
  double mu0 = 0.0;
  T tail_sum{};               // sum over B_R \ B_r of |f|^q mu_x
  double certified_bound = 0; // (tail_sum / mu0)^(1/q)
  double actual_sup = 0;      // max over B_R \ B_r of |f|
  bool bound_holds = false;
  bool tail_vanishing = false;
  std::string verdict;
};

/// On a graph with mu_x >= mu0 every vertex of the annulus satisfies
/// |f(x)|^q mu0 <= tail sum, so small tails force small values.
template <class T>
NondegenerateCheck<T> verify_nondegenerate_liouville(const GraphFamily<T>& fam, const FunctionSource<T>& source,
                                                     double q, std::size_t inner, std::size_t outer) {
  if (!fam.measure_lower_bound) throw InputError("family '" + fam.name + "' has no certified measure lower bound");
  if (!(q > 0)) throw InputError("q must be positive");
  if (inner >= outer) throw InputError("need inner radius < outer radius");
  const auto w = materialize(fam, outer);
  const auto f = tabulate(w.graph, source);
  const T& mu0 = *fam.measure_lower_bound;
  for (VertexIndex x : w.domain.interior)
    if (w.graph.measure(x) < mu0)
      throw DefectError("family '" + fam.name + "' violates its measure bound at '" + w.graph.id(x) + "'");
  const auto dist = w.graph.distances_from(w.root);
  VertexSet annulus;
  double sup = 0.0;
  for (VertexIndex x : w.domain.interior) {
    if (static_cast<std::size_t>(dist[x]) > inner) {
      annulus.push_back(x);
      sup = std::max(sup, std::abs(to_double(required(w.graph, f, x))));
    }
  }
  NondegenerateCheck<T> out;
  out.mu0 = to_double(mu0);
  out.tail_sum = weighted_power_sum(w.graph, f, q, annulus).value;
  out.certified_bound = std::pow(to_double(out.tail_sum) / out.mu0, 1.0 / q);
  out.actual_sup = sup;
  out.bound_holds = sup <= out.certified_bound * (1 + 1e-12);
  out.tail_vanishing = tail_vanishing(shell_power_sums(w.graph, f, q, dist, outer), inner, outer);
  out.verdict = out.tail_vanishing ? "tail sums vanish: f -> 0 along growing radii" : "not L^q at this scale";
  return out;
}

}  // namespace lqharm
