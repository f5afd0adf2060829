#pragma once

// Caccioppoli-type energy estimate for nonnegative subharmonic functions,
// Karp-type growth profiles and the diagnostic trace of the quantities used
// in the growth dichotomy argument.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lqharm/calculus.hpp"
#include "lqharm/dirichlet.hpp"
#include "lqharm/family.hpp"
#include "lqharm/function.hpp"
#include "lqharm/graph.hpp"

namespace lqharm {

// --- cutoff ------------------------------------------------------------------

/// Radial piecewise-linear test function around `center`:
/// 1 for d <= r+1, (R - d)/(R - r - 1) for r+1 <= d <= R, 0 beyond.
template <class T>
struct CutoffProfile {
  VertexIndex center = 0;
  std::size_t inner = 0;
  std::size_t outer = 0;
  std::vector<std::int64_t> distance;
  VertexFunction<T> phi;
};

/// Violated cutoff properties, empty when all hold.
template <class T>
std::vector<std::string> cutoff_violations(const WeightedGraph<T>& g, const CutoffProfile<T>& c) {
  std::vector<std::string> bad;
  const auto r = static_cast<std::int64_t>(c.inner);
  const auto R = static_cast<std::int64_t>(c.outer);
  auto d = [&](VertexIndex v) { return c.distance[v] == kUnreachable ? R + 1 : c.distance[v]; };
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const T& p = c.phi[v];
    if (p < 0 || p > 1) bad.push_back("phi out of [0,1] at '" + g.id(v) + "'");
    if (d(v) <= r + 1 && p != 1) bad.push_back("phi != 1 inside B_{r+1} at '" + g.id(v) + "'");
    if (d(v) >= R && p != 0) bad.push_back("phi != 0 outside B_{R-1} at '" + g.id(v) + "'");
  }
  const T slope_bound = T(2) / T(static_cast<long>(R - r));
  for (const auto& e : g.edges()) {
    const T& pa = c.phi[e.a];
    const T& pb = c.phi[e.b];
    const T grad = abs_value(T(pb - pa));
    const std::string name = "'" + g.id(e.a) + "'-'" + g.id(e.b) + "'";
    if (grad > slope_bound) bad.push_back("|grad phi| > 2/(R-r) on " + name);
    const bool in_annulus = d(e.a) > r && d(e.a) <= R && d(e.b) > r && d(e.b) <= R;
    if (grad != 0 && !in_annulus) bad.push_back("grad phi != 0 outside B_R \\ B_r on " + name);
    // phi(x) <= 2 phi(y) for every edge not contained in B_R \ B_{R-2}.
    const bool in_outer_shell = d(e.a) > R - 2 && d(e.a) <= R && d(e.b) > R - 2 && d(e.b) <= R;
    if (!in_outer_shell && (pa > 2 * pb || pb > 2 * pa)) bad.push_back("phi ratio above 2 on " + name);
  }
  return bad;
}

/// Builds the cutoff and verifies every profile property. When the graph is
/// a window of radius `window_radius`, R may not exceed it.
template <class T>
CutoffProfile<T> cutoff(const WeightedGraph<T>& g, VertexIndex center, std::size_t inner, std::size_t outer,
                        std::optional<std::size_t> window_radius = std::nullopt) {
  if (inner < 1) throw InputError("cutoff needs r >= 1");
  if (outer < inner + 2)
    throw InputError("degenerate cutoff: need R >= r + 2 (got r = " + std::to_string(inner) +
                     ", R = " + std::to_string(outer) + ")");
  if (window_radius && *window_radius < outer)
    throw InputError("cutoff needs the graph materialized through radius " + std::to_string(outer) +
                     " (window radius is " + std::to_string(*window_radius) + ")");
  CutoffProfile<T> c;
  c.center = center;
  c.inner = inner;
  c.outer = outer;
  c.distance = g.distances_from(center);
  c.phi = VertexFunction<T>(g.num_vertices());
  const long span = static_cast<long>(outer - inner - 1);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    const auto dv = c.distance[v];
    if (dv != kUnreachable && dv <= static_cast<std::int64_t>(inner) + 1) {
      c.phi.set(v, T(1));
    } else if (dv != kUnreachable && dv < static_cast<std::int64_t>(outer)) {
      c.phi.set(v, T(T(static_cast<long>(outer) - static_cast<long>(dv)) / T(span)));
    } else {
      c.phi.set(v, T(0));
    }
  }
  if (auto bad = cutoff_violations(g, c); !bad.empty()) throw DefectError("cutoff property violated: " + bad.front());
  return c;
}

// --- Caccioppoli sides -------------------------------------------------------

namespace detail {

/// min{f^{q-2}(x), f^{q-2}(y)} for f >= 0 with the 0 * inf = 0 convention
/// folded in: callers skip edges with zero gradient, and for q < 2 the
/// minimum is attained at the larger (hence positive) endpoint.
template <class T>
PowerValue<T> min_weight(const T& fx, const T& fy, double q) {
  if (q == 2.0) return {T(1), true};
  const T& pick = q > 2.0 ? (fx < fy ? fx : fy) : (fx < fy ? fy : fx);
  if (q > 2.0 && pick == 0) return {T(0), true};
  return abs_power(pick, q - 2.0);
}

/// f^{q-2}(v) with 0^0 = 1 and 0^{negative} reported as infinite (nullopt).
template <class T>
std::optional<PowerValue<T>> single_weight(const T& fv, double q) {
  if (q == 2.0) return PowerValue<T>{T(1), true};
  if (fv == 0) {
    if (q > 2.0) return PowerValue<T>{T(0), true};
    return std::nullopt;
  }
  return abs_power(fv, q - 2.0);
}

}  // namespace detail

template <class T>
struct CaccioppoliReport {
  T lhs{};       // sum_{e in B_r} mu_e |grad f|^2 min{f^{q-2}(x), f^{q-2}(y)}
  T rhs_core{};  // (R - r)^{-2} sum_{B_R \ B_r} f^q mu_x
  std::optional<double> ratio;  // lhs / rhs_core when rhs_core > 0
  bool exact = true;
  bool violation_candidate = false;  // lhs > 0 with rhs_core == 0
  double q = 0;
  std::size_t inner = 0;
  std::size_t outer = 0;
  VertexIndex center = 0;
  double epsilon = 0;
};

struct CaccioppoliOptions {
  std::optional<std::size_t> window_radius;  // graph is a window of this radius
  double epsilon = 0;                        // evaluate with f + epsilon
  std::optional<double> tol;                 // classification tolerance override
};

/// Left side of the energy estimate over edges inside `ball`, evaluated with
/// the given orientation. The value does not depend on the orientation.
template <class T>
PowerValue<T> caccioppoli_lhs(const WeightedGraph<T>& g, const VertexFunction<T>& f, double q,
                              const VertexSet& ball, const EdgeOrientation& orientation) {
  std::vector<char> in(g.num_vertices(), 0);
  for (VertexIndex v : ball) in[v] = 1;
  std::vector<T> terms;
  bool exact = true;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (ed.is_loop() || !in[ed.a] || !in[ed.b]) continue;
    const T grad = gradient(g, orientation, f, e);
    if (grad == 0) continue;
    const VertexIndex s = orientation.start(g, e), t = orientation.end(g, e);
    const auto w = detail::min_weight(f[s], f[t], q);
    exact = exact && w.exact;
    terms.push_back(T(ed.weight * grad * grad * w.value));
  }
  return {reduce_sum(terms), exact && is_exact_v<T>};
}

/// Evaluates both sides of the estimate for f >= 0 subharmonic on B_R(center).
template <class T>
CaccioppoliReport<T> caccioppoli_sides(const WeightedGraph<T>& g, const VertexFunction<T>& f_in, double q,
                                       VertexIndex center, std::size_t inner, std::size_t outer,
                                       const CaccioppoliOptions& opt = {}) {
  if (!(q > 1) || !std::isfinite(q)) throw InputError("Caccioppoli estimate needs 1 < q < infinity");
  if (opt.epsilon < 0) throw InputError("epsilon shift must be non-negative");
  const auto phi = cutoff(g, center, inner, outer, opt.window_radius);
  const VertexSet big = g.ball(center, outer);
  const VertexSet small = g.ball(center, inner);

  VertexFunction<T> f = f_in;
  if (opt.epsilon > 0) {
    const T eps = ScalarTraits<T>::from_double(opt.epsilon);
    for (VertexIndex v = 0; v < f.size(); ++v)
      if (f.defined(v)) f.set(v, T(f[v] + eps));
  }
  for (VertexIndex x : big)
    if (required(g, f, x) < 0) throw PreconditionError("f is negative at '" + g.id(x) + "'", g.id(x));
  const auto cls = classify(g, f, Domain::of(g, big), opt.tol.value_or(default_tolerance<T>()));
  require_subharmonic(g, cls);

  CaccioppoliReport<T> rep;
  rep.q = q;
  rep.inner = inner;
  rep.outer = outer;
  rep.center = center;
  rep.epsilon = opt.epsilon;
  const auto lhs = caccioppoli_lhs(g, f, q, small, EdgeOrientation::canonical(g.num_edges()));
  VertexSet annulus;
  std::set_difference(big.begin(), big.end(), small.begin(), small.end(), std::back_inserter(annulus));
  const auto mass = weighted_power_sum(g, f, q, annulus);
  const long gap = static_cast<long>(outer - inner);
  rep.lhs = lhs.value;
  rep.rhs_core = T(mass.value / T(gap * gap));
  rep.exact = lhs.exact && mass.exact && is_exact_v<T>;
  if (rep.rhs_core > 0) rep.ratio = to_double(rep.lhs) / to_double(rep.rhs_core);
  rep.violation_candidate = rep.rhs_core == 0 && rep.lhs > 0;
  return rep;
}

// --- growth profile ----------------------------------------------------------

template <class T>
struct GrowthEntry {
  std::size_t radius;
  T power_sum;  // S_R = sum_{B_R} |f|^q mu_x
  T karp;       // A_R = S_R / R^2
};

template <class T>
struct GrowthSeries {
  std::vector<GrowthEntry<T>> entries;  // R = 1..R_max
  double q = 0;
  std::string center;
  bool exact = true;
};

/// S_R and A_R for R = 1..max_radius on an already materialized window.
template <class T>
GrowthSeries<T> growth_profile(const Window<T>& w, const VertexFunction<T>& f, double q, std::size_t max_radius) {
  if (!(q > 0)) throw InputError("growth profile needs q > 0");
  if (max_radius < 1) throw InputError("growth profile needs R_max >= 1");
  if (max_radius > w.radius)
    throw InputError("growth profile to radius " + std::to_string(max_radius) + " needs a window of that radius");
  const auto dist = w.graph.distances_from(w.root);
  const auto shells = shell_power_sums(w.graph, f, q, dist, max_radius);
  GrowthSeries<T> out;
  out.q = q;
  out.center = w.graph.id(w.root);
  T running = shells[0].value;
  out.exact = shells[0].exact && is_exact_v<T>;
  for (std::size_t R = 1; R <= max_radius; ++R) {
    running += shells[R].value;
    out.exact = out.exact && shells[R].exact;
    const long r2 = static_cast<long>(R * R);
    out.entries.push_back({R, running, T(running / T(r2))});
  }
  return out;
}

template <class T>
GrowthSeries<T> growth_profile(const GraphFamily<T>& fam, const FunctionSource<T>& source, double q,
                               std::size_t max_radius) {
  const auto w = materialize(fam, max_radius);
  return growth_profile(w, tabulate(w.graph, source), q, max_radius);
}

// --- proof trace ---------------------------------------------------------------

struct TraceLevel {
  std::size_t radius = 0;
  double karp = 0;                  // A_i
  std::optional<double> energy;     // Q_i, from level 2 on
  std::optional<double> shell_term; // beta_{i-1}, the outer-shell energy (q >= 2)
  std::optional<double> residual;   // Q_i^2 - C A_i (Q_i - Q_{i-1} + beta_{i-1}), from level 3 on
};

struct ProofTrace {
  double q = 0;
  double constant = 0;  // the supplied C
  int regime = 0;       // 1: 1 < q < 2, 2: q >= 2
  std::vector<TraceLevel> levels;
  double max_karp = 0;  // K
};

/// Traces A_i, Q_i and beta_i along R_{i+1} = 2 R_i, starting at `first_radius`
/// and stopping at the last radius not above `radius_limit`.
template <class T>
ProofTrace proof_trace(const GraphFamily<T>& fam, const FunctionSource<T>& source, double q,
                       std::size_t first_radius, std::size_t radius_limit, double C) {
  if (!(q > 1)) throw InputError("proof trace needs q > 1");
  if (first_radius < 2) throw InputError("proof trace needs R_1 >= 2 so that every cutoff is non-degenerate");
  std::vector<std::size_t> radii;
  for (std::size_t R = first_radius; R <= radius_limit && R <= fam.max_radius; R *= 2) radii.push_back(R);
  if (radii.size() < 2)
    throw InputError("proof trace needs at least two radii R_1, 2 R_1 within the limit " + std::to_string(radius_limit));
  const auto w = materialize(fam, radii.back());
  const auto& g = w.graph;
  const auto f = tabulate(g, source);
  for (VertexIndex x : w.domain.interior)
    if (required(g, f, x) < 0) throw PreconditionError("f is negative at '" + g.id(x) + "'", g.id(x));
  require_subharmonic(g, classify(g, f, w.domain));

  const auto orient = EdgeOrientation::adapted(g, f);
  const auto dist = g.distances_from(w.root);
  const auto shells = shell_power_sums(g, f, q, dist, radii.back());

  ProofTrace tr;
  tr.q = q;
  tr.constant = C;
  tr.regime = q < 2.0 ? 1 : 2;
  double mass = 0;
  std::size_t shell_done = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (; shell_done <= radii[i]; ++shell_done) mass += to_double(shells[shell_done].value);
    TraceLevel lv;
    lv.radius = radii[i];
    lv.karp = mass / static_cast<double>(radii[i] * radii[i]);
    tr.max_karp = std::max(tr.max_karp, lv.karp);
    tr.levels.push_back(lv);
  }

  auto within = [&](VertexIndex v, std::size_t R) { return static_cast<std::size_t>(dist[v]) <= R; };
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const std::size_t r = radii[i], R = radii[i + 1];
    const auto phi = cutoff(g, w.root, r, R, w.radius);
    double energy = 0, shell = 0;
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      const auto& ed = g.edge(e);
      if (ed.is_loop() || !within(ed.a, R) || !within(ed.b, R)) continue;
      const double grad = to_double(gradient(g, orient, f, e));
      if (grad == 0) continue;
      const VertexIndex s = orient.start(g, e), t = orient.end(g, e);
      const double base = to_double(ed.weight) * grad * grad;
      if (tr.regime == 1) {
        // f^{q-2}(end) phi^2(start); f(end) > f(start) >= 0 here.
        const double ph = to_double(phi.phi[s]);
        energy += base * to_double(detail::single_weight(f[t], q)->value) * ph * ph;
      } else {
        const double ph = to_double(phi.phi[t]);
        const double ws = to_double(detail::single_weight(f[s], q)->value);
        energy += base * ws * ph * ph;
        if (static_cast<std::size_t>(dist[ed.a]) + 2 > R && static_cast<std::size_t>(dist[ed.b]) + 2 > R)
          shell += base * ws;
      }
    }
    auto& lv = tr.levels[i + 1];
    lv.energy = energy;
    lv.shell_term = tr.regime == 2 ? C * shell / static_cast<double>((R - r) * (R - r)) : 0.0;
    if (i >= 1) {
      const double prev = *tr.levels[i].energy;
      lv.residual = energy * energy - C * lv.karp * (energy - prev + *lv.shell_term);
    }
  }
  return tr;
}

// --- empirical constant ------------------------------------------------------

template <class T>
struct CorpusCase {
  std::string label;
  GraphFamily<T> family;
  std::string function_name;  // identifies `function` for window caching
  FunctionSource<T> function;
  double q = 2;
  std::size_t inner = 1;
  std::size_t outer = 3;
};

struct CorpusRow {
  std::string label;
  double q = 0;
  std::size_t inner = 0;
  std::size_t outer = 0;
  double lhs = 0;
  double rhs_core = 0;
  std::optional<double> ratio;
  bool violation_candidate = false;
};

struct EmpiricalConstant {
  double constant = 0;  // sup of lhs / rhs_core over the corpus
  std::vector<CorpusRow> rows;
  std::vector<std::size_t> violations;  // rows with lhs > 0 and rhs_core == 0
};

/// Smallest C with lhs <= C * rhs_core on every case of the corpus.
template <class T>
EmpiricalConstant empirical_constant(const std::vector<CorpusCase<T>>& corpus) {
  EmpiricalConstant out;
  std::map<std::pair<std::string, std::size_t>, std::pair<Window<T>, VertexFunction<T>>> cache;
  for (const auto& c : corpus) {
    const auto key = std::make_pair(c.family.name + "|" + c.function_name, c.outer);
    auto it = cache.find(key);
    if (it == cache.end()) {
      auto w = materialize(c.family, c.outer);
      auto f = tabulate(w.graph, c.function);
      it = cache.emplace(key, std::make_pair(std::move(w), std::move(f))).first;
    }
    const auto& [w, f] = it->second;
    CaccioppoliOptions opt;
    opt.window_radius = w.radius;
    const auto rep = caccioppoli_sides(w.graph, f, c.q, w.root, c.inner, c.outer, opt);
    CorpusRow row{c.label, c.q, c.inner, c.outer, to_double(rep.lhs), to_double(rep.rhs_core), rep.ratio,
                  rep.violation_candidate};
    if (row.violation_candidate) out.violations.push_back(out.rows.size());
    if (row.ratio) out.constant = std::max(out.constant, *row.ratio);
    out.rows.push_back(std::move(row));
  }
  return out;
}

// --- rigidity mechanism ------------------------------------------------------

enum class FlatnessVerdict { constant, nonconstant, propagation_failed };
std::string_view to_string(FlatnessVerdict v);

template <class T>
struct FlatnessReport {
  double max_edge_quantity = 0;  // max |grad f| min{f^{q-2}(x), f^{q-2}(y)} over edges in B_{R/2}
  bool flat = false;             // max_edge_quantity <= tolerance
  bool locally_constant = false; // f constant on B_{R/2}
  bool lq_divergent = false;     // shell masses grow outward on B_R
  FlatnessVerdict verdict = FlatnessVerdict::constant;
  std::string summary;
};

/// Evaluates the edge quantity that must vanish for an L^q nonnegative
/// subharmonic f, and whether vanishing propagates to local constancy.
template <class T>
FlatnessReport<T> liouville_flatness_check(const WeightedGraph<T>& g, const VertexFunction<T>& f, double q,
                                           VertexIndex center, std::size_t radius,
                                           std::optional<std::size_t> window_radius = std::nullopt,
                                           double tol = default_tolerance<T>()) {
  if (!(q > 1)) throw InputError("flatness check needs q > 1");
  if (radius < 2) throw InputError("flatness check needs R >= 2");
  if (window_radius && *window_radius < radius)
    throw InputError("flatness check needs a window of radius " + std::to_string(radius));
  const VertexSet big = g.ball(center, radius);
  for (VertexIndex x : big)
    if (required(g, f, x) < 0) throw PreconditionError("f is negative at '" + g.id(x) + "'", g.id(x));
  require_subharmonic(g, classify(g, f, Domain::of(g, big), tol));

  const VertexSet half = g.ball(center, radius / 2);
  std::vector<char> in(g.num_vertices(), 0);
  double sup = 0;
  for (VertexIndex v : half) {
    in[v] = 1;
    sup = std::max(sup, std::abs(to_double(f[v])));
  }
  FlatnessReport<T> rep;
  for (const auto& e : g.edges()) {
    if (e.is_loop() || !in[e.a] || !in[e.b]) continue;
    const T grad = abs_value(T(f[e.b] - f[e.a]));
    if (grad == 0) continue;
    const auto w = detail::min_weight(f[e.a], f[e.b], q);
    rep.max_edge_quantity = std::max(rep.max_edge_quantity, to_double(grad) * to_double(w.value));
  }
  const double t = tol * std::max(1.0, sup);
  rep.flat = rep.max_edge_quantity <= t;
  T lo = f[half.front()], hi = f[half.front()];
  for (VertexIndex v : half) {
    if (f[v] < lo) lo = f[v];
    if (f[v] > hi) hi = f[v];
  }
  rep.locally_constant = to_double(T(hi - lo)) <= t;
  const auto dist = g.distances_from(center);
  rep.lq_divergent = !tail_vanishing(shell_power_sums(g, f, q, dist, radius), 0, radius);
  if (rep.flat) {
    rep.verdict = rep.locally_constant ? FlatnessVerdict::constant : FlatnessVerdict::propagation_failed;
    rep.summary = rep.locally_constant ? "constant" : "edge quantity vanishes but f is not locally constant";
  } else {
    rep.verdict = FlatnessVerdict::nonconstant;
    rep.summary = rep.lq_divergent ? "nonconstant, consistent: f not in L^q" : "nonconstant";
  }
  return rep;
}

}  // namespace lqharm
