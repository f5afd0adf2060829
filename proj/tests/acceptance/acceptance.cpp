// Acceptance run: one PASS/FAIL line per criterion check. With
// --criterion N only that criterion runs. Exit status 1 if anything failed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

#include "lqharm/caccioppoli.hpp"
#include "lqharm/calculus.hpp"
#include "lqharm/dirichlet.hpp"
#include "lqharm/examples.hpp"
#include "lqharm/identities.hpp"
#include "lqharm/io.hpp"
#include "lqharm/random.hpp"

using namespace lqharm;
using Q = Rational;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double v) { return io::format_double(v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- 1 -------------------------------------------------------------------------

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto w = materialize(dyadic_line<Q>(), 100);
  const auto f = tabulate(w.graph, dyadic_harmonic<Q>());
  std::size_t nonzero = 0;
  for (VertexIndex x : w.domain.interior)
    if (laplacian(w.graph, f, x) != 0) ++nonzero;
  const double t = seconds_since(t0);
  report(1, "dyadic harmonic has zero Laplacian at every vertex of B_100, rational", nonzero == 0,
         std::to_string(w.domain.interior.size()) + " vertices, " + std::to_string(nonzero) + " nonzero");
  report(1, "runtime < 5 s", t < 5.0, num(t) + " s");
}

// --- 2 -------------------------------------------------------------------------

void criterion2() {
  const auto w = materialize(dyadic_line<double>(), 60);
  const auto f = tabulate(w.graph, dyadic_abs<double>());
  auto S = [&](double q, std::size_t R) { return lq_norm(w.graph, f, q, w.graph.ball(w.root, R)).power_sum; };

  const double gap = std::abs(S(0.5, 60) - S(0.5, 40));
  report(2, "q = 1/2 power sums at R = 40 and R = 60 agree within 1e-7", gap <= 1e-7, "difference " + num(gap));

  const auto exact = growth_profile(dyadic_line<Q>(), dyadic_abs<Q>(), 1.0, 60);
  bool bounded = true, closed = true;
  double worst = 0;
  for (const auto& e : exact.entries) {
    const long R = static_cast<long>(e.radius);
    bounded = bounded && e.power_sum <= 6 * R;
    worst = std::max(worst, to_double(e.power_sum) / static_cast<double>(R));
    closed = closed && e.power_sum == Q(6 * R) - 6 * (Q(1) - Q(Q(1) / power_of_two<Q>(R)));
  }
  report(2, "q = 1: S_R / R <= 6 for all R <= 60", bounded, "max " + num(worst));
  report(2, "q = 1: S_R equals 6R - 6(1 - 2^-R) exactly for R <= 60", closed, "rational growth profile");
  const double s20 = to_double(exact.entries[19].power_sum) / 20;
  report(2, "q = 1: S_20 / 20 in [5.69, 5.71]", s20 >= 5.69 && s20 <= 5.71, num(s20));

  const auto g = growth_profile(dyadic_line<double>(), dyadic_abs<double>(), 1.5, 41);
  const double ratio = g.entries[40].karp / g.entries[39].karp;
  const double target = std::sqrt(2.0) * (40.0 / 41) * (40.0 / 41);
  report(2, "q = 1.5: A_41 / A_40 within 5% of sqrt(2) (40/41)^2", std::abs(ratio / target - 1) < 0.05,
         num(ratio) + " vs " + num(target));
}

// --- 3 -------------------------------------------------------------------------

void criterion3() {
  const auto t0 = std::chrono::steady_clock::now();
  for (double q : {1.5, 2.0, 3.0}) {
    const auto s = growth_profile(lattice<double>(2), abs_first_coordinate<double>(), q, 40);
    bool increasing = true;
    for (std::size_t R = 11; R <= 40; ++R) increasing = increasing && s.entries[R - 1].karp > s.entries[R - 2].karp;
    const double ratio = s.entries[39].karp / s.entries[9].karp;
    report(3, "Z2 |x1|, q = " + num(q) + ": A_R increasing on [10, 40]", increasing, "A_10 " + num(s.entries[9].karp) +
           ", A_40 " + num(s.entries[39].karp));
    report(3, "Z2 |x1|, q = " + num(q) + ": A_40 / A_10 > 10", ratio > 10, num(ratio));
  }
  const double t = seconds_since(t0);
  report(3, "runtime < 10 s", t < 10.0, num(t) + " s");
}

// --- 4 -------------------------------------------------------------------------

void criterion4() {
  const auto a = empirical_constant(builtin_corpus<double>(1));
  const auto b = empirical_constant(builtin_corpus<double>(2));
  report(4, "built-in corpus has 4 x 5 x 3 cases", a.rows.size() == 60 && b.rows.size() == 60,
         std::to_string(a.rows.size()) + " cases");
  report(4, "empirical constant is finite", std::isfinite(a.constant) && std::isfinite(b.constant),
         "C = " + num(a.constant) + ", doubled radii C = " + num(b.constant));
  const double change = std::max(a.constant / b.constant, b.constant / a.constant);
  report(4, "empirical constant changes by less than 4x when (r, R) double", change < 4, "factor " + num(change));
  report(4, "no case has lhs > 0 with rhs_core = 0", a.violations.empty() && b.violations.empty(),
         std::to_string(a.violations.size() + b.violations.size()) + " violation candidates");

  const auto w = materialize(dyadic_line<Q>(), 8);
  CaccioppoliOptions opt;
  opt.window_radius = w.radius;
  const auto rep = caccioppoli_sides(w.graph, tabulate(w.graph, dyadic_abs<Q>()), 2.0, w.root, 3, 8, opt);
  report(4, "dyadic |f|, q = 2, r = 3, R = 8: lhs = 14 exactly", rep.lhs == 14, format_rational(rep.lhs));

  // oracle: sum over 4 <= |n| <= 8 of 3 * 2^-|n| (2^|n| - 1)^2, over 25
  Q oracle(0);
  for (long n = 4; n <= 8; ++n) {
    const Q p(1L << n);
    oracle += 2 * Q(3 * (p - 1) * (p - 1) / p);
  }
  oracle = Q(oracle / 25);
  report(4, "dyadic |f|, q = 2, r = 3, R = 8: rhs_core equals the summation oracle", rep.rhs_core == oracle,
         format_rational(rep.rhs_core));
  const double ratio = rep.ratio.value_or(NAN);
  report(4, "dyadic |f|, q = 2, r = 3, R = 8: ratio about 0.72 (within 5%)", std::abs(ratio / 0.72 - 1) <= 0.05,
         "ratio " + num(ratio));
}

// --- 5 -------------------------------------------------------------------------

void criterion5() {
  const auto outcomes = run_identity_suite<Q>(0, 100);
  for (const auto& o : outcomes) {
    std::string detail = std::to_string(o.instances) + " instances, " + std::to_string(o.failures) + " failures";
    if (!o.first_failure.empty()) detail += ", first: " + o.first_failure;
    report(5, o.name + " (rational, seed 0)", o.passed() && o.instances >= 100, detail);
  }
}

// --- 6 -------------------------------------------------------------------------

void criterion6() {
  random::Rng rng(0);
  std::size_t bound_fail = 0, equality_nonconstant = 0, residual_nonzero = 0, equality = 0, constant_cases = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    const auto g = random::random_connected_graph<Q>(rng, {12 + k % 17, 10 + k % 9, true});
    const bool constant = k % 5 == 0;
    const auto p = random::random_dirichlet<Q>(rng, g, g.num_vertices() / 2, constant);
    const auto rep = solve_dirichlet(g, p);
    const auto mp = check_max_principle(g, rep.solution, p.domain);
    bool data_constant = true;
    for (VertexIndex y : p.domain.boundary)
      data_constant = data_constant && p.boundary_values[y] == p.boundary_values[p.domain.boundary.front()];
    if (!mp.bound_holds) ++bound_fail;
    if (mp.equality_case) {
      ++equality;
      if (!data_constant) ++equality_nonconstant;
    }
    constant_cases += data_constant;
    if (rep.residual != 0) ++residual_nonzero;
  }
  report(6, "max over interior <= max over boundary on 50 random solves", bound_fail == 0,
         std::to_string(bound_fail) + " failures");
  report(6, "equality case only with constant boundary data", equality_nonconstant == 0 && equality > 0,
         std::to_string(equality) + " equality cases, " + std::to_string(constant_cases) + " constant-data cases, " +
             std::to_string(equality_nonconstant) + " with nonconstant data");
  report(6, "rational solves have residual exactly 0", residual_nonzero == 0,
         std::to_string(residual_nonzero) + " nonzero residuals");
}

// --- 7 -------------------------------------------------------------------------

void criterion7() {
  const auto w = materialize(lattice<Q>(1), 50);
  const auto f = tabulate(w.graph, square_on_line<Q>());
  std::size_t bad1 = 0;
  for (VertexIndex x : w.domain.interior)
    if (laplacian(w.graph, f, x) != 1) ++bad1;
  report(7, "Delta(n^2) = 1 exactly on B_50", bad1 == 0,
         std::to_string(w.domain.interior.size()) + " vertices, " + std::to_string(bad1) + " mismatches");

  const auto inner = Domain::of(w.graph, w.graph.ball(w.root, 49));
  const auto it = iterate_laplacian(w.graph, f, 2, inner);
  std::size_t bad2 = 0;
  for (VertexIndex x : inner.interior)
    if (it.values[x] != 0) ++bad2;
  report(7, "Delta^2(n^2) = 0 exactly on the interior of B_50", bad2 == 0,
         std::to_string(inner.interior.size()) + " vertices, " + std::to_string(bad2) + " nonzero");
  const bool rings = it.halo_depth == 2 && it.usable_sizes.size() == 3 && it.usable_sizes[0] == 103 &&
                     it.usable_sizes[1] == 101 && it.usable_sizes[2] == 99;
  std::string sizes;
  for (auto s : it.usable_sizes) sizes += (sizes.empty() ? "" : "/") + std::to_string(s);
  report(7, "iterate_laplacian consumes 2 rings", rings, "usable sizes " + sizes);
}

// --- 8 -------------------------------------------------------------------------

void criterion8() {
  const std::size_t R = 20;
  const auto fam = glue(lattice<Q>(2), dyadic_line<Q>());
  const auto w = materialize(fam, R);
  const auto z = materialize(lattice<Q>(2), R);
  const auto d = materialize(dyadic_line<Q>(), R);
  const auto g = tabulate(w.graph, glued_function<Q>(dyadic_harmonic<Q>()));
  const auto c = classify(w.graph, g, w.domain, 0.0);
  std::size_t not_harmonic = 0;
  for (auto v : c.verdicts) not_harmonic += v != VertexVerdict::harmonic;
  const auto seam = std::find(c.vertices.begin(), c.vertices.end(), w.root);
  const bool seam_ok = seam != c.vertices.end() && c.laplacian[seam - c.vertices.begin()] == 0;
  report(8, "glued Z2 and dyadic line: harmonic at every interior vertex, tol = 0",
         c.verdict == DomainVerdict::harmonic && not_harmonic == 0,
         std::to_string(c.vertices.size()) + " vertices, " + std::to_string(not_harmonic) + " not harmonic");
  report(8, "seam vertex is harmonic", seam_ok, "Delta g(seam) = 0");

  report(8, "vertex count = |V1| + |V| - 1",
         w.graph.num_vertices() == z.graph.num_vertices() + d.graph.num_vertices() - 1,
         std::to_string(w.graph.num_vertices()) + " = " + std::to_string(z.graph.num_vertices()) + " + " +
             std::to_string(d.graph.num_vertices()) + " - 1");
  bool additive = w.graph.measure(w.root) == z.graph.measure(z.root) + d.graph.measure(d.root);
  for (VertexIndex v = 0; v < z.graph.num_vertices(); ++v) {
    if (v == z.root) continue;
    additive = additive && w.graph.measure(w.graph.index("g1:" + z.graph.id(v))) == z.graph.measure(v);
  }
  for (VertexIndex v = 0; v < d.graph.num_vertices(); ++v) {
    if (v == d.root) continue;
    additive = additive && w.graph.measure(w.graph.index(d.graph.id(v))) == d.graph.measure(v);
  }
  additive = additive && w.graph.total_volume() == z.graph.total_volume() + d.graph.total_volume();
  report(8, "seam measure adds, other measures unchanged, total volume adds", additive,
         "mu(seam) = " + format_rational(w.graph.measure(w.root)));
}

// --- 9 -------------------------------------------------------------------------

void criterion9() {
  random::Rng rng(0);
  std::size_t cases = 0, constant = 0;
  std::string first_bad;
  const GraphFamily<Q> families[] = {lattice<Q>(1), lattice<Q>(2), regular_tree<Q>(2), regular_tree<Q>(3)};
  for (const auto& fam : families) {
    for (std::size_t R : {3u, 4u}) {
      const auto w = materialize(fam, R);
      for (double q : {1.5, 2.0, 3.0}) {
        DirichletProblem<Q> p;
        p.domain = w.domain;
        p.boundary_values = VertexFunction<Q>(w.graph.num_vertices());
        const Q c = abs_value(random::random_value<Q>(rng, 3));
        for (VertexIndex y : p.domain.boundary) p.boundary_values.set(y, c);
        const auto sol = solve_dirichlet(w.graph, p).solution;
        const auto rep = liouville_flatness_check(w.graph, sol, q, w.root, R, w.radius);
        ++cases;
        if (rep.verdict == FlatnessVerdict::constant) ++constant;
        else if (first_bad.empty()) first_bad = fam.name + " R=" + std::to_string(R) + " q=" + num(q);
      }
    }
  }
  report(9, "solver-produced L^q-small harmonic functions are flagged constant", constant == cases,
         std::to_string(constant) + "/" + std::to_string(cases) + (first_bad.empty() ? "" : ", first: " + first_bad));

  const auto w = materialize(dyadic_line<Q>(), 30);
  const auto f = tabulate(w.graph, dyadic_abs<Q>());
  const auto rep = liouville_flatness_check(w.graph, f, 2.0, w.root, 30, w.radius);
  report(9, "dyadic harmonic at q = 2: nonconstant, f not in L^q",
         rep.verdict == FlatnessVerdict::nonconstant && rep.lq_divergent, rep.summary);
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  const std::function<void()> all[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                        criterion6, criterion7, criterion8, criterion9};
  if (only < 0 || only > 9) {
    std::fprintf(stderr, "criterion must be 1..9\n");
    return 2;
  }
  for (int k = 1; k <= 9; ++k) {
    if (only != 0 && only != k) continue;
    try {
      all[k - 1]();
    } catch (const std::exception& e) {
      report(k, "ran without error", false, e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}
