#pragma once

// Randomized sweep over the calculus identities: Green's formula, the
// product rule, Delta = P - I, L^1 preservation of P, the bound
// ||Delta||_{q->q} <= 2 and superharmonicity of min{f, a} for harmonic f.
// Rational mode demands exact equality.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lqharm/calculus.hpp"
#include "lqharm/dirichlet.hpp"
#include "lqharm/random.hpp"

namespace lqharm {

struct IdentityOutcome {
  std::string name;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double worst = 0;  // largest defect seen (relative in float64)
  std::string first_failure;
  bool passed() const { return instances > 0 && failures == 0; }
};

inline constexpr double kFloatIdentityTolerance = 1e-12;

namespace detail {

template <class T>
bool defect_ok(const T& defect, double scale, double& worst) {
  if constexpr (is_exact_v<T>) {
    worst = std::max(worst, std::abs(rational_to_double(defect)));
    return defect == 0;
  } else {
    const double rel = std::abs(defect) / std::max(1.0, scale);
    worst = std::max(worst, rel);
    return rel <= kFloatIdentityTolerance;
  }
}

inline void record(IdentityOutcome& o, bool ok, std::size_t instance, const std::string& what) {
  ++o.instances;
  if (!ok) {
    if (o.failures == 0) o.first_failure = "instance " + std::to_string(instance) + ": " + what;
    ++o.failures;
  }
}

}  // namespace detail

/// Runs each identity on `instances` random graphs drawn from `seed`.
template <class T>
std::vector<IdentityOutcome> run_identity_suite(std::uint64_t seed, std::size_t instances) {
  random::Rng rng(seed);
  IdentityOutcome green{"green-formula"}, product{"product-rule"}, pmi{"laplacian-equals-P-minus-I"},
      l1{"transition-preserves-l1"}, norm{"operator-norm-at-most-2"}, trunc{"min-truncation-superharmonic"};
  const double qs[] = {1.0, 1.5, 2.0, 3.0, 7.5};

  for (std::size_t k = 0; k < instances; ++k) {
    random::GraphShape shape;
    shape.vertices = 8 + k % 23;
    shape.extra_edges = shape.vertices / 2 + k % 7;
    const auto g = random::random_connected_graph<T>(rng, shape);
    const auto f = random::random_function<T>(rng, g);
    const auto h = random::random_function<T>(rng, g);

    // f is known everywhere, so any test function is admissible.
    {
      const auto test = random::random_sparse<T>(rng, g, 0.4);
      const auto gc = check_green(g, f, test);
      detail::record(green, detail::defect_ok(gc.residual, gc.scale, green.worst), k,
                     "residual " + std::to_string(to_double(gc.residual)));
    }

    // Product rule on every edge, under a random orientation.
    {
      auto orient = EdgeOrientation::canonical(g.num_edges());
      std::bernoulli_distribution flip(0.5);
      for (EdgeIndex e = 0; e < g.num_edges(); ++e)
        if (flip(rng)) orient.reverse(e);
      VertexFunction<T> fh(g.num_vertices());
      for (VertexIndex v = 0; v < g.num_vertices(); ++v) fh.set(v, T(f[v] * h[v]));
      bool ok = true;
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const VertexIndex s = orient.start(g, e), t = orient.end(g, e);
        const T lhs = gradient(g, orient, fh, e);
        const T rhs = f[s] * gradient(g, orient, h, e) + gradient(g, orient, f, e) * h[t];
        const double scale = std::abs(to_double(T(f[s] * h[s]))) + std::abs(to_double(T(f[t] * h[t])));
        ok = detail::defect_ok(T(lhs - rhs), scale, product.worst) && ok;
      }
      detail::record(product, ok, k, "edge identity violated");
    }

    // Delta = P - I pointwise.
    {
      bool ok = true;
      for (VertexIndex x = 0; x < g.num_vertices(); ++x) {
        const T d = transition_apply(g, f, x) - f[x] - laplacian(g, f, x);
        ok = detail::defect_ok(d, std::abs(to_double(f[x])) + 1.0, pmi.worst) && ok;
      }
      detail::record(pmi, ok, k, "pointwise mismatch");
    }

    // ||Pf||_1 = ||f||_1 for f >= 0 on the whole (finite) graph.
    {
      const auto pos = random::random_nonnegative<T>(rng, g);
      T mass(0);
      for (VertexIndex x = 0; x < g.num_vertices(); ++x) mass += pos[x] * g.measure(x);
      const T d = check_l1_preservation(g, pos);
      detail::record(l1, detail::defect_ok(d, to_double(mass), l1.worst), k, "mass changed");
    }

    // ||Delta f||_q / ||f||_q <= 2.
    {
      const double q = qs[k % std::size(qs)];
      auto sparse = random::random_sparse<T>(rng, g, 0.5);
      if (sparse.support().empty()) sparse.set(0, T(1));
      const double ratio = operator_norm_check(g, sparse, q);
      norm.worst = std::max(norm.worst, ratio);
      detail::record(norm, ratio <= 2.0 + (is_exact_v<T> ? 1e-12 : kFloatIdentityTolerance), k,
                     "ratio " + std::to_string(ratio) + " at q=" + std::to_string(q));
    }

    // Harmonic f on a random domain, then min{f, a} is superharmonic there.
    {
      const auto p = random::random_dirichlet<T>(rng, g, g.num_vertices() / 2);
      const auto sol = solve_dirichlet(g, p).solution;
      T a = sol[p.domain.interior[rng() % p.domain.interior.size()]];
      if (rng() % 2) a = a + random::random_value<T>(rng, 2);
      const auto c = classify(g, truncate_min(sol, a), p.domain);
      detail::record(trunc, is_superharmonic(c.verdict), k,
                     std::string("verdict ") + std::string(to_string(c.verdict)));
    }
  }
  return {green, product, pmi, l1, norm, trunc};
}

}  // namespace lqharm
