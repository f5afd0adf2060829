#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lqharm/calculus.hpp"
#include "lqharm/examples.hpp"

using namespace lqharm;
using Q = Rational;

namespace {

WeightedGraph<Q> triangle(bool loop_at_mark) {
  std::vector<EdgeSpec<Q>> e = {{"p", "a", Q(1)}, {"a", "b", Q(2)}, {"b", "p", Q(1, 3)}};
  if (loop_at_mark) e.push_back({"p", "p", Q(5)});
  return WeightedGraph<Q>::from_edges(std::move(e));
}

// edge list as sorted (u, v, w) triples with u <= v
std::vector<std::tuple<std::string, std::string, Q>> edge_multiset(const WeightedGraph<Q>& g) {
  std::vector<std::tuple<std::string, std::string, Q>> out;
  for (const auto& e : g.edges()) {
    auto u = g.id(e.a), v = g.id(e.b);
    if (v < u) std::swap(u, v);
    out.emplace_back(u, v, e.weight);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("dyadic weights and measures") {
  const auto w = materialize(dyadic_line<Q>(), 10);
  const auto& g = w.graph;
  CHECK(g.weight(g.index("2"), g.index("3")) == Q(1, 4));
  CHECK(g.weight(g.index("-3"), g.index("-2")) == Q(1, 4));
  CHECK(g.measure(g.index("0")) == 2);
  for (long n = 1; n <= 10; ++n) {
    CHECK(g.measure(g.index(line_id(n))) == Q(3) / power_of_two<Q>(n));
    CHECK(g.measure(g.index(line_id(-n))) == Q(3) / power_of_two<Q>(n));
  }
  Q vol(0);
  for (VertexIndex v : w.domain.interior) vol += g.measure(v);
  CHECK(vol < 8);
  // 2 + 2 * 3 * (1 - 2^-10)
  CHECK(vol == Q(2) + 6 * (Q(1) - Q(Q(1) / power_of_two<Q>(10))));
}

TEST_CASE("dyadic volumes stay below 8") {
  const auto w = materialize(dyadic_line<Q>(), 200);
  Q vol(0);
  for (VertexIndex v : w.domain.interior) vol += w.graph.measure(v);
  CHECK(vol < 8);
  CHECK(vol > Q(79, 10));
}

TEST_CASE("dyadic harmonic values") {
  CHECK(dyadic_harmonic_value<Q>(3) == 7);
  CHECK(dyadic_harmonic_value<Q>(-1) == -1);
  CHECK(dyadic_harmonic_value<Q>(0) == 0);
  for (long n = 0; n <= 200; ++n) CHECK(dyadic_harmonic_value<Q>(n) == -dyadic_harmonic_value<Q>(-n));
  CHECK(dyadic_harmonic_value<double>(900) == std::ldexp(1.0, 900));
  CHECK_THROWS_AS(dyadic_harmonic_value<Q>(202), InputError);
  CHECK_THROWS_AS(dyadic_harmonic_value<double>(902), InputError);
  CHECK_THROWS_AS(materialize(dyadic_line<Q>(), 201), InputError);

  const auto w = materialize(dyadic_line<Q>(), 4);
  const auto f = tabulate(w.graph, dyadic_harmonic<Q>());
  CHECK(laplacian(w.graph, f, w.graph.index("2")) == 0);
}

TEST_CASE("dyadic harmonic is exactly harmonic through R = 200") {
  const auto w = materialize(dyadic_line<Q>(), 200);
  const auto f = tabulate(w.graph, dyadic_harmonic<Q>());
  std::size_t nonzero = 0;
  for (VertexIndex x : w.domain.interior) nonzero += laplacian(w.graph, f, x) != 0;
  CHECK(nonzero == 0);
  CHECK(w.domain.interior.size() == 401);
  CHECK(classify(w.graph, f, w.domain, 0.0).verdict == DomainVerdict::harmonic);
}

TEST_CASE("lattice and tree sizes") {
  CHECK(materialize(lattice<Q>(2), 1).domain.interior.size() == 5);
  CHECK(materialize(lattice<Q>(2), 3).domain.interior.size() == 25);
  CHECK(materialize(lattice<Q>(1), 4).domain.interior.size() == 9);
  CHECK(materialize(regular_tree<Q>(2), 2).domain.interior.size() == 10);
  CHECK(materialize(regular_tree<Q>(3), 2).domain.interior.size() == 1 + 4 + 12);
  CHECK_THROWS_AS(lattice<Q>(3), InputError);
  CHECK_THROWS_AS(regular_tree<Q>(1), InputError);

  const auto z = materialize(lattice<Q>(1), 5);
  for (VertexIndex x : z.domain.interior) CHECK(z.graph.measure(x) == 2);
  const auto t = materialize(regular_tree<Q>(2), 3);
  for (VertexIndex x : t.domain.interior) CHECK(t.graph.measure(x) == 3);
}

TEST_CASE("id helpers") {
  CHECK(line_id(-4) == "-4");
  CHECK(parse_line_id("17") == 17);
  CHECK(!parse_line_id("1,2"));
  CHECK(!parse_line_id("x"));
  CHECK(lattice2_id(-1, 3) == "-1,3");
  CHECK(parse_lattice2_id("-1,3") == std::make_pair<std::int64_t, std::int64_t>(-1, 3));
  CHECK(!parse_lattice2_id("4"));
  CHECK(tree_depth("t") == 0);
  CHECK(tree_depth("t.2.0.1") == 3);
  CHECK(!tree_depth("3"));
}

TEST_CASE("glue triangle with the dyadic line") {
  for (std::size_t N : {3u, 10u}) {
    const auto line = materialize(dyadic_line<Q>(), N - 1).graph;  // B_N window
    REQUIRE(line.num_vertices() == 2 * N + 1);
    const auto tri = triangle(false);
    const auto glued = glue(tri, "p", line, "0");
    const auto& g = glued.graph;
    CHECK(g.num_vertices() == 3 + (2 * N + 1) - 1);
    CHECK(g.num_edges() == tri.num_edges() + line.num_edges());
    CHECK(glued.seam == "0");
    const VertexIndex s = g.index("0");
    CHECK(g.measure(s) == tri.measure(tri.index("p")) + 2);
    CHECK(g.measure(s) == Q(4, 3) + 2);
    CHECK(g.measure(g.index("g1:a")) == tri.measure(tri.index("a")));
    CHECK(g.measure(g.index(line_id(static_cast<std::int64_t>(N) - 1))) ==
          line.measure(line.index(line_id(static_cast<std::int64_t>(N) - 1))));
    CHECK(g.total_volume() == tri.total_volume() + line.total_volume());

    // the edge multiset is the disjoint union after renaming
    auto want = edge_multiset(line);
    for (auto [u, v, w] : edge_multiset(tri)) {
      auto rn = [](const std::string& id) { return id == "p" ? std::string("0") : "g1:" + id; };
      u = rn(u);
      v = rn(v);
      if (v < u) std::swap(u, v);
      want.emplace_back(u, v, w);
    }
    std::sort(want.begin(), want.end());
    CHECK(edge_multiset(g) == want);

    // 0 on the triangle, dyadic f on the line
    const auto gfun = tabulate(g, glued_function<Q>(dyadic_harmonic<Q>()));
    VertexSet interior;
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      const auto n = parse_line_id(g.id(v));
      if (!n || std::abs(*n) < static_cast<std::int64_t>(N)) interior.push_back(v);
    }
    const auto c = classify(g, gfun, Domain::of(g, interior), 0.0);
    CHECK(c.verdict == DomainVerdict::harmonic);
    CHECK(laplacian(g, gfun, s) == 0);
  }
}

TEST_CASE("glue self-loop at the mark") {
  const auto line = materialize(dyadic_line<Q>(), 3).graph;
  const auto tri = triangle(true);
  const auto g = glue(tri, "p", line, "0").graph;
  const VertexIndex s = g.index("0");
  CHECK(g.weight(s, s) == 5);
  // a loop counts once in the measure
  CHECK(tri.measure(tri.index("p")) == Q(1) + Q(1, 3) + 5);
  CHECK(g.measure(s) == tri.measure(tri.index("p")) + 2);
  std::size_t loops = 0;
  for (const auto& e : g.edges()) loops += e.is_loop();
  CHECK(loops == 1);
}

TEST_CASE("glue errors") {
  const auto line = materialize(dyadic_line<Q>(), 3).graph;
  CHECK_THROWS_WITH_AS(glue(triangle(false), "q", line, "0"), doctest::Contains("left mark 'q'"), InputError);
  CHECK_THROWS_WITH_AS(glue(triangle(false), "p", line, "99"), doctest::Contains("right mark '99'"), InputError);
  const auto clash = WeightedGraph<Q>::from_edges({{"0", "g1:a", Q(1)}, {"0", "1", Q(1)}});
  CHECK_THROWS_WITH_AS(glue(triangle(false), "p", clash, "0"), doctest::Contains("collides"), InputError);
}

TEST_CASE("glued Z2 and dyadic line family") {
  const auto fam = glue(lattice<Q>(2), dyadic_line<Q>());
  CHECK(fam.name == "z2^dyadic-line");
  CHECK(fam.root == "0");
  for (std::size_t R : {4u, 12u}) {
    const auto w = materialize(fam, R);
    const auto z = materialize(lattice<Q>(2), R);
    const auto d = materialize(dyadic_line<Q>(), R);
    CHECK(w.graph.num_vertices() == z.graph.num_vertices() + d.graph.num_vertices() - 1);
    CHECK(w.graph.measure(w.root) == z.graph.measure(z.root) + d.graph.measure(d.root));
    CHECK(w.graph.measure(w.root) == 6);
    CHECK(w.graph.total_volume() == z.graph.total_volume() + d.graph.total_volume());

    const auto g = tabulate(w.graph, glued_function<Q>(dyadic_harmonic<Q>()));
    const auto c = classify(w.graph, g, w.domain, 0.0);
    CHECK(c.verdict == DomainVerdict::harmonic);
    CHECK(c.vertices.size() == w.domain.interior.size());

    // nonconstant, and the q < 1 power sum only sees the line
    CHECK(g[w.graph.index("3")] == 7);
    const auto sum_g = lq_norm(w.graph, g, 0.5, w.domain.interior).power_sum;
    const auto fd = tabulate(d.graph, dyadic_abs<Q>());
    const auto sum_f = lq_norm(d.graph, fd, 0.5, d.domain.interior).power_sum;
    CHECK(to_double(sum_g) == doctest::Approx(to_double(sum_f)).epsilon(1e-14));
  }
}

TEST_CASE("subharmonic zoo") {
  {
    const auto z = subharmonic_zoo<Q>("abs-coordinate-Z2");
    const auto w = materialize(z.family, 6);
    const auto f = tabulate(w.graph, z.function);
    CHECK(classify(w.graph, f, w.domain, 0.0).verdict == DomainVerdict::subharmonic);
    for (VertexIndex x : w.domain.interior) {
      const auto xy = parse_lattice2_id(w.graph.id(x));
      CHECK(laplacian(w.graph, f, x) == (xy->first == 0 ? Q(1, 2) : Q(0)));
    }
  }
  {
    const auto z = subharmonic_zoo<Q>("square-Z");
    const auto w = materialize(z.family, 8);
    const auto f = tabulate(w.graph, z.function);
    for (VertexIndex x : w.domain.interior) CHECK(laplacian(w.graph, f, x) == 1);
  }
  {
    const auto z = subharmonic_zoo<Q>("dyadic-abs");
    const auto w = materialize(z.family, 30);
    const auto f = tabulate(w.graph, z.function);
    CHECK(classify(w.graph, f, w.domain, 0.0).verdict == DomainVerdict::subharmonic);
    for (long n = 0; n <= 30; ++n) {
      CHECK(f[w.graph.index(line_id(n))] == dyadic_harmonic_value<Q>(n));
      CHECK(f[w.graph.index(line_id(-n))] == dyadic_harmonic_value<Q>(n));
    }
  }
  {
    const auto z = subharmonic_zoo<Q>("dirichlet-bump");
    const auto w = materialize(z.family, kBumpRadius);
    const auto f = tabulate(w.graph, z.function);
    CHECK(classify(w.graph, f, w.domain, 0.0).verdict == DomainVerdict::harmonic);
    CHECK(f[w.graph.index("7,0")] == 50);
    CHECK_THROWS_AS(materialize(z.family, kBumpRadius + 1), InputError);
  }
  {
    const auto z = subharmonic_zoo<Q>("distance-tree");
    const auto w = materialize(z.family, 4);
    const auto f = tabulate(w.graph, z.function);
    CHECK(classify(w.graph, f, w.domain, 0.0).verdict == DomainVerdict::subharmonic);
    // root: 1; elsewhere (2 - 1) / 3
    CHECK(laplacian(w.graph, f, w.root) == 1);
    CHECK(laplacian(w.graph, f, w.graph.index("t.1.0")) == Q(1, 3));
  }
  CHECK_THROWS_AS(subharmonic_zoo<Q>("nope"), InputError);
}

TEST_CASE("L^q membership frontier of the dyadic harmonic") {
  const auto w = materialize(dyadic_line<double>(), 60);
  const auto f = tabulate(w.graph, dyadic_harmonic<double>());
  auto sum = [&](double q, std::size_t R) { return lq_norm(w.graph, f, q, w.graph.ball(w.root, R)).power_sum; };
  // the shell at |n| contributes about 6 * 2^{(q-1)|n|}; a convergent series
  // shrinks its 20-shell increments by 2^{20(q-1)}, a divergent one does not
  for (double q : {0.25, 0.5, 0.75}) {
    const double early = sum(q, 40) - sum(q, 20), late = sum(q, 60) - sum(q, 40);
    CHECK(late < early * std::pow(2.0, 20 * (q - 1)) * 1.01);
    CHECK(late < 0.05);
  }
  for (double q : {1.0, 1.5, 2.0}) {
    const double early = sum(q, 40) - sum(q, 20), late = sum(q, 60) - sum(q, 40);
    CHECK(late >= early);
  }
  // S_R grows linearly at q = 1
  CHECK(sum(1.0, 60) - sum(1.0, 40) == doctest::Approx(120.0).epsilon(1e-3));
}
