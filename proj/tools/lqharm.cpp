// lqharm: generate graphs, classify and solve, and run the verification
// sweeps from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lqharm/caccioppoli.hpp"
#include "lqharm/dirichlet.hpp"
#include "lqharm/examples.hpp"
#include "lqharm/identities.hpp"
#include "lqharm/io.hpp"
#include "lqharm/random.hpp"

namespace {

using namespace lqharm;
using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string scalar;  // empty: per-command default
  std::uint64_t seed = 0;
  std::string out;

  // gen
  std::string family;
  std::string function;
  std::size_t radius = 10;
  int branching = 2;
  std::size_t random_vertices = 20;

  // file inputs
  std::string graph;
  std::string function_file;
  std::string domain;
  std::string boundary;
  std::string source;
  std::string center;

  // numerics
  std::optional<double> tol;
  std::string method = "auto";
  double q = 2;
  std::size_t r = 1;
  std::size_t R = 3;
  double epsilon = 0;
  std::size_t rmax = 20;
  std::size_t r1 = 4;
  double constant = 1;
  std::string expect;
  bool corpus = false;
  std::size_t scale = 1;
  std::size_t instances = 100;
  std::string suite = "all";

  // glue
  std::string left, left_mark, right, right_mark, right_function, prefix = "g1:";
};

std::size_t radius_cap(ScalarMode mode) {
  const std::size_t fallback = mode == ScalarMode::rational ? kRationalDyadicCap : kFloatDyadicCap;
  const char* env = std::getenv("GP_MAX_RADIUS");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError("GP_MAX_RADIUS must be a non-negative integer (got '" + std::string(env) + "')");
  }
}

void check_radius(std::size_t radius, ScalarMode mode) {
  const auto cap = radius_cap(mode);
  if (radius > cap)
    throw InputError("radius " + std::to_string(radius) + " exceeds the materialization cap " + std::to_string(cap) +
                     " (GP_MAX_RADIUS)");
}

ScalarMode scalar_or(const Options& o, ScalarMode fallback) {
  return o.scalar.empty() ? fallback : parse_scalar_mode(o.scalar);
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    io::write_text_file(o.out, text);
  }
}

void emit_json(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

/// Prints the machine-readable violation report and returns exit code 1.
int violation(const std::string& kind, const Json& details) {
  Json j{{"status", "violation"}, {"kind", kind}, {"details", details}};
  std::cout << j.dump(2) << "\n";
  return kExitViolation;
}

/// Writes the report, or on failure the violation report. Stdout always
/// carries a single JSON document, so a report bound for stdout is folded
/// into the violation report.
int conclude(const Options& o, const Json& report, bool ok, const std::string& kind, const Json& details) {
  const bool to_stdout = o.out.empty() || o.out == "-";
  if (ok || !to_stdout) emit_json(o, report);
  if (ok) return kExitOk;
  Json j{{"status", "violation"}, {"kind", kind}, {"details", details}};
  if (to_stdout) j["report"] = report;
  std::cout << j.dump(2) << "\n";
  return kExitViolation;
}

// --- named families and functions -------------------------------------------------

template <class T>
GraphFamily<T> named_family(const Options& o) {
  const auto& n = o.family;
  if (n == "dyadic-line") return dyadic_line<T>();
  if (n == "z") return lattice<T>(1);
  if (n == "z2") return lattice<T>(2);
  if (n == "tree") return regular_tree<T>(o.branching);
  if (n == "glued") return glue(lattice<T>(2), dyadic_line<T>());
  if (n == "z2-bump") return subharmonic_zoo<T>("dirichlet-bump").family;
  throw InputError("unknown family '" + n + "' (dyadic-line, z, z2, tree, glued, z2-bump)");
}

template <class T>
FunctionSource<T> named_function(const std::string& n) {
  if (n == "dyadic-harmonic") return dyadic_harmonic<T>();
  if (n == "dyadic-abs") return dyadic_abs<T>();
  if (n == "glued-harmonic") return glued_function<T>(dyadic_harmonic<T>());
  if (n == "abs-x1" || n == "abs-coordinate-Z2") return abs_first_coordinate<T>();
  if (n == "square" || n == "square-Z") return square_on_line<T>();
  if (n == "identity") return identity_on_line<T>();
  if (n == "distance" || n == "distance-tree") return tree_distance<T>();
  if (n == "bump" || n == "dirichlet-bump") return subharmonic_zoo<T>("dirichlet-bump").function;
  if (n == "zero") return constant_function<T>(T(0));
  if (n == "one") return constant_function<T>(T(1));
  throw InputError("unknown function '" + n +
                   "' (dyadic-harmonic, dyadic-abs, glued-harmonic, abs-x1, square, identity, distance, bump, zero, one)");
}

std::string default_function(const std::string& family) {
  if (family == "dyadic-line") return "dyadic-harmonic";
  if (family == "glued") return "glued-harmonic";
  if (family == "z2") return "abs-x1";
  if (family == "z") return "square";
  if (family == "tree") return "distance";
  if (family == "z2-bump") return "bump";
  return "zero";
}

// --- gen ----------------------------------------------------------------------------

template <class T>
int run_gen(const Options& o) {
  const auto paths = [&] {
    std::vector<std::string> out;
    std::string cur;
    for (char c : o.out) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }();
  if (o.out.empty() || paths.size() > 2 || paths[0].empty())
    throw InputError("gen needs --out graph.json[,function.json]");

  WeightedGraph<T> g;
  io::Marks marks;
  std::optional<VertexFunction<T>> f;
  if (o.family == "random") {
    random::Rng rng(o.seed);
    random::GraphShape shape;
    shape.vertices = o.random_vertices;
    shape.extra_edges = o.random_vertices;
    g = random::random_connected_graph<T>(rng, shape);
    marks.family = "random";
    f = random::random_function<T>(rng, g);
  } else {
    check_radius(o.radius, ScalarTraits<T>::mode);
    const auto fam = named_family<T>(o);
    auto w = materialize(fam, o.radius);
    g = std::move(w.graph);
    marks.root = g.id(w.root);
    marks.radius = o.radius;
    marks.family = fam.name;
    const auto fn = o.function.empty() ? default_function(o.family) : o.function;
    f = tabulate(g, named_function<T>(fn));
  }
  io::write_text_file(paths[0], io::graph_to_json(g, marks).dump(2) + "\n");
  if (paths.size() == 2 && !paths[1].empty()) io::write_text_file(paths[1], io::function_to_json(g, *f).dump(2) + "\n");
  return kExitOk;
}

// --- file-based inputs ----------------------------------------------------------------

template <class T>
Domain domain_for(const io::GraphDocument<T>& doc, const Options& o) {
  if (!o.domain.empty()) return io::domain_from_json(doc.graph, io::read_json_file(o.domain));
  if (doc.marks.root && doc.marks.radius) {
    const auto root = doc.graph.index(*doc.marks.root);
    return Domain::of(doc.graph, doc.graph.ball(root, *doc.marks.radius));
  }
  // A finite graph on its own: every vertex is interior.
  VertexSet all(doc.graph.num_vertices());
  for (VertexIndex v = 0; v < all.size(); ++v) all[v] = v;
  return Domain::of(doc.graph, std::move(all));
}

template <class T>
double tolerance_for(const Options& o) {
  return o.tol ? *o.tol : default_tolerance<T>();
}

template <class T>
int run_classify(const Options& o, const Json& graph_json) {
  const auto doc = io::graph_from_json<T>(graph_json);
  if (o.function_file.empty()) throw InputError("classify needs --function");
  const auto f = io::function_from_json(doc.graph, io::read_json_file(o.function_file));
  const auto omega = domain_for(doc, o);
  const auto c = classify(doc.graph, f, omega, tolerance_for<T>(o));
  const auto report = io::classification_to_json(doc.graph, c);
  const std::string got(to_string(c.verdict));
  bool ok = o.expect.empty() || got == o.expect;
  if (o.expect == "subharmonic") ok = is_subharmonic(c.verdict);
  if (o.expect == "superharmonic") ok = is_superharmonic(c.verdict);
  return conclude(o, report, ok, "classification", Json{{"expected", o.expect}, {"verdict", got}});
}

template <class T>
int run_solve(const Options& o, const Json& graph_json) {
  const auto doc = io::graph_from_json<T>(graph_json);
  if (o.domain.empty() || o.boundary.empty()) throw InputError("solve needs --domain and --boundary");
  DirichletProblem<T> p;
  p.domain = io::domain_from_json(doc.graph, io::read_json_file(o.domain));
  p.boundary_values = io::function_from_json(doc.graph, io::read_json_file(o.boundary));
  if (!o.source.empty()) p.source = io::function_from_json(doc.graph, io::read_json_file(o.source));
  SolveOptions opt;
  if (o.tol) opt.tol = *o.tol;
  opt.method = parse_solve_method(o.method);
  const auto rep = solve_dirichlet(doc.graph, p, opt);
  auto j = io::solve_report_to_json(doc.graph, rep);
  int code = kExitOk;
  if (!p.source) {
    const auto mp = check_max_principle(doc.graph, rep.solution, p.domain,
                                        is_exact_v<T> ? 0.0 : std::max(kDefaultClassifyTolerance, opt.tol));
    j["max_principle"] = Json{{"max_interior", io::scalar_to_json(mp.max_interior)},
                              {"max_boundary", io::scalar_to_json(mp.max_boundary)},
                              {"bound_holds", mp.bound_holds},
                              {"equality_case", mp.equality_case},
                              {"constant", mp.constant},
                              {"holds", mp.holds()}};
    if (!mp.holds()) code = kExitViolation;
  }
  return conclude(o, j, code == kExitOk, "maximum-principle", j.value("max_principle", Json()));
}

// --- family-or-file helpers for the estimate commands -------------------------------

template <class T>
struct Loaded {
  WeightedGraph<T> graph;
  VertexFunction<T> f;
  VertexIndex center = 0;
  std::optional<std::size_t> window;
};

template <class T>
Loaded<T> load_for_estimate(const Options& o, std::size_t radius) {
  Loaded<T> out;
  if (!o.graph.empty()) {
    auto doc = io::graph_from_json<T>(io::read_json_file(o.graph));
    if (o.function_file.empty()) throw InputError("--graph needs --function");
    out.f = io::function_from_json(doc.graph, io::read_json_file(o.function_file));
    const std::string c = !o.center.empty() ? o.center : doc.marks.root.value_or("");
    if (c.empty()) throw InputError("no center: pass --center or mark a root in the graph");
    out.center = doc.graph.index(c);
    if (doc.marks.radius) out.window = *doc.marks.radius;
    out.graph = std::move(doc.graph);
    return out;
  }
  if (o.family.empty()) throw InputError("pass --family or --graph/--function");
  check_radius(radius, ScalarTraits<T>::mode);
  const auto fam = named_family<T>(o);
  auto w = materialize(fam, radius);
  const auto fn = o.function.empty() ? default_function(o.family) : o.function;
  out.f = tabulate(w.graph, named_function<T>(fn));
  out.center = w.root;
  out.window = w.radius;
  out.graph = std::move(w.graph);
  return out;
}

template <class T>
int run_caccioppoli(const Options& o) {
  if (o.corpus) {
    check_radius(7 * o.scale, ScalarTraits<T>::mode);
    const auto ec = empirical_constant(builtin_corpus<T>(o.scale));
    const auto j = io::corpus_to_json(ec);
    return conclude(o, j, ec.violations.empty(), "lhs-positive-with-zero-rhs", j["violations"]);
  }
  if (o.R <= o.r + 1)
    throw InputError("degenerate cutoff: need R >= r + 2 (got r=" + std::to_string(o.r) + ", R=" + std::to_string(o.R) +
                     ")");
  const auto in = load_for_estimate<T>(o, o.R);
  CaccioppoliOptions opt;
  opt.window_radius = in.window;
  opt.epsilon = o.epsilon;
  opt.tol = o.tol;
  const auto rep = caccioppoli_sides(in.graph, in.f, o.q, in.center, o.r, o.R, opt);
  const auto j = io::caccioppoli_to_json(in.graph, rep);
  return conclude(o, j, !rep.violation_candidate, "lhs-positive-with-zero-rhs",
                  Json{{"lhs", j["lhs"]}, {"rhs_core", j["rhs_core"]}});
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

template <class T>
int run_growth(const Options& o) {
  const auto in = load_for_estimate<T>(o, o.rmax);
  if (in.window && *in.window < o.rmax)
    throw InputError("graph window has radius " + std::to_string(*in.window) + " < --rmax");
  Window<T> w;
  w.graph = in.graph;
  w.root = in.center;
  w.radius = o.rmax;
  const auto s = growth_profile(w, in.f, o.q, o.rmax);
  if (ends_with(o.out, ".json")) emit_json(o, io::growth_to_json(s));
  else emit(o, io::growth_to_csv(s));
  return kExitOk;
}

template <class T>
int run_trace(const Options& o) {
  if (o.family.empty()) throw InputError("trace needs --family");
  check_radius(o.rmax, ScalarTraits<T>::mode);
  const auto fam = named_family<T>(o);
  const auto fn = o.function.empty() ? default_function(o.family) : o.function;
  const auto t = proof_trace(fam, named_function<T>(fn), o.q, o.r1, o.rmax, o.constant);
  emit_json(o, io::trace_to_json(t));
  return kExitOk;
}

template <class T>
int run_check(const Options& o) {
  Json j = Json::object();
  bool ok = true;
  if (o.suite == "all" || o.suite == "identities") {
    Json rows = Json::array();
    for (const auto& r : run_identity_suite<T>(o.seed, o.instances)) {
      ok = ok && r.passed();
      rows.push_back(Json{{"identity", r.name},
                          {"instances", r.instances},
                          {"failures", r.failures},
                          {"worst", r.worst},
                          {"first_failure", r.first_failure},
                          {"passed", r.passed()}});
    }
    j["identities"] = rows;
  }
  if (o.suite == "all" || o.suite == "max-principle") {
    random::Rng rng(o.seed);
    std::size_t failures = 0, equality = 0;
    for (std::size_t k = 0; k < o.instances; ++k) {
      const auto g = random::random_connected_graph<T>(rng, {12 + k % 17, 10 + k % 9, true});
      const bool constant = k % 5 == 0;
      const auto p = random::random_dirichlet<T>(rng, g, g.num_vertices() / 2, constant);
      const auto sol = solve_dirichlet(g, p).solution;
      const auto mp = check_max_principle(g, sol, p.domain);
      if (!mp.holds()) ++failures;
      if (mp.equality_case) ++equality;
    }
    ok = ok && failures == 0;
    j["max_principle"] = Json{{"instances", o.instances}, {"failures", failures}, {"equality_cases", equality}};
  }
  if (j.empty()) throw InputError("unknown suite '" + o.suite + "' (all, identities, max-principle)");
  j["seed"] = o.seed;
  j["scalar"] = std::string(to_string(ScalarTraits<T>::mode));
  return conclude(o, j, ok, "identity-suite", Json{{"seed", o.seed}});
}

template <class T>
int run_glue(const Options& o) {
  if (o.left.empty() || o.right.empty() || o.left_mark.empty() || o.right_mark.empty())
    throw InputError("glue needs --left, --left-mark, --right and --right-mark");
  const auto left = io::graph_from_json<T>(io::read_json_file(o.left));
  const auto right = io::graph_from_json<T>(io::read_json_file(o.right));
  const auto res = glue(left.graph, o.left_mark, right.graph, o.right_mark, o.prefix);
  io::Marks marks;
  marks.root = res.seam;
  std::vector<std::string> paths;
  {
    std::string cur;
    for (char c : o.out + ",") {
      if (c == ',') {
        paths.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  if (o.out.empty()) throw InputError("glue needs --out glued.json[,function.json]");
  io::write_text_file(paths[0], io::graph_to_json(res.graph, marks).dump(2) + "\n");
  if (!o.right_function.empty()) {
    if (paths.size() < 2 || paths[1].empty()) throw InputError("--right-function needs a second --out path");
    const auto rf = io::function_from_json(right.graph, io::read_json_file(o.right_function));
    const auto rmap = to_map(right.graph, rf);
    FunctionSource<T> src = [&rmap](std::string_view id) -> std::optional<T> {
      auto it = rmap.find(std::string(id));
      if (it == rmap.end()) return std::nullopt;
      return it->second;
    };
    const auto g = tabulate(res.graph, glued_function<T>(src, o.prefix));
    io::write_text_file(paths[1], io::function_to_json(res.graph, g).dump(2) + "\n");
  }
  return kExitOk;
}

// --- dispatch ---------------------------------------------------------------------

template <class F>
int with_scalar(ScalarMode mode, F&& f) {
  if (mode == ScalarMode::rational) return f(Rational{});
  return f(double{});
}

int dispatch(const std::string& cmd, const Options& o) {
  if (cmd == "gen")
    return with_scalar(scalar_or(o, o.family == "dyadic-line" || o.family == "glued" ? ScalarMode::rational
                                                                                      : ScalarMode::float64),
                       [&](auto tag) { return run_gen<decltype(tag)>(o); });
  if (cmd == "classify" || cmd == "solve") {
    if (o.graph.empty()) throw InputError(cmd + " needs --graph");
    const auto gj = io::read_json_file(o.graph);
    const auto mode = io::graph_scalar_mode(gj);
    if (!o.scalar.empty() && parse_scalar_mode(o.scalar) != mode)
      throw InputError("--scalar disagrees with the graph document");
    return with_scalar(mode, [&](auto tag) {
      using T = decltype(tag);
      return cmd == "classify" ? run_classify<T>(o, gj) : run_solve<T>(o, gj);
    });
  }
  auto file_mode = [&]() {
    if (!o.graph.empty()) return io::graph_scalar_mode(io::read_json_file(o.graph));
    return scalar_or(o, ScalarMode::float64);
  };
  if (cmd == "caccioppoli")
    return with_scalar(file_mode(), [&](auto tag) { return run_caccioppoli<decltype(tag)>(o); });
  if (cmd == "growth") return with_scalar(file_mode(), [&](auto tag) { return run_growth<decltype(tag)>(o); });
  if (cmd == "trace")
    return with_scalar(scalar_or(o, ScalarMode::float64), [&](auto tag) { return run_trace<decltype(tag)>(o); });
  if (cmd == "check")
    return with_scalar(scalar_or(o, ScalarMode::rational), [&](auto tag) { return run_check<decltype(tag)>(o); });
  if (cmd == "glue") {
    if (o.left.empty()) throw InputError("glue needs --left");
    const auto mode = io::graph_scalar_mode(io::read_json_file(o.left));
    return with_scalar(mode, [&](auto tag) { return run_glue<decltype(tag)>(o); });
  }
  throw InputError("unknown subcommand '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete potential theory on weighted graphs"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--scalar", o.scalar, "rational or float64");
    sub->add_option("--out", o.out, "output path (stdout when absent)");
    sub->add_option("--seed", o.seed, "seed for randomized sweeps")->capture_default_str();
  };
  auto family_opts = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "dyadic-line, z, z2, tree, glued, z2-bump");
    sub->add_option("--function", o.function, "named function on the family");
    sub->add_option("--branching", o.branching, "tree branching b (the tree is (b+1)-regular)")->capture_default_str();
  };
  auto file_opts = [&](CLI::App* sub) {
    sub->add_option("--graph", o.graph, "graph JSON");
    sub->add_option("--function-file", o.function_file, "function JSON");
    sub->add_option("--center", o.center, "center vertex id (default: marked root)");
  };

  auto* gen = app.add_subcommand("gen", "materialize a ball of a named family");
  gen->add_option("family", o.family, "dyadic-line, z, z2, tree, glued, z2-bump, random")->required();
  gen->add_option("--radius", o.radius)->capture_default_str();
  gen->add_option("--function", o.function, "named function (default depends on the family)");
  gen->add_option("--branching", o.branching)->capture_default_str();
  gen->add_option("--vertices", o.random_vertices, "vertex count for the random family")->capture_default_str();
  common(gen);

  auto* cls = app.add_subcommand("classify", "harmonic / subharmonic / superharmonic verdicts");
  cls->add_option("--graph", o.graph)->required();
  cls->add_option("--function", o.function_file)->required();
  cls->add_option("--domain", o.domain, "domain JSON (default: marked ball, else all vertices)");
  cls->add_option("--tol", o.tol, "tolerance base (0 in rational mode)");
  cls->add_option("--expect", o.expect, "exit 1 unless the domain verdict matches");
  common(cls);

  auto* sol = app.add_subcommand("solve", "Dirichlet problem Delta f = -source on a domain");
  sol->add_option("--graph", o.graph)->required();
  sol->add_option("--domain", o.domain)->required();
  sol->add_option("--boundary", o.boundary, "boundary values (function JSON)")->required();
  sol->add_option("--source", o.source, "source term (function JSON)");
  sol->add_option("--method", o.method, "auto, direct or iterative")->capture_default_str();
  sol->add_option("--tol", o.tol);
  common(sol);

  auto* cac = app.add_subcommand("caccioppoli", "both sides of the energy estimate");
  family_opts(cac);
  file_opts(cac);
  cac->add_option("--q", o.q)->capture_default_str();
  cac->add_option("--r", o.r)->capture_default_str();
  cac->add_option("--R", o.R)->capture_default_str();
  cac->add_option("--epsilon", o.epsilon, "evaluate with f + epsilon");
  cac->add_option("--tol", o.tol);
  cac->add_flag("--corpus", o.corpus, "empirical constant over the built-in corpus");
  cac->add_option("--scale", o.scale, "multiply corpus radii")->capture_default_str();
  common(cac);

  auto* gro = app.add_subcommand("growth", "S_R and A_R = S_R / R^2 for R = 1..rmax");
  family_opts(gro);
  file_opts(gro);
  gro->add_option("--q", o.q)->capture_default_str();
  gro->add_option("--rmax", o.rmax)->capture_default_str();
  common(gro);

  auto* tra = app.add_subcommand("trace", "A_i, Q_i, beta_i along R_{i+1} = 2 R_i");
  family_opts(tra);
  tra->add_option("--q", o.q)->capture_default_str();
  tra->add_option("--r1", o.r1, "first radius R_1")->capture_default_str();
  tra->add_option("--rmax", o.rmax, "largest radius")->capture_default_str();
  tra->add_option("--C", o.constant, "constant in the recursion residual")->capture_default_str();
  common(tra);

  auto* chk = app.add_subcommand("check", "randomized identity and maximum-principle sweeps");
  chk->add_option("--instances", o.instances)->capture_default_str();
  chk->add_option("--suite", o.suite, "all, identities, max-principle")->capture_default_str();
  common(chk);

  auto* glu = app.add_subcommand("glue", "identify a vertex of one graph with a vertex of another");
  glu->add_option("--left", o.left)->required();
  glu->add_option("--left-mark", o.left_mark)->required();
  glu->add_option("--right", o.right)->required();
  glu->add_option("--right-mark", o.right_mark)->required();
  glu->add_option("--right-function", o.right_function, "function on the right graph to extend by 0");
  glu->add_option("--prefix", o.prefix, "rename prefix for left vertices")->capture_default_str();
  common(glu);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConvergenceError& e) {
    return violation("non-convergence", Json{{"message", e.what()}});
  } catch (const DefectError& e) {
    return violation("internal-defect", Json{{"message", e.what()}});
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
