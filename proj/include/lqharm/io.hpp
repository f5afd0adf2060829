#pragma once

// JSON and CSV formats: graphs, vertex functions, domains and the reports
// produced by the verification layers.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lqharm/caccioppoli.hpp"
#include "lqharm/calculus.hpp"
#include "lqharm/dirichlet.hpp"
#include "lqharm/function.hpp"
#include "lqharm/graph.hpp"

namespace lqharm::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become InputError "<name>:<line>:<column>: ...".
Json parse_json(std::string_view text, std::string_view name = "<input>");
Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest round-trip decimal form, locale independent.
std::string format_double(double v);

/// "rational" or "float64" as declared by a graph document.
ScalarMode graph_scalar_mode(const Json& doc);

struct Marks {
  std::optional<std::string> root;
  std::optional<std::size_t> radius;
  std::optional<std::string> family;
};

Json marks_to_json(const Marks& m);
Marks marks_from_json(const Json& doc);

template <class T>
T scalar_from_json(const Json& j, std::string_view what) {
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    Rational r;
    try {
      r = parse_rational(text);
    } catch (const Error& e) {
      throw InputError(std::string(what) + ": " + e.what());
    }
    if constexpr (is_exact_v<T>) return r;
    else return rational_to_double(r);
  }
  if (j.is_number_integer()) {
    if constexpr (is_exact_v<T>) {
      if (j.is_number_unsigned()) return Rational(std::to_string(j.get<std::uint64_t>()));
      return Rational(std::to_string(j.get<std::int64_t>()));
    } else {
      return j.get<double>();
    }
  }
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw InputError(std::string(what) + ": value is not finite");
    if constexpr (is_exact_v<T>) return Rational(d);
    else return d;
  }
  throw InputError(std::string(what) + ": expected a number or a \"p/q\" string");
}

template <class T>
Json scalar_to_json(const T& v) {
  if constexpr (is_exact_v<T>) return format_rational(v);
  else return v;
}

/// The scalar as a double, for report fields that are informational only.
template <class T>
Json scalar_report(const T& v) {
  if constexpr (is_exact_v<T>) return Json{{"exact", format_rational(v)}, {"approx", rational_to_double(v)}};
  else return v;
}

// --- graphs ----------------------------------------------------------------------

template <class T>
struct GraphDocument {
  WeightedGraph<T> graph;
  Marks marks;
};

template <class T>
GraphDocument<T> graph_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("graph document must be a JSON object");
  if (graph_scalar_mode(doc) != ScalarTraits<T>::mode)
    throw InputError("graph scalar mode mismatch: document is " + std::string(to_string(graph_scalar_mode(doc))));
  if (!doc.contains("edges") || !doc["edges"].is_array()) throw InputError("graph document needs an \"edges\" array");
  std::vector<EdgeSpec<T>> specs;
  std::size_t k = 0;
  for (const auto& e : doc["edges"]) {
    const std::string where = "edge #" + std::to_string(k++);
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("w"))
      throw InputError(where + ": expected {\"u\", \"v\", \"w\"}");
    if (!e["u"].is_string() || !e["v"].is_string()) throw InputError(where + ": vertex ids must be strings");
    specs.push_back({e["u"].get<std::string>(), e["v"].get<std::string>(), scalar_from_json<T>(e["w"], where)});
  }
  GraphDocument<T> out;
  out.graph = WeightedGraph<T>::from_edges(std::move(specs));
  out.marks = marks_from_json(doc);
  if (out.marks.root && !out.graph.find(*out.marks.root))
    throw InputError("marked root '" + *out.marks.root + "' is not a vertex");
  return out;
}

template <class T>
Json graph_to_json(const WeightedGraph<T>& g, const Marks& marks = {}) {
  Json doc;
  doc["scalar"] = std::string(to_string(ScalarTraits<T>::mode));
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back(Json{{"u", g.id(e.a)}, {"v", g.id(e.b)}, {"w", scalar_to_json(e.weight)}});
  doc["edges"] = std::move(edges);
  const auto m = marks_to_json(marks);
  if (!m.empty()) doc["marks"] = m;
  return doc;
}

// --- functions and domains -------------------------------------------------------

template <class T>
VertexFunction<T> function_from_json(const WeightedGraph<T>& g, const Json& doc) {
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
    throw InputError("function document needs a \"values\" object");
  VertexFunction<T> f(g.num_vertices());
  for (const auto& [id, value] : doc["values"].items()) {
    const auto v = g.find(id);
    if (!v) throw InputError("function value for unknown vertex '" + id + "'");
    f.set(*v, scalar_from_json<T>(value, "value at '" + id + "'"));
  }
  return f;
}

template <class T>
Json function_to_json(const WeightedGraph<T>& g, const VertexFunction<T>& f) {
  Json values = Json::object();
  for (VertexIndex v = 0; v < g.num_vertices(); ++v)
    if (f.defined(v)) values[g.id(v)] = scalar_to_json(f[v]);
  return Json{{"values", std::move(values)}};
}

template <class T>
Domain domain_from_json(const WeightedGraph<T>& g, const Json& doc) {
  if (!doc.is_object() || !doc.contains("interior") || !doc["interior"].is_array())
    throw InputError("domain document needs an \"interior\" array");
  VertexSet interior;
  for (const auto& id : doc["interior"]) {
    if (!id.is_string()) throw InputError("domain ids must be strings");
    interior.push_back(g.index(id.get<std::string>()));
  }
  std::sort(interior.begin(), interior.end());
  interior.erase(std::unique(interior.begin(), interior.end()), interior.end());
  return Domain::of(g, std::move(interior));
}

template <class T>
Json domain_to_json(const WeightedGraph<T>& g, const Domain& d) {
  Json ids = Json::array();
  for (VertexIndex v : d.interior) ids.push_back(g.id(v));
  return Json{{"interior", std::move(ids)}};
}

// --- reports ---------------------------------------------------------------------

template <class T>
Json classification_to_json(const WeightedGraph<T>& g, const Classification<T>& c) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    vertices.push_back(Json{{"id", g.id(c.vertices[i])},
                            {"laplacian", scalar_to_json(c.laplacian[i])},
                            {"verdict", std::string(to_string(c.verdicts[i]))}});
  }
  return Json{{"scalar", std::string(to_string(ScalarTraits<T>::mode))},
              {"tolerance", c.tolerance_base},
              {"verdict", std::string(to_string(c.verdict))},
              {"vertices", std::move(vertices)}};
}

template <class T>
Json solve_report_to_json(const WeightedGraph<T>& g, const SolveReport<T>& r) {
  return Json{{"scalar", std::string(to_string(ScalarTraits<T>::mode))},
              {"method", std::string(to_string(r.method))},
              {"iterations", r.iterations},
              {"residual", scalar_to_json(r.residual)},
              {"solution", function_to_json(g, r.solution)["values"]}};
}

template <class T>
Json caccioppoli_to_json(const WeightedGraph<T>& g, const CaccioppoliReport<T>& r) {
  Json j{{"q", r.q},
         {"r", r.inner},
         {"R", r.outer},
         {"center", g.id(r.center)},
         {"exact", r.exact},
         {"lhs", scalar_report(r.lhs)},
         {"rhs_core", scalar_report(r.rhs_core)}};
  j["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
  if (r.epsilon != 0) j["epsilon"] = r.epsilon;
  j["violation_candidate"] = r.violation_candidate;
  return j;
}

template <class T>
Json growth_to_json(const GrowthSeries<T>& s) {
  Json rows = Json::array();
  for (const auto& e : s.entries)
    rows.push_back(Json{{"R", e.radius}, {"S_R", scalar_report(e.power_sum)}, {"A_R", scalar_report(e.karp)}});
  return Json{{"q", s.q}, {"center", s.center}, {"exact", s.exact}, {"entries", std::move(rows)}};
}

/// CSV with header R,S_R,A_R, LF line endings, shortest round-trip doubles.
template <class T>
std::string growth_to_csv(const GrowthSeries<T>& s) {
  std::string out = "R,S_R,A_R\n";
  for (const auto& e : s.entries) {
    out += std::to_string(e.radius);
    out += ',';
    out += format_double(to_double(e.power_sum));
    out += ',';
    out += format_double(to_double(e.karp));
    out += '\n';
  }
  return out;
}

Json trace_to_json(const ProofTrace& t);
Json corpus_to_json(const EmpiricalConstant& c);

template <class T>
Json flatness_to_json(const FlatnessReport<T>& r) {
  return Json{{"verdict", std::string(to_string(r.verdict))},
              {"summary", r.summary},
              {"max_edge_quantity", r.max_edge_quantity},
              {"flat", r.flat},
              {"locally_constant", r.locally_constant},
              {"lq_divergent", r.lq_divergent}};
}

}  // namespace lqharm::io
