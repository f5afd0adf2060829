#include "lqharm/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lqharm::io {

namespace {

// nlohmann reports a byte offset; turn it into 1-based line and column.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  // byte is the position after the offending character
  return {line, col > 1 ? col - 1 : col};
}

}  // namespace

Json parse_json(std::string_view text, std::string_view name) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string msg = e.what();
    // drop the library prefix "[json.exception.parse_error.101] parse error at ...: "
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw InputError(std::string(name) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON: " +
                     msg);
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_text_file(path), path.string()); }

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InputError("write to '" + path.string() + "' failed");
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw DefectError("double formatting failed");
  return std::string(buf, ptr);
}

ScalarMode graph_scalar_mode(const Json& doc) {
  if (!doc.is_object()) throw InputError("graph document must be a JSON object");
  if (!doc.contains("scalar")) return ScalarMode::float64;
  if (!doc["scalar"].is_string()) throw InputError("\"scalar\" must be \"rational\" or \"float64\"");
  return parse_scalar_mode(doc["scalar"].get<std::string>());
}

Json marks_to_json(const Marks& m) {
  Json j = Json::object();
  if (m.root) j["root"] = *m.root;
  if (m.radius) j["radius"] = *m.radius;
  if (m.family) j["family"] = *m.family;
  return j;
}

Marks marks_from_json(const Json& doc) {
  Marks m;
  if (!doc.contains("marks")) return m;
  const auto& j = doc["marks"];
  if (!j.is_object()) throw InputError("\"marks\" must be an object");
  if (j.contains("root")) {
    if (!j["root"].is_string()) throw InputError("marks.root must be a vertex id string");
    m.root = j["root"].get<std::string>();
  }
  if (j.contains("radius")) {
    if (!j["radius"].is_number_unsigned()) throw InputError("marks.radius must be a non-negative integer");
    m.radius = j["radius"].get<std::size_t>();
  }
  if (j.contains("family") && j["family"].is_string()) m.family = j["family"].get<std::string>();
  return m;
}

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json trace_to_json(const ProofTrace& t) {
  Json levels = Json::array();
  for (const auto& lv : t.levels) {
    levels.push_back(Json{{"R", lv.radius},
                          {"A", lv.karp},
                          {"Q", optional_number(lv.energy)},
                          {"beta", optional_number(lv.shell_term)},
                          {"residual", optional_number(lv.residual)}});
  }
  return Json{{"q", t.q}, {"C", t.constant}, {"regime", t.regime}, {"K", t.max_karp}, {"levels", std::move(levels)}};
}

Json corpus_to_json(const EmpiricalConstant& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    rows.push_back(Json{{"case", r.label},
                        {"q", r.q},
                        {"r", r.inner},
                        {"R", r.outer},
                        {"lhs", r.lhs},
                        {"rhs_core", r.rhs_core},
                        {"ratio", optional_number(r.ratio)},
                        {"violation_candidate", r.violation_candidate}});
  }
  return Json{{"constant", c.constant}, {"violations", c.violations}, {"cases", std::move(rows)}};
}

}  // namespace lqharm::io
