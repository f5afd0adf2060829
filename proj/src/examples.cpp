#include "lqharm/examples.hpp"

#include <charconv>

namespace lqharm {

std::string line_id(std::int64_t n) { return std::to_string(n); }

std::string lattice2_id(std::int64_t x, std::int64_t y) { return std::to_string(x) + "," + std::to_string(y); }

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

std::optional<std::int64_t> parse_line_id(std::string_view id) { return parse_int(id); }

std::optional<std::pair<std::int64_t, std::int64_t>> parse_lattice2_id(std::string_view id) {
  const auto comma = id.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto x = parse_int(id.substr(0, comma));
  auto y = parse_int(id.substr(comma + 1));
  if (!x || !y) return std::nullopt;
  return std::make_pair(*x, *y);
}

std::optional<std::size_t> tree_depth(std::string_view id) {
  if (id.empty() || id[0] != 't') return std::nullopt;
  std::size_t depth = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] == '.') {
      if (i + 1 >= id.size() || id[i + 1] == '.') return std::nullopt;
      ++depth;
    } else if (id[i] < '0' || id[i] > '9') {
      return std::nullopt;
    }
  }
  return depth;
}

}  // namespace lqharm
