#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lqharm/graph.hpp"

namespace lqharm {

/// Scalar values on a subset of a graph's vertices (or edges), addressed by
/// index. Undefined slots read as zero through values() but are tracked.
template <class T>
class PartialFunction {
 public:
  PartialFunction() = default;
  explicit PartialFunction(std::size_t n) : values_(n, T(0)), defined_(n, 0) {}

  static PartialFunction constant(std::size_t n, const T& c) {
    PartialFunction f(n);
    for (std::size_t i = 0; i < n; ++i) f.set(static_cast<VertexIndex>(i), c);
    return f;
  }

  std::size_t size() const { return values_.size(); }
  bool defined(std::size_t i) const { return defined_.at(i) != 0; }

  const T* get(std::size_t i) const { return defined(i) ? &values_[i] : nullptr; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  void set(std::size_t i, T value) {
    values_.at(i) = std::move(value);
    defined_[i] = 1;
  }
  void erase(std::size_t i) {
    values_.at(i) = T(0);
    defined_[i] = 0;
  }

  std::span<const T> values() const { return values_; }

  bool all_defined() const {
    for (char d : defined_)
      if (!d) return false;
    return true;
  }

  /// Indices where the function is defined.
  VertexSet domain() const {
    VertexSet out;
    for (std::size_t i = 0; i < defined_.size(); ++i)
      if (defined_[i]) out.push_back(static_cast<VertexIndex>(i));
    return out;
  }

  /// Indices where the function is defined and nonzero.
  VertexSet support() const {
    VertexSet out;
    for (std::size_t i = 0; i < defined_.size(); ++i)
      if (defined_[i] && values_[i] != 0) out.push_back(static_cast<VertexIndex>(i));
    return out;
  }

  friend bool operator==(const PartialFunction& l, const PartialFunction& r) {
    return l.values_ == r.values_ && l.defined_ == r.defined_;
  }

 private:
  std::vector<T> values_;
  std::vector<char> defined_;
};

template <class T>
using VertexFunction = PartialFunction<T>;

/// Values indexed by EdgeIndex.
template <class T>
using EdgeFunction = PartialFunction<T>;

/// Lazily evaluated function on vertex ids, used for the infinite families.
template <class T>
using FunctionSource = std::function<std::optional<T>(std::string_view id)>;

template <class T>
VertexFunction<T> tabulate(const WeightedGraph<T>& g, const FunctionSource<T>& source) {
  VertexFunction<T> f(g.num_vertices());
  for (VertexIndex v = 0; v < g.num_vertices(); ++v)
    if (auto value = source(g.id(v))) f.set(v, std::move(*value));
  return f;
}

/// Value at v or MissingValueError naming the vertex.
template <class T>
const T& required(const WeightedGraph<T>& g, const VertexFunction<T>& f, VertexIndex v) {
  if (const T* value = f.get(v)) return *value;
  throw MissingValueError(g.id(v));
}

template <class T>
using ValueMap = std::map<std::string, T>;

/// Binds id -> value pairs to g. Ids that are not vertices of g are errors.
template <class T>
VertexFunction<T> from_map(const WeightedGraph<T>& g, const ValueMap<T>& values) {
  VertexFunction<T> f(g.num_vertices());
  for (const auto& [id, value] : values) {
    const auto v = g.find(id);
    if (!v) throw InputError("function value given for unknown vertex '" + id + "'");
    f.set(*v, value);
  }
  return f;
}

template <class T>
ValueMap<T> to_map(const WeightedGraph<T>& g, const VertexFunction<T>& f) {
  ValueMap<T> out;
  for (VertexIndex v = 0; v < f.size(); ++v)
    if (const T* value = f.get(v)) out.emplace(g.id(v), *value);
  return out;
}

template <class T>
VertexFunction<double> to_float(const VertexFunction<T>& f) {
  VertexFunction<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (const T* value = f.get(i)) out.set(i, to_double(*value));
  return out;
}

}  // namespace lqharm
