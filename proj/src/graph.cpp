#include "lqharm/graph.hpp"

namespace lqharm {

WeightedGraph<double> to_float(const WeightedGraph<Rational>& g) {
  std::vector<EdgeSpec<double>> specs;
  specs.reserve(g.num_edges());
  for (const auto& e : g.edges()) specs.push_back({g.id(e.a), g.id(e.b), rational_to_double(e.weight)});
  return WeightedGraph<double>::from_edges(std::move(specs));
}

}  // namespace lqharm
