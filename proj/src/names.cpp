#include <string>

#include "lqharm/caccioppoli.hpp"
#include "lqharm/calculus.hpp"
#include "lqharm/dirichlet.hpp"

namespace lqharm {

std::string_view to_string(VertexVerdict v) {
  switch (v) {
    case VertexVerdict::harmonic: return "harmonic";
    case VertexVerdict::strictly_subharmonic: return "strictly-subharmonic";
    case VertexVerdict::strictly_superharmonic: return "strictly-superharmonic";
  }
  return "?";
}

std::string_view to_string(DomainVerdict v) {
  switch (v) {
    case DomainVerdict::harmonic: return "harmonic";
    case DomainVerdict::subharmonic: return "subharmonic";
    case DomainVerdict::superharmonic: return "superharmonic";
    case DomainVerdict::none: return "none";
  }
  return "?";
}

std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::automatic: return "auto";
    case SolveMethod::direct: return "direct";
    case SolveMethod::iterative: return "iterative";
  }
  return "?";
}

SolveMethod parse_solve_method(std::string_view text) {
  if (text == "auto") return SolveMethod::automatic;
  if (text == "direct") return SolveMethod::direct;
  if (text == "iterative") return SolveMethod::iterative;
  throw InputError("unknown solve method '" + std::string(text) + "' (expected auto, direct or iterative)");
}

std::string_view to_string(FlatnessVerdict v) {
  switch (v) {
    case FlatnessVerdict::constant: return "constant";
    case FlatnessVerdict::nonconstant: return "nonconstant";
    case FlatnessVerdict::propagation_failed: return "propagation-failed";
  }
  return "?";
}

}  // namespace lqharm
