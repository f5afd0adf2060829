#include <cstdlib>
#include <string>

#include "lqharm/errors.hpp"
#include "lqharm/simd/kernels.hpp"

namespace lqharm::simd {

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) throw InputError("SIMD variant not available on this CPU");
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  throw InputError("unknown SIMD variant '" + std::string(name) + "'");
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("LQHARM_SIMD"); forced != nullptr && *forced != '\0')
    return table(parse_isa(forced));
  return available(Isa::avx2) ? table(Isa::avx2) : table(Isa::scalar);
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace lqharm::simd
