#include "nhssh/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace nhssh::kernels {

namespace {

#define NHSSH_TABLE(isa, prefix)                                         \
  Table {                                                                \
    isa, &detail::prefix##_radicand, &detail::prefix##_d_vector,         \
        &detail::prefix##_count_in_disk, &detail::prefix##_accumulate_abs2 \
  }

const Table* select() {
  if (const char* forced = std::getenv("NHSSH_SIMD")) {
    if (std::string_view(forced) == "scalar") {
      return &scalar_table();
    }
  }
  if (const Table* t = avx2_table()) {
    return t;
  }
  if (const Table* t = neon_table()) {
    return t;
  }
  return &scalar_table();
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

const Table& scalar_table() {
  static const Table table = NHSSH_TABLE(Isa::Scalar, scalar);
  return table;
}

const Table* avx2_table() {
#if defined(NHSSH_HAVE_AVX2)
  static const Table table = NHSSH_TABLE(Isa::Avx2, avx2);
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const Table* neon_table() {
#if defined(NHSSH_HAVE_NEON)
  static const Table table = NHSSH_TABLE(Isa::Neon, neon);
  return &table;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table* table = select();
  return *table;
}

}  // namespace nhssh::kernels
