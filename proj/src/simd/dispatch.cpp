#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "nbtb/simd/jet_kernels.hpp"

namespace nbtb::simd {
namespace {

using MulFn = void (*)(const double*, const double*, double*) noexcept;

Kernel startup_kernel() noexcept {
  const char* env = std::getenv("NBTB_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Kernel::scalar;
  return avx2_supported() ? Kernel::avx2 : Kernel::scalar;
}

MulFn kernel_fn(Kernel k) noexcept {
#if NBTB_HAVE_AVX2_KERNEL
  if (k == Kernel::avx2) return &mul_avx2;
#endif
  (void)k;
  return &mul_scalar;
}

struct State {
  Kernel kernel;
  MulFn fn;
  State() : kernel(startup_kernel()), fn(kernel_fn(kernel)) {}
};

State& state() {
  static State s;
  return s;
}

}  // namespace

bool avx2_supported() noexcept {
#if NBTB_HAVE_AVX2_KERNEL && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Kernel active_kernel() noexcept { return state().kernel; }

void set_kernel(Kernel k) {
  if (k == Kernel::avx2 && !avx2_supported()) {
    throw std::invalid_argument("avx2 kernel not supported on this CPU");
  }
  state().kernel = k;
  state().fn = kernel_fn(k);
}

const char* kernel_name(Kernel k) noexcept {
  return k == Kernel::avx2 ? "avx2" : "scalar";
}

void mul(const double* a, const double* b, double* out) noexcept {
  state().fn(a, b, out);
}

}  // namespace nbtb::simd
