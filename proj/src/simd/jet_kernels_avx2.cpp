// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "nbtb/simd/jet_kernels.hpp"

#if NBTB_HAVE_AVX2_KERNEL

#include <immintrin.h>

#include <cstring>

namespace nbtb::simd {
namespace {

// Row m holds, for every output coefficient k (padded to 16), the Leibniz
// weight of a[m] * b[rhs] and the rhs index. Unused slots point at the zero
// pad b[15] with weight 0.
struct GatherTables {
  alignas(32) double weight[kJetSize][16];
  alignas(16) std::int32_t rhs[kJetSize][16];
  bool quad_active[kJetSize][4];
};

constexpr GatherTables make_tables() {
  GatherTables g{};
  for (int m = 0; m < kJetSize; ++m) {
    for (int k = 0; k < 16; ++k) {
      g.weight[m][k] = 0.0;
      g.rhs[m][k] = kJetSize;
    }
    for (int q = 0; q < 4; ++q) g.quad_active[m][q] = false;
  }
  for (const LeibnizTerm& t : kLeibniz) {
    g.weight[t.lhs][t.out] = t.weight;
    g.rhs[t.lhs][t.out] = t.rhs;
    g.quad_active[t.lhs][t.out / 4] = true;
  }
  return g;
}

constexpr GatherTables kTables = make_tables();

}  // namespace

void mul_avx2(const double* a, const double* b, double* out) noexcept {
  alignas(32) double bp[16];
  std::memcpy(bp, b, sizeof(double) * kJetSize);
  bp[15] = 0.0;

  __m256d acc[4] = {_mm256_setzero_pd(), _mm256_setzero_pd(),
                    _mm256_setzero_pd(), _mm256_setzero_pd()};
  for (int m = 0; m < kJetSize; ++m) {
    const __m256d am = _mm256_set1_pd(a[m]);
    for (int q = 0; q < 4; ++q) {
      if (!kTables.quad_active[m][q]) continue;
      const __m128i ix = _mm_load_si128(
          reinterpret_cast<const __m128i*>(&kTables.rhs[m][4 * q]));
      const __m256d bg = _mm256_i32gather_pd(bp, ix, 8);
      const __m256d w = _mm256_load_pd(&kTables.weight[m][4 * q]);
      acc[q] = _mm256_fmadd_pd(_mm256_mul_pd(am, w), bg, acc[q]);
    }
  }
  alignas(32) double tmp[16];
  for (int q = 0; q < 4; ++q) _mm256_store_pd(&tmp[4 * q], acc[q]);
  std::memcpy(out, tmp, sizeof(double) * kJetSize);
}

}  // namespace nbtb::simd

#endif
