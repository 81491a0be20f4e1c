#include "nbtb/simd/jet_kernels.hpp"

namespace nbtb::simd {

void mul_scalar(const double* a, const double* b, double* out) noexcept {
  for (int k = 0; k < kJetSize; ++k) out[k] = 0.0;
  for (const LeibnizTerm& t : kLeibniz) {
    out[t.out] += t.weight * a[t.lhs] * b[t.rhs];
  }
}

}  // namespace nbtb::simd
