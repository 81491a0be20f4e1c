#pragma once

// Multiplication kernels for order-4 bivariate jets over double.
//
// A jet stores the 15 raw partial derivatives d^(i+j) f / du^i dv^j with
// i + j <= 4, laid out by total degree then by v-power (see jet_index).
// The product of two jets follows the bivariate Leibniz rule, which
// flattens into 70 weighted products. mul_scalar walks that table directly
// and is the reference; mul_avx2 evaluates the same sum four output
// coefficients at a time. The dispatching mul() picks one at startup.

#include <array>
#include <cstdint>

namespace nbtb::simd {

inline constexpr int kJetOrder = 4;
inline constexpr int kJetSize = 15;
inline constexpr int kLeibnizTerms = 70;

constexpr int jet_index(int i, int j) {
  const int n = i + j;
  return n * (n + 1) / 2 + j;
}

struct LeibnizTerm {
  int out;
  int lhs;
  int rhs;
  double weight;
};

namespace detail {

constexpr double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr std::array<LeibnizTerm, kLeibnizTerms> make_leibniz_table() {
  std::array<LeibnizTerm, kLeibnizTerms> t{};
  int n = 0;
  for (int deg = 0; deg <= kJetOrder; ++deg) {
    for (int j = 0; j <= deg; ++j) {
      const int i = deg - j;
      for (int p = 0; p <= i; ++p) {
        for (int q = 0; q <= j; ++q) {
          t[n++] = LeibnizTerm{jet_index(i, j), jet_index(p, q),
                               jet_index(i - p, j - q),
                               binomial(i, p) * binomial(j, q)};
        }
      }
    }
  }
  return t;
}

}  // namespace detail

inline constexpr std::array<LeibnizTerm, kLeibnizTerms> kLeibniz =
    detail::make_leibniz_table();

enum class Kernel { scalar, avx2 };

void mul_scalar(const double* a, const double* b, double* out) noexcept;

#if defined(__x86_64__) || defined(_M_X64)
#define NBTB_HAVE_AVX2_KERNEL 1
void mul_avx2(const double* a, const double* b, double* out) noexcept;
#else
#define NBTB_HAVE_AVX2_KERNEL 0
#endif

/// True when the running CPU executes AVX2 + FMA.
bool avx2_supported() noexcept;

/// Kernel chosen at startup. NBTB_SIMD=scalar forces the reference path.
Kernel active_kernel() noexcept;

/// Overrides the startup choice; throws std::invalid_argument if the CPU
/// cannot run the requested kernel.
void set_kernel(Kernel k);

const char* kernel_name(Kernel k) noexcept;

/// out = a * b (jets of 15 coefficients). out may not alias a or b.
void mul(const double* a, const double* b, double* out) noexcept;

}  // namespace nbtb::simd
