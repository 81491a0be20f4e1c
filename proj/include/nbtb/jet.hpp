#pragma once

// Truncated bivariate Taylor expansions ("jets") of order 4.
//
// BasicJet2<T> stores the raw partial derivatives d^(i+j) f / du^i dv^j at an
// expansion point for i + j <= 4, so reading a derivative never needs a
// factorial rescale. The coefficient type T is double for ordinary use; the
// oracle nests BasicJet2<Jet2> to differentiate quantities that already
// consume the inner jet's four orders.
//
// Every operation is exact up to truncation: differentiating a jet (du, dv)
// leaves the top-order coefficients of the result at zero, so a quantity
// built from k derivatives of the input is valid to order 4 - k.

#include <array>
#include <cmath>
#include <type_traits>

#include "nbtb/errors.hpp"
#include "nbtb/simd/jet_kernels.hpp"

namespace nbtb {

/// |constant part| at or below this raises DivisionByNearZero / DomainError.
inline constexpr double kJetDegeneracyThreshold = 1e-12;

enum class Var { u, v };

template <class T>
class BasicJet2;

using Jet2 = BasicJet2<double>;

namespace detail {

inline double scalar_part(double x) { return x; }

template <class T>
double scalar_part(const BasicJet2<T>& j) {
  return scalar_part(j.value());
}

}  // namespace detail

template <class T>
class BasicJet2 {
 public:
  static constexpr int kOrder = simd::kJetOrder;
  static constexpr int kSize = simd::kJetSize;
  using value_type = T;

  BasicJet2() { c_.fill(T(0.0)); }
  explicit BasicJet2(const T& constant) : BasicJet2() { c_[0] = constant; }

  static BasicJet2 constant(const T& value) { return BasicJet2(value); }

  static BasicJet2 variable(Var which, const T& value) {
    BasicJet2 r(value);
    r(which == Var::u ? 1 : 0, which == Var::u ? 0 : 1) = T(1.0);
    return r;
  }

  static constexpr int index(int i, int j) { return simd::jet_index(i, j); }

  T& operator()(int i, int j) { return c_[index(i, j)]; }
  const T& operator()(int i, int j) const { return c_[index(i, j)]; }

  const T& value() const { return c_[0]; }

  std::array<T, kSize>& coeffs() { return c_; }
  const std::array<T, kSize>& coeffs() const { return c_; }
  T* data() { return c_.data(); }
  const T* data() const { return c_.data(); }

  /// Partial derivative in u. The order-4 coefficients of the result are 0.
  BasicJet2 du() const {
    BasicJet2 r;
    for (int n = 0; n < kOrder; ++n) {
      for (int j = 0; j <= n; ++j) r(n - j, j) = (*this)(n - j + 1, j);
    }
    return r;
  }

  /// Partial derivative in v. The order-4 coefficients of the result are 0.
  BasicJet2 dv() const {
    BasicJet2 r;
    for (int n = 0; n < kOrder; ++n) {
      for (int j = 0; j <= n; ++j) r(n - j, j) = (*this)(n - j, j + 1);
    }
    return r;
  }

  BasicJet2 operator-() const {
    BasicJet2 r;
    for (int k = 0; k < kSize; ++k) r.c_[k] = -c_[k];
    return r;
  }

  BasicJet2& operator+=(const BasicJet2& o) {
    for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  BasicJet2& operator-=(const BasicJet2& o) {
    for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  BasicJet2& operator+=(const T& s) {
    c_[0] += s;
    return *this;
  }
  BasicJet2& operator-=(const T& s) {
    c_[0] -= s;
    return *this;
  }
  BasicJet2& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  BasicJet2& operator*=(const BasicJet2& o);
  BasicJet2& operator/=(const BasicJet2& o);

 private:
  std::array<T, kSize> c_;
};

// ---------------------------------------------------------------------------
// Ring operations

template <class T>
BasicJet2<T> operator+(BasicJet2<T> a, const BasicJet2<T>& b) {
  a += b;
  return a;
}

template <class T>
BasicJet2<T> operator-(BasicJet2<T> a, const BasicJet2<T>& b) {
  a -= b;
  return a;
}

template <class T>
BasicJet2<T> operator*(const BasicJet2<T>& a, const BasicJet2<T>& b) {
  BasicJet2<T> r;
  if constexpr (std::is_same_v<T, double>) {
    simd::mul(a.data(), b.data(), r.data());
  } else {
    for (const simd::LeibnizTerm& t : simd::kLeibniz) {
      r.coeffs()[t.out] += (a.coeffs()[t.lhs] * b.coeffs()[t.rhs]) * t.weight;
    }
  }
  return r;
}

template <class T>
BasicJet2<T>& BasicJet2<T>::operator*=(const BasicJet2& o) {
  *this = *this * o;
  return *this;
}

// Scalar (coefficient-type) operands. type_identity keeps T deduced from the
// jet so that `jet * 2.0` works for Jet2 and `nested * jet2` for nested jets.

template <class T>
BasicJet2<T> operator*(BasicJet2<T> a, const std::type_identity_t<T>& s) {
  a *= s;
  return a;
}
template <class T>
BasicJet2<T> operator*(const std::type_identity_t<T>& s, BasicJet2<T> a) {
  a *= s;
  return a;
}
template <class T>
BasicJet2<T> operator+(BasicJet2<T> a, const std::type_identity_t<T>& s) {
  a += s;
  return a;
}
template <class T>
BasicJet2<T> operator+(const std::type_identity_t<T>& s, BasicJet2<T> a) {
  a += s;
  return a;
}
template <class T>
BasicJet2<T> operator-(BasicJet2<T> a, const std::type_identity_t<T>& s) {
  a -= s;
  return a;
}
template <class T>
BasicJet2<T> operator-(const std::type_identity_t<T>& s, const BasicJet2<T>& a) {
  BasicJet2<T> r = -a;
  r += s;
  return r;
}

// double operands for nested jets (T != double).

template <class T>
  requires(!std::is_same_v<T, double>)
BasicJet2<T> operator*(BasicJet2<T> a, double s) {
  for (auto& x : a.coeffs()) x = x * s;
  return a;
}
template <class T>
  requires(!std::is_same_v<T, double>)
BasicJet2<T> operator*(double s, const BasicJet2<T>& a) {
  return a * s;
}
template <class T>
  requires(!std::is_same_v<T, double>)
BasicJet2<T> operator+(BasicJet2<T> a, double s) {
  a.coeffs()[0] = a.coeffs()[0] + s;
  return a;
}
template <class T>
  requires(!std::is_same_v<T, double>)
BasicJet2<T> operator+(double s, const BasicJet2<T>& a) {
  return a + s;
}
template <class T>
  requires(!std::is_same_v<T, double>)
BasicJet2<T> operator-(const BasicJet2<T>& a, double s) {
  return a + (-s);
}
template <class T>
  requires(!std::is_same_v<T, double>)
BasicJet2<T> operator-(double s, const BasicJet2<T>& a) {
  return (-a) + s;
}

namespace detail {

/// f(a) from the univariate derivatives d[k] = f^(k)(a0), k = 0..4.
template <class T>
BasicJet2<T> compose(const BasicJet2<T>& a, const std::array<T, 5>& d) {
  BasicJet2<T> h = a;
  h.coeffs()[0] = T(0.0);
  const BasicJet2<T> h2 = h * h;
  const BasicJet2<T> h3 = h2 * h;
  const BasicJet2<T> h4 = h2 * h2;
  BasicJet2<T> r = h * d[1];
  r += h2 * (d[2] * 0.5);
  r += h3 * (d[3] * (1.0 / 6.0));
  r += h4 * (d[4] * (1.0 / 24.0));
  r.coeffs()[0] += d[0];
  return r;
}

template <class T>
T reciprocal(const T& c) {
  return T(1.0) / c;
}

}  // namespace detail

template <class T>
BasicJet2<T> inverse(const BasicJet2<T>& b) {
  const T& c = b.value();
  if (std::abs(detail::scalar_part(c)) <= kJetDegeneracyThreshold) {
    throw DivisionByNearZero("jet division: constant part below threshold");
  }
  const T r1 = detail::reciprocal(c);
  const T r2 = r1 * r1;
  const T r3 = r2 * r1;
  const T r4 = r2 * r2;
  const T r5 = r4 * r1;
  return detail::compose(b, std::array<T, 5>{r1, -r2, r3 * 2.0, r4 * -6.0,
                                             r5 * 24.0});
}

template <class T>
BasicJet2<T> operator/(const BasicJet2<T>& a, const BasicJet2<T>& b) {
  return a * inverse(b);
}

template <class T>
BasicJet2<T> operator/(const BasicJet2<T>& a, const std::type_identity_t<T>& s) {
  if (std::abs(detail::scalar_part(s)) <= kJetDegeneracyThreshold) {
    throw DivisionByNearZero("jet division by near-zero scalar");
  }
  return a * detail::reciprocal(s);
}

template <class T>
BasicJet2<T> operator/(const std::type_identity_t<T>& s, const BasicJet2<T>& b) {
  return inverse(b) * s;
}

template <class T>
BasicJet2<T>& BasicJet2<T>::operator/=(const BasicJet2& o) {
  *this = *this / o;
  return *this;
}

// ---------------------------------------------------------------------------
// Elementary functions. The block-scope using-declarations pick std:: for
// double coefficients; nested jets reach these templates through ADL.

template <class T>
BasicJet2<T> sin(const BasicJet2<T>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.value());
  const T c = cos(a.value());
  return detail::compose(a, std::array<T, 5>{s, c, -s, -c, s});
}

template <class T>
BasicJet2<T> cos(const BasicJet2<T>& a) {
  using std::cos;
  using std::sin;
  const T s = sin(a.value());
  const T c = cos(a.value());
  return detail::compose(a, std::array<T, 5>{c, -s, -c, s, c});
}

template <class T>
BasicJet2<T> exp(const BasicJet2<T>& a) {
  using std::exp;
  const T e = exp(a.value());
  return detail::compose(a, std::array<T, 5>{e, e, e, e, e});
}

template <class T>
BasicJet2<T> sinh(const BasicJet2<T>& a) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(a.value());
  const T c = cosh(a.value());
  return detail::compose(a, std::array<T, 5>{s, c, s, c, s});
}

template <class T>
BasicJet2<T> cosh(const BasicJet2<T>& a) {
  using std::cosh;
  using std::sinh;
  const T s = sinh(a.value());
  const T c = cosh(a.value());
  return detail::compose(a, std::array<T, 5>{c, s, c, s, c});
}

template <class T>
BasicJet2<T> sqrt(const BasicJet2<T>& a) {
  using std::sqrt;
  const T& c = a.value();
  if (detail::scalar_part(c) <= kJetDegeneracyThreshold) {
    throw DomainError("jet sqrt: constant part not above threshold");
  }
  const T s = sqrt(c);
  const T ic = detail::reciprocal(c);
  const T s1 = s * ic;
  const T s2 = s1 * ic;
  const T s3 = s2 * ic;
  const T s4 = s3 * ic;
  return detail::compose(
      a, std::array<T, 5>{s, s1 * 0.5, s2 * -0.25, s3 * 0.375, s4 * -0.9375});
}

template <class T>
BasicJet2<T> atan(const BasicJet2<T>& a) {
  using std::atan;
  const T& c = a.value();
  const T c2 = c * c;
  const T w = detail::reciprocal(c2 + 1.0);
  const T w2 = w * w;
  const T w3 = w2 * w;
  const T w4 = w2 * w2;
  return detail::compose(
      a, std::array<T, 5>{atan(c), w, c * w2 * -2.0, (c2 * 6.0 - 2.0) * w3,
                          c * (c2 - 1.0) * w4 * -24.0});
}

template <class T>
BasicJet2<T> pow(const BasicJet2<T>& a, double r) {
  const T& c = a.value();
  std::array<T, 5> d;
  double falling = 1.0;  // r (r - 1) ... (r - k + 1)
  if (r == std::floor(r) && std::abs(r) <= 64.0) {
    const int n = static_cast<int>(r);
    auto ipow = [&](int e) {
      T base = e >= 0 ? c : detail::reciprocal(c);
      T out(1.0);
      for (int i = 0; i < (e >= 0 ? e : -e); ++i) out = out * base;
      return out;
    };
    for (int k = 0; k < 5; ++k) {
      if (falling == 0.0) {
        d[k] = T(0.0);
      } else {
        if (n - k < 0 &&
            std::abs(detail::scalar_part(c)) <= kJetDegeneracyThreshold) {
          throw DivisionByNearZero("jet pow: negative power of near-zero base");
        }
        d[k] = ipow(n - k) * falling;
      }
      falling *= (r - k);
    }
  } else {
    using std::pow;
    if (detail::scalar_part(c) <= 0.0) {
      throw DomainError("jet pow: non-integer exponent needs positive base");
    }
    const T p = pow(c, r);
    const T ic = detail::reciprocal(c);
    T icp(1.0);
    for (int k = 0; k < 5; ++k) {
      d[k] = p * icp * falling;
      icp = icp * ic;
      falling *= (r - k);
    }
  }
  return detail::compose(a, d);
}

// ---------------------------------------------------------------------------
// Named entry points over Jet2.

Jet2 jet_var(Var which, double value);

enum class JetOp { add, sub, mul, div };
Jet2 jet_arith(const Jet2& a, const Jet2& b, JetOp op);

enum class JetFunc { sin, cos, exp, sqrt, sinh, cosh, atan, pow };
Jet2 jet_func(const Jet2& a, JetFunc f, double exponent = 1.0);

}  // namespace nbtb
