#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace nbtb {

// Small fixed-size vector over an arbitrary scalar (double or a jet type).
template <class T, std::size_t N>
struct Vec {
  std::array<T, N> c{};

  static constexpr std::size_t size() { return N; }

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
};

template <class T>
using Vec3 = Vec<T, 3>;
template <class T>
using Vec6 = Vec<T, 6>;
using Vec3d = Vec3<double>;
using Vec6d = Vec6<double>;

template <class T, std::size_t N>
Vec<T, N> operator+(Vec<T, N> a, const Vec<T, N>& b) {
  a += b;
  return a;
}

template <class T, std::size_t N>
Vec<T, N> operator-(Vec<T, N> a, const Vec<T, N>& b) {
  a -= b;
  return a;
}

template <class T, std::size_t N>
Vec<T, N> operator-(const Vec<T, N>& a) {
  Vec<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = -a[i];
  return r;
}

template <class T, std::size_t N, class U>
Vec<T, N> operator*(const Vec<T, N>& a, const U& s) {
  Vec<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] * s;
  return r;
}

template <class T, std::size_t N, class U>
Vec<T, N> operator*(const U& s, const Vec<T, N>& a) {
  Vec<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = s * a[i];
  return r;
}

template <class T, std::size_t N, class U>
Vec<T, N> operator/(const Vec<T, N>& a, const U& s) {
  Vec<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = a[i] / s;
  return r;
}

template <class T, std::size_t N>
T dot(const Vec<T, N>& a, const Vec<T, N>& b) {
  T s = a[0] * b[0];
  for (std::size_t i = 1; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
           a[0] * b[1] - a[1] * b[0]}};
}

template <std::size_t N>
double norm(const Vec<double, N>& a) {
  return std::sqrt(dot(a, a));
}

/// Concatenates two R^3 vectors into an element of R^6 = R^3 x R^3.
template <class T>
Vec6<T> join(const Vec3<T>& x, const Vec3<T>& y) {
  return {{x[0], x[1], x[2], y[0], y[1], y[2]}};
}

/// Complex structure J(X, Y) = (-Y, X) on R^3 x R^3.
template <class T>
Vec6<T> apply_j(const Vec6<T>& w) {
  return {{-w[3], -w[4], -w[5], w[0], w[1], w[2]}};
}

}  // namespace nbtb
