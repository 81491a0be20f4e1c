#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nbtb/surface.hpp"

namespace nbtb::test {

inline constexpr double kPi = std::numbers::pi;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

struct Named {
  std::string name;
  SurfacePatch patch;
};

/// The catalog with the parameters used throughout the tests.
inline std::vector<Named> catalog() {
  GraphPoly cubic{};
  cubic[simd::jet_index(2, 0)] = 1.0;
  cubic[simd::jet_index(0, 3)] = 1.0;
  return {
      {"plane", SurfacePatch::plane()},
      {"sphere", SurfacePatch::sphere(1.0)},
      {"cylinder", SurfacePatch::cylinder(1.0)},
      {"catenoid", SurfacePatch::catenoid(1.0)},
      {"helicoid", SurfacePatch::helicoid(1.0)},
      {"enneper", SurfacePatch::enneper()},
      {"torus", SurfacePatch::torus(2.0, 0.5)},
      {"ellipsoid", SurfacePatch::ellipsoid(2.0, 1.5, 1.0)},
      {"cone", SurfacePatch::cone(kPi / 4)},
      {"graph", SurfacePatch::graph(cubic).with_domain({0.2, 0.8, 0.4, 0.9})},
  };
}

inline UV random_point(const Domain& d) {
  return {uniform(d.u0, d.u1), uniform(d.v0, d.v1)};
}

/// d^n f / ds^n by the central n-th difference with step h.
inline double central(const std::function<double(double)>& f, int n, double h) {
  double acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2) ? -1.0 : 1.0;
    acc += sign * binom * f((0.5 * n - k) * h);
    binom = binom * (n - k) / (k + 1);
  }
  return acc / std::pow(h, n);
}

/// Mixed partial d^{i+j} f / du^i dv^j at (u, v) by nested central
/// differences, optionally Richardson-extrapolated from h and h / 2.
inline double fd_partial(const std::function<double(double, double)>& f,
                         double u, double v, int i, int j, double h,
                         bool richardson = false) {
  auto at = [&](double step) {
    return central(
        [&](double du) {
          return central([&](double dv) { return f(u + du, v + dv); }, j, step);
        },
        i, step);
  };
  if (!richardson) return at(h);
  return (4.0 * at(0.5 * h) - at(h)) / 3.0;
}

}  // namespace nbtb::test
