#pragma once

// Tangential biharmonicity of the normal bundle: the bitension at t = 0, the
// residuals of the tangential conditions, the te3-component of the bitension
// and its polynomial structure in t, and the resulting classification.

#include <span>
#include <string>
#include <vector>

#include "nbtb/normal_bundle.hpp"

namespace nbtb {

inline constexpr double kDefaultTolerance = 1e-6;
/// Residuals in (tol, kHysteresis * tol] make a verdict inconclusive.
inline constexpr double kHysteresis = 10.0;

struct TangentialResiduals {
  double c1 = 0.0;  // |(5a + b) e1(a + b)|
  double c2 = 0.0;  // |(a + 5b) e2(a + b)|
  double c3 = 0.0;  // |(a - b)^2 e1 a|
  double c4 = 0.0;  // |(a - b)^2 e2 b|
  std::vector<double> e3comp;  // <tau_2, te3> over the fiber samples
  Vec6d bitension_t0;

  double max_condition() const;
};

/// -(Lap(a+b) N + (5a+b) e1(a+b) e1 + (a+5b) e2(a+b) e2
///   + (a+b)(3a^2 - 2ab + 3b^2) N, 0).
Vec6d bitension_t0(const PrincipalData& pd);

/// c1..c4 only; c3 and c4 are 0 at umbilics.
TangentialResiduals tangential_conditions(const PrincipalData& pd);

/// <tau_2(f), te3> from the frame expansion. Zero at constant-curvature
/// umbilics; throws UmbilicDerivativesUnavailable at other umbilics.
double e3_component(const NBPoint& np);
double e3_component(const PrincipalData& pd, double t);

/// e3_component plus the connection terms coming from derivatives of
/// 1 + t^2 a^2 and 1 + t^2 b^2 along the surface. These vanish at t = 0;
/// for t != 0 this is the value that matches oracle_e3.
double e3_component_exact(const NBPoint& np);
double e3_component_exact(const PrincipalData& pd, double t);

struct LeadingTermResult {
  double remainder = 0.0;  // least-squares distance to (1+t^2a^2)(1+t^2b^2) q(t), in powers of t / t_max
  // remainder over the largest sampled |F| or leading-term value
  double relative_remainder = 0.0;
  double max_abs_f = 0.0;
  double condition = 0.0;  // of the scaled sample Vandermonde matrix
  std::vector<double> odd_coeffs;   // fitted F: coefficients of t, t^3, ...
};

/// The default 24 fiber samples, evenly spaced over [0.1, 2.4].
std::vector<double> default_leading_term_samples();

/// Fits F(t) = (1+t^2a^2)^4 (1+t^2b^2)^4 <tau_2, te3> as an odd polynomial
/// of degree <= 19, subtracts the two leading t^3 terms, and divides by
/// (1+t^2a^2)(1+t^2b^2). Throws IllConditionedFit when the Vandermonde
/// condition number exceeds 1e12.
LeadingTermResult leading_term_check(const PrincipalData& pd,
                                     std::span<const double> t_samples);
LeadingTermResult leading_term_check(const PrincipalData& pd);

enum class SurfaceClass {
  minimal,
  round_sphere,
  circular_cylinder,
  not_tangentially_biharmonic,
  inconclusive
};

const char* class_name(SurfaceClass c);

struct GridSpec {
  int n_u = 9;
  int n_v = 9;
  std::vector<double> fiber{0.0, -0.25, 0.25, -0.5, 0.5, -1.0, 1.0, -2.0, 2.0};
  double fiber_bound = kDefaultFiberBound;

  /// Grid points in row-major (u outer, v inner) order, endpoints included.
  std::vector<UV> points(const Domain& d) const;
};

struct Witness {
  UV uv;
  double t = 0.0;
  std::string condition;
  double value = 0.0;
};

struct Verdict {
  SurfaceClass cls = SurfaceClass::inconclusive;
  double curvature = 0.0;  // the constant curvature for sphere / cylinder
  TangentialResiduals max_residuals;
  double max_tension = 0.0;
  double max_e3 = 0.0;
  double max_bitension = 0.0;
  bool biharmonic = false;
  std::vector<Witness> evidence;
  std::string note;
  int skipped_umbilics = 0;
};

/// Classification over a sample grid. Checks in order:
/// minimal, round sphere, circular cylinder, then the tangential residuals.
Verdict classify(const SurfacePatch& patch, const GridSpec& grid,
                 double tol = kDefaultTolerance);

}  // namespace nbtb
