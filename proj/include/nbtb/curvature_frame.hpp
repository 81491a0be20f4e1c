#pragma once

// Principal curvatures, principal frame, connection forms and the curvature
// derivatives consumed by the tension and bitension formulas.

#include <array>

#include "nbtb/surface.hpp"

namespace nbtb {

/// a - b below this fraction of max(1, |a| + |b|) marks a point umbilic.
inline constexpr double kUmbilicThreshold = 1e-7;

/// Umbilics whose mean-curvature gradient and discriminant jet vanish below
/// this level count as constant-curvature points (sphere, plane).
inline constexpr double kConstantUmbilicThreshold = 1e-9;

/// Principal-curvature apparatus at one surface point.
///
/// Jets are expanded about the sample point, so `a.value()` is the principal
/// curvature there while the higher coefficients feed directional
/// derivatives. Conventions: a >= b; (e1, e2, N) is right-handed;
/// omega12_ei = <nabla_{e_i} e1, e2>.
///
/// At umbilics e1, e2 is the coordinate-aligned frame and d1a .. d2b are not
/// meaningful (they are derivatives of H), unless `constant_curvature` is
/// set, in which case they are exactly zero. grad_trace and lap_trace are
/// valid everywhere since a + b = 2H is smooth.
struct PrincipalData {
  Jet2 a, b;
  Vec3<Jet2> position;
  Vec3<Jet2> normal;
  Vec3<Jet2> e1, e2;
  std::array<Jet2, 2> e1_coords, e2_coords;
  Jet2 d1a, d2a, d1b, d2b;
  double omega12_e1 = 0.0;
  double omega12_e2 = 0.0;
  std::array<double, 2> grad_trace{};
  double lap_trace = 0.0;
  // <D_{e_i} D_{e_i} e_j, N>, indexed [i][j].
  Mat2<double> accel_normal{};
  bool umbilic = false;
  bool constant_curvature = false;

  /// Whether e_i a, e_i b can be used individually.
  bool derivatives_reliable() const { return !umbilic || constant_curvature; }
};

PrincipalData principal_data(const FundamentalForms& ff);

/// e_which(phi) as a jet (one order less valid than phi); which is 1 or 2.
Jet2 directional(const PrincipalData& pd, int which, const Jet2& phi);
Vec3<Jet2> directional(const PrincipalData& pd, int which, const Vec3<Jet2>& w);

/// Laplace-Beltrami with the leading minus sign, from the principal frame:
/// -sum_i { e_i(e_i phi) - (nabla_{e_i} e_i) phi }.
double laplacian(const PrincipalData& pd, const Jet2& phi);

struct CodazziResiduals {
  double first;   // e1 b - (a - b) omega12(e2)
  double second;  // e2 a - (b - a) omega21(e1)
};

CodazziResiduals codazzi_residuals(const PrincipalData& pd);

/// A surface point with everything the downstream modules read.
struct SurfaceSample {
  UV uv;
  FundamentalForms ff;
  PrincipalData pd;
};

SurfaceSample sample_surface(const SurfacePatch& patch, UV uv);

}  // namespace nbtb
