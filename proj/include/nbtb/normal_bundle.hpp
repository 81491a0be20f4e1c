#pragma once

// The normal bundle of a surface in E^3, immersed in E^6 = E^3 x E^3 by
// f(p, t) = (x(p), t N(p)). Closed-form frames, second fundamental form
// coefficients and tension field.

#include "nbtb/curvature_frame.hpp"

namespace nbtb {

inline constexpr double kDefaultFiberBound = 10.0;

/// A point (p, t) of the normal bundle. Non-owning: the patch and sample must
/// outlive it.
class NBPoint {
 public:
  NBPoint(const SurfacePatch& patch, const SurfaceSample& sample, double t,
          double fiber_bound = kDefaultFiberBound);

  const SurfacePatch& patch() const { return *patch_; }
  const SurfaceSample& sample() const { return *sample_; }
  const PrincipalData& pd() const { return sample_->pd; }
  UV uv() const { return sample_->uv; }
  double t() const { return t_; }

 private:
  const SurfacePatch* patch_;
  const SurfaceSample* sample_;
  double t_;
};

/// f and the orthonormal frame of R^6 adapted to the immersion: te1..te3 span
/// the tangent space, n4..n6 = J te1..J te3 span the normal space.
struct NBFrame {
  Vec6d f;
  Vec6d te1, te2, te3;
  Vec6d n4, n5, n6;
};

NBFrame nb_frame(const NBPoint& np);

/// The nonzero coefficients h^alpha_ij = <D_{te_i} f_*(te_j), e_alpha>;
/// every h^alpha_33 vanishes.
struct HCoeffs {
  double h4_11, h4_22, h5_11, h5_22, h6_11, h6_22;
};

/// Throws UmbilicDerivativesUnavailable at umbilics whose curvature
/// derivatives are not certified zero.
HCoeffs h_coeffs(const NBPoint& np);

struct TensionValue {
  double P = 0.0;
  double Q = 0.0;
  double R = 0.0;
  Vec6d tau;
};

struct PQJets {
  Jet2 P, Q;
};

/// P and Q as jets in (u, v) at fixed t; valid to order 1.
PQJets pq_jets(const PrincipalData& pd, double t);

/// tau(f) = -(P t^2 a e1 + Q t^2 b e2 - R N, P t e1 + Q t e2).
/// With `verify`, also rebuilds tau as sum_alpha sum_i h^alpha_ii e_alpha and
/// throws NumericError if the two disagree beyond 1e-10 (relative).
TensionValue tension(const NBPoint& np, bool verify = false);

/// Largest |<J X, Y>| over the tangent frame pairs.
double lagrangian_defect(const NBFrame& fr);

/// Largest |<v_i, v_j> - delta_ij| over the six frame vectors.
double orthonormality_defect(const NBFrame& fr);

Vec3d value(const Vec3<Jet2>& w);

}  // namespace nbtb
