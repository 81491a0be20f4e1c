#include "nbtb/curvature_frame.hpp"

#include <algorithm>
#include <cmath>

namespace nbtb {
namespace {

// Coordinate components c^i = g^{ij} <w, x_j> of a tangent field w.
std::array<Jet2, 2> coordinates(const FundamentalForms& ff, const Vec3<Jet2>& w) {
  const auto& g = ff.g;
  const Jet2 inv_det = inverse(g[0][0] * g[1][1] - g[0][1] * g[1][0]);
  const Jet2 wu = dot(w, ff.xu);
  const Jet2 wv = dot(w, ff.xv);
  return {(g[1][1] * wu - g[0][1] * wv) * inv_det,
          (g[0][0] * wv - g[1][0] * wu) * inv_det};
}

Vec3<Jet2> unit(const Vec3<Jet2>& w) { return w / sqrt(dot(w, w)); }

bool vanishes_to_second_order(const Jet2& j, int first_order, double tol) {
  for (int n = first_order; n <= 2; ++n) {
    for (int k = 0; k <= n; ++k) {
      if (std::abs(j(n - k, k)) > tol) return false;
    }
  }
  return true;
}

}  // namespace

Jet2 directional(const PrincipalData& pd, int which, const Jet2& phi) {
  const auto& c = which == 1 ? pd.e1_coords : pd.e2_coords;
  return c[0] * phi.du() + c[1] * phi.dv();
}

Vec3<Jet2> directional(const PrincipalData& pd, int which, const Vec3<Jet2>& w) {
  Vec3<Jet2> r;
  for (int k = 0; k < 3; ++k) r[k] = directional(pd, which, w[k]);
  return r;
}

double laplacian(const PrincipalData& pd, const Jet2& phi) {
  const Jet2 d1 = directional(pd, 1, phi);
  const Jet2 d2 = directional(pd, 2, phi);
  const double d11 = directional(pd, 1, d1).value();
  const double d22 = directional(pd, 2, d2).value();
  // nabla_{e1} e1 = omega12(e1) e2 and nabla_{e2} e2 = -omega12(e2) e1.
  return -(d11 - pd.omega12_e1 * d2.value() + d22 +
           pd.omega12_e2 * d1.value());
}

PrincipalData principal_data(const FundamentalForms& ff) {
  PrincipalData pd;
  pd.position = ff.x;
  pd.normal = ff.normal;

  const Mat2<Jet2> A = shape_operator(ff);
  const Jet2 H = (A[0][0] + A[1][1]) * 0.5;
  const Jet2 K = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const Jet2 disc = H * H - K;
  const double root0 = std::sqrt(std::max(disc.value(), 0.0));
  const double H0 = H.value();
  pd.umbilic = 2.0 * root0 <
               kUmbilicThreshold * std::max(1.0, std::abs(H0 + root0) +
                                                      std::abs(H0 - root0));

  Vec3<Jet2> E1;
  if (!pd.umbilic) {
    const Jet2 root = sqrt(disc);
    pd.a = H + root;
    pd.b = H - root;
    // Eigenvector of A for a, from whichever row of (A - aI) has the larger
    // pivot at the sample point.
    const std::array<Jet2, 2> from_row0{A[0][1], pd.a - A[0][0]};
    const std::array<Jet2, 2> from_row1{pd.a - A[1][1], A[1][0]};
    const auto sq = [](const std::array<Jet2, 2>& v) {
      return v[0].value() * v[0].value() + v[1].value() * v[1].value();
    };
    const auto& ev = sq(from_row0) >= sq(from_row1) ? from_row0 : from_row1;
    E1 = unit(ff.xu * ev[0] + ff.xv * ev[1]);
  } else {
    pd.a = H;
    pd.b = H;
    E1 = unit(ff.xu);
  }
  pd.e1 = E1;
  pd.e2 = cross(ff.normal, E1);
  pd.e1_coords = coordinates(ff, pd.e1);
  pd.e2_coords = coordinates(ff, pd.e2);

  if (pd.umbilic) {
    const double scale = std::pow(std::max(1.0, std::abs(H0)), 3);
    pd.constant_curvature =
        vanishes_to_second_order(H, 1, kConstantUmbilicThreshold * scale) &&
        vanishes_to_second_order(disc, 0, kConstantUmbilicThreshold * scale);
  }
  if (pd.umbilic && pd.constant_curvature) {
    pd.d1a = pd.d2a = pd.d1b = pd.d2b = Jet2();
  } else {
    pd.d1a = directional(pd, 1, pd.a);
    pd.d2a = directional(pd, 2, pd.a);
    pd.d1b = directional(pd, 1, pd.b);
    pd.d2b = directional(pd, 2, pd.b);
  }

  pd.omega12_e1 = dot(directional(pd, 1, pd.e1), pd.e2).value();
  pd.omega12_e2 = dot(directional(pd, 2, pd.e1), pd.e2).value();

  const Jet2 trace = H * 2.0;
  pd.grad_trace = {directional(pd, 1, trace).value(),
                   directional(pd, 2, trace).value()};
  pd.lap_trace = laplacian(pd, trace);

  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Vec3<Jet2>& ej = j == 0 ? pd.e1 : pd.e2;
      const Vec3<Jet2> once = directional(pd, i + 1, ej);
      pd.accel_normal[i][j] = dot(directional(pd, i + 1, once), pd.normal).value();
    }
  }
  return pd;
}

CodazziResiduals codazzi_residuals(const PrincipalData& pd) {
  const double a = pd.a.value();
  const double b = pd.b.value();
  // omega21(e1) = -omega12(e1).
  return {pd.d1b.value() - (a - b) * pd.omega12_e2,
          pd.d2a.value() - (b - a) * (-pd.omega12_e1)};
}

SurfaceSample sample_surface(const SurfacePatch& patch, UV uv) {
  SurfaceSample s;
  s.uv = uv;
  s.ff = fundamental_forms(patch, uv);
  s.pd = principal_data(s.ff);
  return s;
}

}  // namespace nbtb
