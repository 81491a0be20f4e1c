#pragma once

// First-principles tension and bitension of the normal-bundle immersion
// f(u, v, t) = (x(u, v), t N(u, v)), computed in the chart (u, v, t) from the
// induced metric and its Christoffel symbols. Nothing here reads principal
// curvatures or frames, so it serves as the reference for the closed forms.
//
// Derivatives in (u, v) come from jets; the bitension differentiates the
// tension once more by re-running it on nested jets whose outer variables
// perturb the base point (or the fiber coordinate).

#include <array>

#include "nbtb/normal_bundle.hpp"

namespace nbtb {

using Mat3d = std::array<std::array<double, 3>, 3>;

/// Chart index order: 0 = u, 1 = v, 2 = t.
struct ChartGeometry {
  Mat3d g3{};
  Mat3d ginv3{};
  std::array<Mat3d, 3> christoffel{};  // [k][i][j] = Gamma^k_ij
  std::array<Mat3d, 3> dg{};           // [k][i][j] = d_k g_ij
  std::array<Vec6d, 3> df{};
  std::array<std::array<Vec6d, 3>, 3> d2f{};
};

/// Throws DegenerateChart when det g3 <= 1e-10.
ChartGeometry chart_geometry(const SurfacePatch& patch, UV uv, double t);

/// max |d_k g_ij - Gamma^l_ki g_lj - Gamma^l_kj g_il|.
double metric_compatibility_defect(const ChartGeometry& cg);

/// tau(f) = g^{ij} (d_i d_j f - Gamma^k_ij d_k f).
Vec6d oracle_tension(const SurfacePatch& patch, UV uv, double t);
Vec6d oracle_tension(const NBPoint& np);

/// tau_2(f) = -Delta_f tau(f) = g^{ij} (d_i d_j tau - Gamma^k_ij d_k tau); the
/// ambient curvature term vanishes in flat E^6.
Vec6d oracle_bitension(const SurfacePatch& patch, UV uv, double t);
Vec6d oracle_bitension(const NBPoint& np);

/// <tau_2(f), (0, N)>.
double oracle_e3(const NBPoint& np);

/// Cruder cross-check: the bitension from central differences of
/// oracle_tension (step h and h/2, one Richardson step). Agreement with
/// oracle_bitension is expected only to about 1e-3.
Vec6d fd_bitension(const SurfacePatch& patch, UV uv, double t,
                   double step = 1e-3);

}  // namespace nbtb
