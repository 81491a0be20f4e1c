#include "nbtb/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace nbtb {
namespace {

template <class T>
using M3 = std::array<std::array<T, 3>, 3>;

template <class T>
struct ChartData {
  M3<T> g, ginv;
  std::array<M3<T>, 3> dg;     // [k][i][j] = d_k g_ij
  std::array<M3<T>, 3> gamma;  // [k][i][j] = Gamma^k_ij
  std::array<Vec6<T>, 3> df;
  std::array<std::array<Vec6<T>, 3>, 3> d2f;
};

template <class S>
Vec3<S> d_u(const Vec3<S>& w) {
  return {{w[0].du(), w[1].du(), w[2].du()}};
}
template <class S>
Vec3<S> d_v(const Vec3<S>& w) {
  return {{w[0].dv(), w[1].dv(), w[2].dv()}};
}
template <class T, std::size_t N>
Vec<T, N> constant_part(const Vec<BasicJet2<T>, N>& w) {
  Vec<T, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = w[i].value();
  return r;
}

// Geometry of the chart at (u, v, t), where each coordinate is a scalar of
// type T; T = Jet2 carries perturbations of the base point through.
template <class T>
ChartData<T> chart_data(const SurfacePatch& patch, const T& u, const T& v,
                        const T& t) {
  using S = BasicJet2<T>;
  const S U = S::variable(Var::u, u);
  const S V = S::variable(Var::v, v);
  const Vec3<S> x = patch.position(U, V);
  const Vec3<S> xu = d_u(x);
  const Vec3<S> xv = d_v(x);
  const Vec3<S> n = cross(xu, xv);
  const S n2 = dot(n, n);
  const double margin = patch.regularity_margin();
  if (detail::scalar_part(n2.value()) < margin * margin) {
    throw DegenerateChart("oracle: surface chart not immersive");
  }
  const Vec3<S> N = n / sqrt(n2);
  const Vec3<S> Nu = d_u(N);
  const Vec3<S> Nv = d_v(N);
  const Vec3<S> zero{};

  // Chart partials of f as jets, then their constant parts.
  const std::array<Vec6<S>, 3> F = {join(xu, Nu * t), join(xv, Nv * t),
                                    join(zero, N)};
  ChartData<T> cd;
  for (int a = 0; a < 3; ++a) cd.df[a] = constant_part(F[a]);
  const Vec3<S> xuu = d_u(xu), xuv = d_v(xu), xvv = d_v(xv);
  const Vec3<S> Nuu = d_u(Nu), Nuv = d_v(Nu), Nvv = d_v(Nv);
  const Vec3<T> z3 = constant_part(zero);
  cd.d2f[0][0] = join(constant_part(xuu), constant_part(Nuu) * t);
  cd.d2f[0][1] = join(constant_part(xuv), constant_part(Nuv) * t);
  cd.d2f[1][1] = join(constant_part(xvv), constant_part(Nvv) * t);
  cd.d2f[0][2] = join(z3, constant_part(Nu));
  cd.d2f[1][2] = join(z3, constant_part(Nv));
  cd.d2f[2][2] = join(z3, z3);
  cd.d2f[1][0] = cd.d2f[0][1];
  cd.d2f[2][0] = cd.d2f[0][2];
  cd.d2f[2][1] = cd.d2f[1][2];

  // Metric as jets; d_u, d_v g by jet differentiation, d_t g by the product
  // rule (f is affine in t).
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const S gij = dot(F[i], F[j]);
      cd.g[i][j] = cd.g[j][i] = gij.value();
      cd.dg[0][i][j] = cd.dg[0][j][i] = gij.du().value();
      cd.dg[1][i][j] = cd.dg[1][j][i] = gij.dv().value();
      cd.dg[2][i][j] = cd.dg[2][j][i] =
          dot(cd.d2f[i][2], cd.df[j]) + dot(cd.df[i], cd.d2f[j][2]);
    }
  }

  const auto& g = cd.g;
  const T c00 = g[1][1] * g[2][2] - g[1][2] * g[2][1];
  const T c01 = g[1][2] * g[2][0] - g[1][0] * g[2][2];
  const T c02 = g[1][0] * g[2][1] - g[1][1] * g[2][0];
  const T det = g[0][0] * c00 + g[0][1] * c01 + g[0][2] * c02;
  if (detail::scalar_part(det) <= 1e-10) {
    throw DegenerateChart("oracle: induced metric degenerate");
  }
  const T idet = T(1.0) / det;
  cd.ginv[0][0] = c00 * idet;
  cd.ginv[1][0] = c01 * idet;
  cd.ginv[2][0] = c02 * idet;
  cd.ginv[0][1] = (g[0][2] * g[2][1] - g[0][1] * g[2][2]) * idet;
  cd.ginv[1][1] = (g[0][0] * g[2][2] - g[0][2] * g[2][0]) * idet;
  cd.ginv[2][1] = (g[0][1] * g[2][0] - g[0][0] * g[2][1]) * idet;
  cd.ginv[0][2] = (g[0][1] * g[1][2] - g[0][2] * g[1][1]) * idet;
  cd.ginv[1][2] = (g[0][2] * g[1][0] - g[0][0] * g[1][2]) * idet;
  cd.ginv[2][2] = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) * idet;

  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        T s = T(0.0);
        for (int l = 0; l < 3; ++l) {
          s += cd.ginv[k][l] *
               (cd.dg[i][j][l] + cd.dg[j][i][l] - cd.dg[l][i][j]);
        }
        cd.gamma[k][i][j] = s * 0.5;
      }
    }
  }
  return cd;
}

template <class T>
Vec6<T> tension_from_chart(const ChartData<T>& cd) {
  Vec6<T> tau;
  for (auto& c : tau.c) c = T(0.0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec6<T> hess = cd.d2f[i][j];
      for (int k = 0; k < 3; ++k) hess -= cd.df[k] * cd.gamma[k][i][j];
      tau += hess * cd.ginv[i][j];
    }
  }
  return tau;
}

template <class T>
Vec6<T> tension_at(const SurfacePatch& patch, const T& u, const T& v,
                   const T& t) {
  return tension_from_chart(chart_data(patch, u, v, t));
}

Vec6d coeff(const Vec6<Jet2>& w, int i, int j) {
  Vec6d r;
  for (int k = 0; k < 6; ++k) r[k] = w[k](i, j);
  return r;
}

// g^{ij} (H_ij - Gamma^k_ij grad_k) for a vector-valued function.
Vec6d rough_laplacian(const ChartData<double>& cd,
                      const std::array<Vec6d, 3>& grad,
                      const std::array<std::array<Vec6d, 3>, 3>& hess) {
  Vec6d out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec6d term = hess[i][j];
      for (int k = 0; k < 3; ++k) term -= grad[k] * cd.gamma[k][i][j];
      out += term * cd.ginv[i][j];
    }
  }
  return out;
}

void require_in_domain(const SurfacePatch& patch, UV uv) {
  if (!patch.domain().contains(uv)) {
    throw OutOfDomain("oracle: point outside the domain of " + patch.tag());
  }
}

}  // namespace

ChartGeometry chart_geometry(const SurfacePatch& patch, UV uv, double t) {
  require_in_domain(patch, uv);
  const ChartData<double> cd = chart_data(patch, uv.u, uv.v, t);
  ChartGeometry cg;
  cg.g3 = cd.g;
  cg.ginv3 = cd.ginv;
  cg.christoffel = cd.gamma;
  cg.dg = cd.dg;
  cg.df = cd.df;
  cg.d2f = cd.d2f;
  return cg;
}

double metric_compatibility_defect(const ChartGeometry& cg) {
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double rhs = 0.0;
        for (int l = 0; l < 3; ++l) {
          rhs += cg.christoffel[l][k][i] * cg.g3[l][j] +
                 cg.christoffel[l][k][j] * cg.g3[i][l];
        }
        worst = std::max(worst, std::abs(cg.dg[k][i][j] - rhs));
      }
    }
  }
  return worst;
}

Vec6d oracle_tension(const SurfacePatch& patch, UV uv, double t) {
  require_in_domain(patch, uv);
  return tension_at(patch, uv.u, uv.v, t);
}

Vec6d oracle_tension(const NBPoint& np) {
  return oracle_tension(np.patch(), np.uv(), np.t());
}

Vec6d oracle_bitension(const SurfacePatch& patch, UV uv, double t) {
  require_in_domain(patch, uv);
  const ChartData<double> cd = chart_data(patch, uv.u, uv.v, t);

  // Outer jet variables: (u, v) at fixed t, then (t, u), then (t, v).
  const Vec6<Jet2> tau_uv =
      tension_at(patch, Jet2::variable(Var::u, uv.u),
                 Jet2::variable(Var::v, uv.v), Jet2(t));
  const Vec6<Jet2> tau_tu =
      tension_at(patch, Jet2::variable(Var::v, uv.u), Jet2(uv.v),
                 Jet2::variable(Var::u, t));
  const Vec6<Jet2> tau_tv =
      tension_at(patch, Jet2(uv.u), Jet2::variable(Var::v, uv.v),
                 Jet2::variable(Var::u, t));

  std::array<Vec6d, 3> grad = {coeff(tau_uv, 1, 0), coeff(tau_uv, 0, 1),
                               coeff(tau_tu, 1, 0)};
  std::array<std::array<Vec6d, 3>, 3> hess;
  hess[0][0] = coeff(tau_uv, 2, 0);
  hess[0][1] = hess[1][0] = coeff(tau_uv, 1, 1);
  hess[1][1] = coeff(tau_uv, 0, 2);
  hess[2][2] = coeff(tau_tu, 2, 0);
  hess[0][2] = hess[2][0] = coeff(tau_tu, 1, 1);
  hess[1][2] = hess[2][1] = coeff(tau_tv, 1, 1);
  return rough_laplacian(cd, grad, hess);
}

Vec6d oracle_bitension(const NBPoint& np) {
  return oracle_bitension(np.patch(), np.uv(), np.t());
}

double oracle_e3(const NBPoint& np) {
  const ChartGeometry cg = chart_geometry(np.patch(), np.uv(), np.t());
  const Vec6d te3 = cg.df[2] / norm(cg.df[2]);
  return dot(oracle_bitension(np), te3);
}

Vec6d fd_bitension(const SurfacePatch& patch, UV uv, double t, double step) {
  require_in_domain(patch, uv);
  const ChartData<double> cd = chart_data(patch, uv.u, uv.v, t);
  const std::array<double, 3> base{uv.u, uv.v, t};
  auto tau_at = [&](const std::array<double, 3>& p) {
    return tension_at(patch, p[0], p[1], p[2]);
  };
  auto shifted = [&](int i, double di, int j, double dj) {
    std::array<double, 3> p = base;
    p[i] += di;
    p[j] += dj;
    return tau_at(p);
  };

  const Vec6d center = tau_at(base);
  auto derivatives = [&](double h, std::array<Vec6d, 3>& grad,
                         std::array<std::array<Vec6d, 3>, 3>& hess) {
    for (int i = 0; i < 3; ++i) {
      const Vec6d plus = shifted(i, h, i, 0.0);
      const Vec6d minus = shifted(i, -h, i, 0.0);
      grad[i] = (plus - minus) / (2.0 * h);
      hess[i][i] = (plus - center * 2.0 + minus) / (h * h);
      for (int j = i + 1; j < 3; ++j) {
        hess[i][j] = (shifted(i, h, j, h) - shifted(i, h, j, -h) -
                      shifted(i, -h, j, h) + shifted(i, -h, j, -h)) /
                     (4.0 * h * h);
        hess[j][i] = hess[i][j];
      }
    }
  };

  std::array<Vec6d, 3> g1, g2;
  std::array<std::array<Vec6d, 3>, 3> h1, h2;
  derivatives(step, g1, h1);
  derivatives(step / 2.0, g2, h2);
  for (int i = 0; i < 3; ++i) {
    g2[i] = g2[i] + (g2[i] - g1[i]) / 3.0;
    for (int j = 0; j < 3; ++j) h2[i][j] = h2[i][j] + (h2[i][j] - h1[i][j]) / 3.0;
  }
  return rough_laplacian(cd, g2, h2);
}

}  // namespace nbtb
