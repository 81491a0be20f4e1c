#include "nbtb/normal_bundle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nbtb {
namespace {

void require_derivatives(const PrincipalData& pd) {
  if (!pd.derivatives_reliable()) {
    throw UmbilicDerivativesUnavailable(
        "curvature derivatives undefined at a non-constant umbilic");
  }
}

}  // namespace

Vec3d value(const Vec3<Jet2>& w) {
  return {{w[0].value(), w[1].value(), w[2].value()}};
}

NBPoint::NBPoint(const SurfacePatch& patch, const SurfaceSample& sample,
                 double t, double fiber_bound)
    : patch_(&patch), sample_(&sample), t_(t) {
  if (!std::isfinite(t) || std::abs(t) > fiber_bound) {
    std::ostringstream os;
    os << "fiber coordinate " << t << " outside bound " << fiber_bound;
    throw OutOfDomain(os.str());
  }
}

NBFrame nb_frame(const NBPoint& np) {
  const PrincipalData& pd = np.pd();
  const double t = np.t();
  const double a = pd.a.value();
  const double b = pd.b.value();
  const Vec3d e1 = value(pd.e1);
  const Vec3d e2 = value(pd.e2);
  const Vec3d N = value(pd.normal);
  const Vec3d zero{};

  const double ka = 1.0 / std::sqrt(1.0 + t * t * a * a);
  const double kb = 1.0 / std::sqrt(1.0 + t * t * b * b);
  NBFrame fr;
  fr.f = join(value(pd.position), N * t);
  fr.te1 = join(e1, e1 * (-t * a)) * ka;
  fr.te2 = join(e2, e2 * (-t * b)) * kb;
  fr.te3 = join(zero, N);
  fr.n4 = apply_j(fr.te1);
  fr.n5 = apply_j(fr.te2);
  fr.n6 = apply_j(fr.te3);
  return fr;
}

HCoeffs h_coeffs(const NBPoint& np) {
  const PrincipalData& pd = np.pd();
  require_derivatives(pd);
  const double t = np.t();
  const double a = pd.a.value();
  const double b = pd.b.value();
  const double al = 1.0 + t * t * a * a;
  const double be = 1.0 + t * t * b * b;
  HCoeffs h;
  h.h4_11 = -t * std::pow(al, -1.5) * pd.d1a.value();
  h.h4_22 = -t / (std::sqrt(al) * be) * pd.d1b.value();
  h.h5_11 = -t / (al * std::sqrt(be)) * pd.d2a.value();
  h.h5_22 = -t * std::pow(be, -1.5) * pd.d2b.value();
  h.h6_11 = -a / al;
  h.h6_22 = -b / be;
  return h;
}

PQJets pq_jets(const PrincipalData& pd, double t) {
  require_derivatives(pd);
  if (pd.umbilic) return {Jet2(), Jet2()};
  const double t2 = t * t;
  const Jet2 ial = inverse(pd.a * pd.a * t2 + 1.0);
  const Jet2 ibe = inverse(pd.b * pd.b * t2 + 1.0);
  const Jet2 mixed = ial * ibe;
  return {ial * ial * pd.d1a + mixed * pd.d1b,
          mixed * pd.d2a + ibe * ibe * pd.d2b};
}

TensionValue tension(const NBPoint& np, bool verify) {
  const PrincipalData& pd = np.pd();
  require_derivatives(pd);
  const double t = np.t();
  const double a = pd.a.value();
  const double b = pd.b.value();
  const double al = 1.0 + t * t * a * a;
  const double be = 1.0 + t * t * b * b;

  TensionValue tv;
  if (!pd.umbilic) {
    tv.P = pd.d1a.value() / (al * al) + pd.d1b.value() / (al * be);
    tv.Q = pd.d2a.value() / (al * be) + pd.d2b.value() / (be * be);
  }
  tv.R = a / al + b / be;

  const Vec3d e1 = value(pd.e1);
  const Vec3d e2 = value(pd.e2);
  const Vec3d N = value(pd.normal);
  const Vec3d first = e1 * (tv.P * t * t * a) + e2 * (tv.Q * t * t * b) - N * tv.R;
  const Vec3d second = e1 * (tv.P * t) + e2 * (tv.Q * t);
  tv.tau = -join(first, second);

  if (verify) {
    const HCoeffs h = h_coeffs(np);
    const NBFrame fr = nb_frame(np);
    const Vec6d rebuilt = fr.n4 * (h.h4_11 + h.h4_22) +
                          fr.n5 * (h.h5_11 + h.h5_22) +
                          fr.n6 * (h.h6_11 + h.h6_22);
    const double scale = std::max(1.0, norm(tv.tau));
    if (norm(rebuilt - tv.tau) > 1e-10 * scale) {
      throw NumericError("tension: frame-coefficient reconstruction disagrees");
    }
  }
  return tv;
}

double lagrangian_defect(const NBFrame& fr) {
  const Vec6d* tangent[3] = {&fr.te1, &fr.te2, &fr.te3};
  double worst = 0.0;
  for (const Vec6d* x : tangent) {
    for (const Vec6d* y : tangent) {
      worst = std::max(worst, std::abs(dot(apply_j(*x), *y)));
    }
  }
  return worst;
}

double orthonormality_defect(const NBFrame& fr) {
  const Vec6d* v[6] = {&fr.te1, &fr.te2, &fr.te3, &fr.n4, &fr.n5, &fr.n6};
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const double target = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(dot(*v[i], *v[j]) - target));
    }
  }
  return worst;
}

}  // namespace nbtb
