#include "nbtb/surface.hpp"

#include <cstdio>
#include <numbers>
#include <sstream>

namespace nbtb {
namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SurfacePatch SurfacePatch::plane() {
  return SurfacePatch(SurfaceKind::plane, {}, Domain{-1.0, 1.0, -1.0, 1.0});
}

// Poles are coordinate singularities; the default box stays 0.1 rad away.
SurfacePatch SurfacePatch::sphere(double r) {
  require(r > 0.0, "sphere radius must be positive");
  return SurfacePatch(SurfaceKind::sphere, {r, 0.0, 0.0},
                      Domain{0.1, kPi - 0.1, -kPi, kPi});
}

SurfacePatch SurfacePatch::cylinder(double r) {
  require(r > 0.0, "cylinder radius must be positive");
  return SurfacePatch(SurfaceKind::cylinder, {r, 0.0, 0.0},
                      Domain{-kPi, kPi, -1.0, 1.0});
}

SurfacePatch SurfacePatch::catenoid(double c) {
  require(c > 0.0, "catenoid parameter must be positive");
  return SurfacePatch(SurfaceKind::catenoid, {c, 0.0, 0.0},
                      Domain{-1.0, 1.0, -kPi, kPi});
}

SurfacePatch SurfacePatch::helicoid(double c) {
  require(c > 0.0, "helicoid pitch must be positive");
  return SurfacePatch(SurfaceKind::helicoid, {c, 0.0, 0.0},
                      Domain{-1.0, 1.0, -kPi, kPi});
}

SurfacePatch SurfacePatch::enneper() {
  return SurfacePatch(SurfaceKind::enneper, {}, Domain{-1.0, 1.0, -1.0, 1.0});
}

SurfacePatch SurfacePatch::torus(double major, double minor) {
  require(minor > 0.0 && major > minor, "torus needs R > r > 0");
  return SurfacePatch(SurfaceKind::torus, {major, minor, 0.0},
                      Domain{-kPi, kPi, -kPi, kPi});
}

// The default box avoids the four umbilics, which sit in the plane y = 0
// (v = 0 or pi) when the semi-axes are distinct.
SurfacePatch SurfacePatch::ellipsoid(double p, double q, double s) {
  require(p > 0.0 && q > 0.0 && s > 0.0, "ellipsoid semi-axes must be positive");
  return SurfacePatch(SurfaceKind::ellipsoid, {p, q, s},
                      Domain{0.4, 1.2, 0.3, 1.2});
}

SurfacePatch SurfacePatch::cone(double half_angle) {
  require(half_angle > 0.0 && half_angle < kPi / 2,
          "cone half-angle must lie in (0, pi/2)");
  return SurfacePatch(SurfaceKind::cone, {half_angle, 0.0, 0.0},
                      Domain{-kPi, kPi, 0.5, 2.0});
}

SurfacePatch SurfacePatch::graph(const GraphPoly& coeffs) {
  SurfacePatch p(SurfaceKind::graph, {}, Domain{-1.0, 1.0, -1.0, 1.0});
  p.graph_ = coeffs;
  return p;
}

SurfacePatch SurfacePatch::with_domain(const Domain& d) const {
  require(d.u0 < d.u1 && d.v0 < d.v1, "domain box must be non-empty");
  SurfacePatch p = *this;
  p.domain_ = d;
  return p;
}

SurfacePatch SurfacePatch::with_regularity_margin(double m) const {
  require(m > 0.0, "regularity margin must be positive");
  SurfacePatch p = *this;
  p.margin_ = m;
  return p;
}

SurfacePatch SurfacePatch::swapped() const {
  SurfacePatch p = *this;
  p.swapped_ = !swapped_;
  p.domain_ = Domain{domain_.v0, domain_.v1, domain_.u0, domain_.u1};
  return p;
}

std::string SurfacePatch::tag() const {
  const auto& p = params_;
  switch (kind_) {
    case SurfaceKind::plane:
      return "plane";
    case SurfaceKind::sphere:
      return "sphere:r=" + fmt(p[0]);
    case SurfaceKind::cylinder:
      return "cylinder:r=" + fmt(p[0]);
    case SurfaceKind::catenoid:
      return "catenoid:c=" + fmt(p[0]);
    case SurfaceKind::helicoid:
      return "helicoid:c=" + fmt(p[0]);
    case SurfaceKind::enneper:
      return "enneper";
    case SurfaceKind::torus:
      return "torus:R=" + fmt(p[0]) + ",r=" + fmt(p[1]);
    case SurfaceKind::ellipsoid:
      return "ellipsoid:p=" + fmt(p[0]) + ",q=" + fmt(p[1]) + ",s=" + fmt(p[2]);
    case SurfaceKind::cone:
      return "cone:alpha=" + fmt(p[0]);
    case SurfaceKind::graph: {
      std::string out = "graph:";
      bool first = true;
      for (int n = 0; n <= 4; ++n) {
        for (int j = 0; j <= n; ++j) {
          const double c = graph_[simd::jet_index(n - j, j)];
          if (c == 0.0) continue;
          if (!first) out += ',';
          out += 'c' + std::to_string(n - j) + std::to_string(j) + '=' + fmt(c);
          first = false;
        }
      }
      return out;
    }
  }
  return "unknown";
}

PatchJets eval_patch(const SurfacePatch& patch, UV uv) {
  if (!patch.domain().contains(uv)) {
    std::ostringstream os;
    os << "point (" << uv.u << ", " << uv.v << ") outside the domain of "
       << patch.tag();
    throw OutOfDomain(os.str());
  }
  const Jet2 u = Jet2::variable(Var::u, uv.u);
  const Jet2 v = Jet2::variable(Var::v, uv.v);
  PatchJets out;
  out.x = patch.position(u, v);
  for (int k = 0; k < 3; ++k) {
    out.xu[k] = out.x[k].du();
    out.xv[k] = out.x[k].dv();
  }
  return out;
}

FundamentalForms fundamental_forms(const SurfacePatch& patch, UV uv) {
  const PatchJets pj = eval_patch(patch, uv);
  FundamentalForms ff;
  ff.x = pj.x;
  ff.xu = pj.xu;
  ff.xv = pj.xv;

  const Vec3<Jet2> n = cross(pj.xu, pj.xv);
  const Jet2 n2 = dot(n, n);
  const double area = std::sqrt(std::max(n2.value(), 0.0));
  if (area < patch.regularity_margin()) {
    throw DegenerateImmersion("|x_u x x_v| below regularity margin at " +
                              patch.tag());
  }
  ff.normal = n / sqrt(n2);

  ff.g[0][0] = dot(pj.xu, pj.xu);
  ff.g[0][1] = dot(pj.xu, pj.xv);
  ff.g[1][0] = ff.g[0][1];
  ff.g[1][1] = dot(pj.xv, pj.xv);

  Vec3<Jet2> xuu, xuv, xvv;
  for (int k = 0; k < 3; ++k) {
    xuu[k] = pj.xu[k].du();
    xuv[k] = pj.xu[k].dv();
    xvv[k] = pj.xv[k].dv();
  }
  ff.h[0][0] = dot(xuu, ff.normal);
  ff.h[0][1] = dot(xuv, ff.normal);
  ff.h[1][0] = ff.h[0][1];
  ff.h[1][1] = dot(xvv, ff.normal);
  return ff;
}

Mat2<Jet2> shape_operator(const FundamentalForms& ff) {
  const auto& g = ff.g;
  const auto& h = ff.h;
  const Jet2 det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (det.value() <= 0.0) {
    throw DegenerateImmersion("first fundamental form not positive definite");
  }
  const Jet2 inv_det = inverse(det);
  const Mat2<Jet2> gi{{{g[1][1] * inv_det, -g[0][1] * inv_det},
                       {-g[1][0] * inv_det, g[0][0] * inv_det}}};
  Mat2<Jet2> a;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a[i][j] = gi[i][0] * h[0][j] + gi[i][1] * h[1][j];
  }
  return a;
}

}  // namespace nbtb
