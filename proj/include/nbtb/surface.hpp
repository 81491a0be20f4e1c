#pragma once

// Parametric surface patches in E^3 and their fundamental forms.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nbtb/jet.hpp"
#include "nbtb/vec.hpp"

namespace nbtb {

template <class T>
using Mat2 = std::array<std::array<T, 2>, 2>;

struct UV {
  double u = 0.0;
  double v = 0.0;
};

struct Domain {
  double u0 = 0.0, u1 = 1.0, v0 = 0.0, v1 = 1.0;

  bool contains(UV p, double slack = 1e-12) const {
    return p.u >= u0 - slack && p.u <= u1 + slack && p.v >= v0 - slack &&
           p.v <= v1 + slack;
  }
};

enum class SurfaceKind {
  plane,
  sphere,
  cylinder,
  catenoid,
  helicoid,
  enneper,
  torus,
  ellipsoid,
  cone,
  graph
};

/// Coefficients of a height polynomial, indexed by simd::jet_index(i, j) for
/// the monomial u^i v^j (total degree <= 4).
using GraphPoly = std::array<double, simd::kJetSize>;

inline constexpr double kDefaultRegularityMargin = 1e-8;

/// An immutable coordinate patch x(u, v) of one catalog surface.
class SurfacePatch {
 public:
  static SurfacePatch plane();
  static SurfacePatch sphere(double r);
  static SurfacePatch cylinder(double r);
  static SurfacePatch catenoid(double c);
  static SurfacePatch helicoid(double c);
  static SurfacePatch enneper();
  static SurfacePatch torus(double major, double minor);
  static SurfacePatch ellipsoid(double p, double q, double s);
  static SurfacePatch cone(double half_angle);
  static SurfacePatch graph(const GraphPoly& coeffs);

  SurfaceKind kind() const { return kind_; }
  const std::array<double, 3>& params() const { return params_; }
  const GraphPoly& graph_coeffs() const { return graph_; }
  const Domain& domain() const { return domain_; }
  double regularity_margin() const { return margin_; }
  bool is_swapped() const { return swapped_; }

  SurfacePatch with_domain(const Domain& d) const;
  SurfacePatch with_regularity_margin(double m) const;
  /// The same surface parametrized by (v, u); this flips the normal.
  SurfacePatch swapped() const;

  /// Canonical tag, e.g. "sphere:r=1" or "torus:R=2,r=0.5".
  std::string tag() const;

  /// x(u, v) for any scalar type closed under the jet operations.
  template <class S>
  Vec3<S> position(const S& u_in, const S& v_in) const;

 private:
  SurfacePatch(SurfaceKind k, std::array<double, 3> p, Domain d)
      : kind_(k), params_(p), domain_(d) {}

  SurfaceKind kind_;
  std::array<double, 3> params_{};
  GraphPoly graph_{};
  Domain domain_;
  double margin_ = kDefaultRegularityMargin;
  bool swapped_ = false;
};

template <class S>
Vec3<S> SurfacePatch::position(const S& u_in, const S& v_in) const {
  using std::cos;
  using std::cosh;
  using std::sin;
  const S& u = swapped_ ? v_in : u_in;
  const S& v = swapped_ ? u_in : v_in;
  const S zero = u * 0.0;
  const auto& p = params_;
  switch (kind_) {
    case SurfaceKind::plane:
      return {{u, v, zero}};
    case SurfaceKind::sphere: {
      const S su = sin(u);
      return {{su * cos(v) * p[0], su * sin(v) * p[0], cos(u) * p[0]}};
    }
    case SurfaceKind::cylinder:
      return {{cos(u) * p[0], sin(u) * p[0], v}};
    case SurfaceKind::catenoid: {
      const S ch = cosh(u * (1.0 / p[0])) * p[0];
      return {{ch * cos(v), ch * sin(v), u}};
    }
    case SurfaceKind::helicoid:
      return {{u * cos(v), u * sin(v), v * p[0]}};
    case SurfaceKind::enneper: {
      const S u2 = u * u;
      const S v2 = v * v;
      return {{u - u2 * u * (1.0 / 3.0) + u * v2,
               v - v2 * v * (1.0 / 3.0) + v * u2, u2 - v2}};
    }
    case SurfaceKind::torus: {
      const S ring = cos(v) * p[1] + p[0];
      return {{ring * cos(u), ring * sin(u), sin(v) * p[1]}};
    }
    case SurfaceKind::ellipsoid: {
      const S su = sin(u);
      return {{su * cos(v) * p[0], su * sin(v) * p[1], cos(u) * p[2]}};
    }
    case SurfaceKind::cone: {
      const double sa = std::sin(p[0]);
      const double ca = std::cos(p[0]);
      return {{v * cos(u) * sa, v * sin(u) * sa, v * ca}};
    }
    case SurfaceKind::graph: {
      std::array<S, 5> up{}, vp{};
      up[0] = zero + 1.0;
      vp[0] = zero + 1.0;
      for (int k = 1; k < 5; ++k) {
        up[k] = up[k - 1] * u;
        vp[k] = vp[k - 1] * v;
      }
      S z = zero;
      for (int n = 0; n <= 4; ++n) {
        for (int j = 0; j <= n; ++j) {
          const double c = graph_[simd::jet_index(n - j, j)];
          if (c != 0.0) z += up[n - j] * vp[j] * c;
        }
      }
      return {{u, v, z}};
    }
  }
  return {{zero, zero, zero}};
}

/// Jets of x and its first partials about a domain point.
struct PatchJets {
  Vec3<Jet2> x, xu, xv;
};

/// Throws OutOfDomain when uv lies outside the patch domain.
PatchJets eval_patch(const SurfacePatch& patch, UV uv);

struct FundamentalForms {
  Vec3<Jet2> x, xu, xv;
  Vec3<Jet2> normal;  // x_u x x_v / |x_u x x_v|
  Mat2<Jet2> g;       // first fundamental form
  Mat2<Jet2> h;       // second fundamental form w.r.t. normal
};

/// Throws DegenerateImmersion when |x_u x x_v| < regularity margin.
FundamentalForms fundamental_forms(const SurfacePatch& patch, UV uv);

/// A = g^{-1} h in the coordinate basis.
Mat2<Jet2> shape_operator(const FundamentalForms& ff);

}  // namespace nbtb
