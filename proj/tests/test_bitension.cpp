#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "nbtb/bitension.hpp"
#include "nbtb/oracle.hpp"
#include "support.hpp"

using namespace nbtb;

namespace {

Vec3d normal_at(const SurfacePatch& p, UV uv) { return value(sample_surface(p, uv).pd.normal); }

}  // namespace

TEST_CASE("bitension at t = 0: sphere, cylinder, catenoid") {
  const SurfacePatch sph = SurfacePatch::sphere(1.0);
  const UV p{1.2, -0.3};
  const Vec6d bs = bitension_t0(sample_surface(sph, p).pd);
  CHECK(norm(bs - join(normal_at(sph, p) * 8.0, {})) <= 1e-9);

  const SurfacePatch cyl = SurfacePatch::cylinder(1.0);
  const Vec6d bc = bitension_t0(sample_surface(cyl, p).pd);
  CHECK(norm(bc - join(normal_at(cyl, p) * 3.0, {})) <= 1e-9);

  const SurfacePatch cat = SurfacePatch::catenoid(1.0);
  for (int k = 0; k < 10; ++k) {
    CHECK(norm(bitension_t0(sample_surface(cat, test::random_point(cat.domain())).pd)) <= 1e-9);
  }
}

TEST_CASE("tangential part of the t = 0 bitension matches the conditions") {
  for (const auto& [name, patch] : test::catalog()) {
    for (int k = 0; k < 10; ++k) {
      const PrincipalData pd = sample_surface(patch, test::random_point(patch.domain())).pd;
      const Vec6d bt = bitension_t0(pd);
      const Vec6d te1 = join(value(pd.e1), {});
      const Vec6d te2 = join(value(pd.e2), {});
      const double a = pd.a.value(), b = pd.b.value();
      INFO(name);
      CHECK(std::abs(dot(bt, te1) + (5 * a + b) * pd.grad_trace[0]) <= 1e-10);
      CHECK(std::abs(dot(bt, te2) + (a + 5 * b) * pd.grad_trace[1]) <= 1e-10);
      CHECK(std::abs(bt[3]) + std::abs(bt[4]) + std::abs(bt[5]) == 0.0);
    }
  }
}

TEST_CASE("bitension at t = 0 equals the oracle on every catalog surface") {
  for (const auto& [name, patch] : test::catalog()) {
    for (int k = 0; k < 5; ++k) {
      const UV p = test::random_point(patch.domain());
      const Vec6d closed = bitension_t0(sample_surface(patch, p).pd);
      INFO(name);
      CHECK(norm(closed - oracle_bitension(patch, p, 0.0)) <= 1e-5);
    }
  }
}

TEST_CASE("tangential residuals") {
  for (const SurfacePatch& p : {SurfacePatch::sphere(1.0), SurfacePatch::cylinder(1.0),
                                SurfacePatch::sphere(3.0), SurfacePatch::cylinder(0.5)}) {
    const TangentialResiduals r = tangential_conditions(sample_surface(p, test::random_point(p.domain())).pd);
    CHECK(r.max_condition() <= 1e-9);
  }
  const SurfacePatch ell = SurfacePatch::ellipsoid(2.0, 1.5, 1.0);
  const TangentialResiduals re = tangential_conditions(sample_surface(ell, {0.8, 0.7}).pd);
  MESSAGE("ellipsoid (0.8, 0.7): c1 = ", re.c1, ", c2 = ", re.c2);
  CHECK(std::max(re.c1, re.c2) > 1e-3);

  const SurfacePatch cone = SurfacePatch::cone(test::kPi / 4);
  const TangentialResiduals rc = tangential_conditions(sample_surface(cone, {0.3, 1.2}).pd);
  CHECK(rc.c1 > 0.0);
}

TEST_CASE("e3 component: zero at t = 0 and on sphere and cylinder") {
  for (const auto& [name, patch] : test::catalog()) {
    const SurfaceSample s = sample_surface(patch, test::random_point(patch.domain()));
    if (!s.pd.derivatives_reliable()) continue;
    CHECK(e3_component(NBPoint(patch, s, 0.0)) == 0.0);
    CHECK(e3_component_exact(NBPoint(patch, s, 0.0)) == 0.0);
  }
  for (const SurfacePatch& p : {SurfacePatch::sphere(1.0), SurfacePatch::cylinder(1.0)}) {
    const SurfaceSample s = sample_surface(p, test::random_point(p.domain()));
    for (double t : {0.25, 1.0, 2.0}) {
      CHECK(std::abs(e3_component(NBPoint(p, s, t))) <= 1e-8);
      CHECK(std::abs(e3_component_exact(NBPoint(p, s, t))) <= 1e-8);
    }
  }
}

TEST_CASE("e3 component against the oracle") {
  struct Probe {
    const char* name;
    SurfacePatch patch;
    UV uv;
  };
  GraphPoly cubic{};
  cubic[simd::jet_index(2, 0)] = 1.0;
  cubic[simd::jet_index(0, 3)] = 1.0;
  const std::vector<Probe> probes{
      {"ellipsoid", SurfacePatch::ellipsoid(2.0, 1.5, 1.0), {0.8, 0.7}},
      {"torus", SurfacePatch::torus(2.0, 0.5), {0.3, 0.7}},
      {"cone", SurfacePatch::cone(test::kPi / 4), {0.3, 1.2}},
      {"graph", SurfacePatch::graph(cubic), {0.3, 0.5}}};
  for (const Probe& pr : probes) {
    const SurfaceSample s = sample_surface(pr.patch, pr.uv);
    for (double t : {-1.0, 0.5, 1.0, 2.0}) {
      const NBPoint np(pr.patch, s, t);
      const double oracle = oracle_e3(np);
      const double exact = e3_component_exact(np);
      const double literal = e3_component(np);
      INFO(pr.name, " t = ", t);
      CHECK(std::abs(exact - oracle) <= 1e-5 * std::max(1e-3, std::abs(oracle)));
      MESSAGE(pr.name, " t = ", t, ": oracle ", oracle, ", literal expansion ", literal,
              " (relative gap ", std::abs(literal - oracle) / std::abs(oracle), ")");
    }
  }
  // The two expansions coincide to first order in t.
  const SurfacePatch ell = SurfacePatch::ellipsoid(2.0, 1.5, 1.0);
  const SurfaceSample s = sample_surface(ell, {0.8, 0.7});
  const double t = 1e-4;
  const NBPoint np(ell, s, t);
  CHECK(std::abs(e3_component(np) - e3_component_exact(np)) <= 1e-6 * std::abs(e3_component(np)));
}

TEST_CASE("leading-term identity") {
  for (const SurfacePatch& p : {SurfacePatch::sphere(1.0), SurfacePatch::cylinder(1.0)}) {
    const LeadingTermResult r = leading_term_check(sample_surface(p, test::random_point(p.domain())).pd);
    CHECK(r.max_abs_f <= 1e-12);
    CHECK(r.remainder <= 1e-12);
  }
  for (const SurfacePatch& p : {SurfacePatch::catenoid(1.0), SurfacePatch::torus(2.0, 0.5),
                                SurfacePatch::ellipsoid(2.0, 1.5, 1.0),
                                SurfacePatch::cone(test::kPi / 4), SurfacePatch::enneper()}) {
    for (int k = 0; k < 5; ++k) {
      const PrincipalData pd = sample_surface(p, test::random_point(p.domain())).pd;
      if (pd.umbilic) continue;
      const LeadingTermResult r = leading_term_check(pd);
      INFO(p.tag());
      CHECK(r.relative_remainder <= 1e-6);
      CHECK(r.condition < 1e12);
      CHECK(r.odd_coeffs.size() == 10u);
    }
  }
}

TEST_CASE("leading-term fit reports ill-conditioning") {
  const PrincipalData pd = sample_surface(SurfacePatch::torus(2.0, 0.5), {0.3, 0.7}).pd;
  std::vector<double> clustered;
  for (int k = 0; k < 24; ++k) clustered.push_back(1.0 + 1e-4 * k);
  CHECK_THROWS_AS(leading_term_check(pd, clustered), IllConditionedFit);
  const std::vector<double> few{0.5, 1.0, 1.5};
  CHECK_THROWS_AS(leading_term_check(pd, few), IllConditionedFit);

  GraphPoly c{};
  c[simd::jet_index(2, 0)] = 0.5;
  c[simd::jet_index(0, 2)] = 0.5;
  c[simd::jet_index(3, 0)] = 0.3;
  const PrincipalData um = sample_surface(SurfacePatch::graph(c), {0.0, 0.0}).pd;
  CHECK_THROWS_AS(leading_term_check(um), UmbilicDerivativesUnavailable);
}

TEST_CASE("classify: the three reference verdicts") {
  const GridSpec grid;
  const Verdict sph = classify(SurfacePatch::sphere(1.0), grid);
  CHECK(sph.cls == SurfaceClass::round_sphere);
  CHECK(sph.curvature == doctest::Approx(-1.0));
  CHECK_FALSE(sph.biharmonic);
  CHECK(sph.max_residuals.max_condition() <= kDefaultTolerance);
  CHECK(sph.max_e3 <= kDefaultTolerance);

  const Verdict cat = classify(SurfacePatch::catenoid(1.0), grid);
  CHECK(cat.cls == SurfaceClass::minimal);
  CHECK(cat.biharmonic);

  const Verdict ell = classify(SurfacePatch::ellipsoid(2.0, 1.5, 1.0), grid);
  CHECK(ell.cls == SurfaceClass::not_tangentially_biharmonic);
  CHECK_FALSE(ell.biharmonic);
  REQUIRE_FALSE(ell.evidence.empty());
  for (const Witness& w : ell.evidence) CHECK(w.value > 10 * kDefaultTolerance);
}

TEST_CASE("classify: residuals in the hysteresis band are inconclusive") {
  // z = eps u^2 has |tau| close to 2 eps near the origin
  GraphPoly c{};
  c[simd::jet_index(2, 0)] = 2e-6;
  const Verdict v = classify(SurfacePatch::graph(c).with_domain({-0.1, 0.1, -0.1, 0.1}), GridSpec{});
  MESSAGE("max |tau| = ", v.max_tension);
  CHECK(v.cls == SurfaceClass::inconclusive);
  CHECK_FALSE(v.note.empty());
}

TEST_CASE("classify: the verdict is unchanged when u and v are swapped") {
  GridSpec grid;
  grid.n_u = 5;
  grid.n_v = 5;
  for (const auto& [name, patch] : test::catalog()) {
    const Verdict a = classify(patch, grid);
    const Verdict b = classify(patch.swapped(), grid);
    INFO(name);
    CHECK(a.cls == b.cls);
    CHECK(a.biharmonic == b.biharmonic);
  }
}

TEST_CASE("classify: bad arguments") {
  GridSpec grid;
  CHECK_THROWS_AS(classify(SurfacePatch::plane(), grid, 0.0), InputError);
  grid.fiber.clear();
  CHECK_THROWS_AS(classify(SurfacePatch::plane(), grid), InputError);
  grid = GridSpec{};
  grid.n_u = 0;
  CHECK_THROWS_AS(classify(SurfacePatch::plane(), grid), InputError);
}

TEST_CASE("grid points include the domain corners in row-major order") {
  GridSpec g;
  g.n_u = 3;
  g.n_v = 2;
  const auto pts = g.points({0.0, 1.0, -1.0, 1.0});
  REQUIRE(pts.size() == 6u);
  CHECK(pts[0].u == 0.0);
  CHECK(pts[0].v == -1.0);
  CHECK(pts[1].v == 1.0);
  CHECK(pts[2].u == 0.5);
  CHECK(pts[5].u == 1.0);
  CHECK(pts[5].v == 1.0);
}
