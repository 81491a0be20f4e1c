#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "nbtb/errors.hpp"
#include "nbtb/jet.hpp"
#include "fd_suite.hpp"
#include "support.hpp"

using namespace nbtb;
using nbtb::test::fd_partial;
using nbtb::test::uniform;

namespace {

template <class F>
void check_against_fd(const char* name, F f, int points, int& count) {
  for (int p = 0; p < points; ++p) {
    const double u0 = uniform(-0.8, 0.8);
    const double v0 = uniform(-0.8, 0.8);
    const Jet2 j = f(Jet2::variable(Var::u, u0), Jet2::variable(Var::v, v0));
    const std::function<double(double, double)> scalar = [&](double u, double v) {
      return f(u, v);
    };
    CHECK(j.value() == doctest::Approx(scalar(u0, v0)).epsilon(1e-14));
    for (int n = 1; n <= 4; ++n) {
      for (int jv = 0; jv <= n; ++jv) {
        const int iu = n - jv;
        const auto [ref, tol] = test::fd_reference(scalar, u0, v0, iu, jv);
        INFO(name, " at (", u0, ", ", v0, ") partial u^", iu, " v^", jv);
        CHECK(std::abs(j(iu, jv) - ref) <= tol * std::max(1.0, std::abs(ref)));
      }
    }
    ++count;
  }
}

Jet2 random_jet(double scale = 1.0) {
  Jet2 j;
  for (auto& c : j.coeffs()) c = uniform(-scale, scale);
  return j;
}

void check_close(const Jet2& x, const Jet2& y, double tol) {
  for (int k = 0; k < Jet2::kSize; ++k) {
    CHECK(std::abs(x.coeffs()[k] - y.coeffs()[k]) <=
          tol * std::max(1.0, std::abs(y.coeffs()[k])));
  }
}

}  // namespace

TEST_CASE("coordinate jets") {
  const Jet2 a = jet_var(Var::u, 0.5);
  CHECK(a(0, 0) == 0.5);
  CHECK(a(1, 0) == 1.0);
  CHECK(a(0, 1) == 0.0);
  const Jet2 b = jet_var(Var::v, -2.0);
  CHECK(b(0, 0) == -2.0);
  CHECK(b(0, 1) == 1.0);
  CHECK(b(1, 0) == 0.0);
  const Jet2 c = jet_var(Var::u, 0.0);
  for (int k = 0; k < Jet2::kSize; ++k) {
    CHECK(c.coeffs()[k] == (k == Jet2::index(1, 0) ? 1.0 : 0.0));
  }
}

TEST_CASE("u squared at u = 3") {
  const Jet2 u = jet_var(Var::u, 3.0);
  const Jet2 sq = jet_arith(u, u, JetOp::mul);
  CHECK(sq(0, 0) == 9.0);
  CHECK(sq(1, 0) == 6.0);
  CHECK(sq(2, 0) == 2.0);
  for (int n = 3; n <= 4; ++n) CHECK(sq(n, 0) == 0.0);
  CHECK(sq(0, 1) == 0.0);
  CHECK(sq(1, 1) == 0.0);
}

TEST_CASE("reciprocal of 1 + u stores raw derivatives") {
  const Jet2 one = Jet2::constant(1.0);
  const Jet2 den = jet_arith(one, jet_var(Var::u, 0.0), JetOp::add);
  const Jet2 r = jet_arith(one, den, JetOp::div);
  // d^n/du^n (1 + u)^-1 at 0 = (-1)^n n!
  const double expect[5] = {1.0, -1.0, 2.0, -6.0, 24.0};
  for (int n = 0; n <= 4; ++n) CHECK(r(n, 0) == doctest::Approx(expect[n]).epsilon(1e-15));
  for (int n = 1; n <= 4; ++n) {
    for (int j = 1; j <= n; ++j) CHECK(r(n - j, j) == 0.0);
  }
}

TEST_CASE("elementary function anchors") {
  const Jet2 four = Jet2::constant(4.0);
  const Jet2 s = jet_func(four, JetFunc::sqrt);
  CHECK(s.value() == 2.0);
  for (int k = 1; k < Jet2::kSize; ++k) CHECK(s.coeffs()[k] == 0.0);

  const Jet2 sn = jet_func(jet_var(Var::u, 0.0), JetFunc::sin);
  CHECK(sn(0, 0) == 0.0);
  CHECK(sn(1, 0) == 1.0);
  CHECK(sn(2, 0) == doctest::Approx(0.0));
  CHECK(sn(3, 0) == -1.0);
  CHECK(sn(4, 0) == doctest::Approx(0.0));

  const Jet2 uv = jet_var(Var::u, 0.0) + jet_var(Var::v, 0.0);
  const Jet2 e = jet_func(uv, JetFunc::exp);
  for (double c : e.coeffs()) CHECK(c == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("degenerate arguments raise typed errors") {
  const Jet2 tiny = Jet2::constant(1e-13) + jet_var(Var::u, 0.0);
  CHECK_THROWS_AS(jet_arith(Jet2::constant(1.0), tiny, JetOp::div), DivisionByNearZero);
  CHECK_THROWS_AS(jet_func(Jet2::constant(-1.0), JetFunc::sqrt), DomainError);
  CHECK_THROWS_AS(jet_func(Jet2::constant(0.0), JetFunc::sqrt), DomainError);
  CHECK_THROWS_AS(jet_func(Jet2::constant(-2.0), JetFunc::pow, 0.5), DomainError);
  CHECK_NOTHROW(jet_func(Jet2::constant(-2.0), JetFunc::pow, 3.0));
  const Jet2 cube = jet_func(jet_var(Var::u, -2.0), JetFunc::pow, 3.0);
  CHECK(cube(0, 0) == doctest::Approx(-8.0));
  CHECK(cube(1, 0) == doctest::Approx(12.0));
  CHECK(cube(2, 0) == doctest::Approx(-12.0));
  CHECK(cube(3, 0) == doctest::Approx(6.0));
  CHECK(cube(4, 0) == doctest::Approx(0.0));
}

TEST_CASE("jet coefficients match finite differences on the function suite") {
  int count = 0;
  const auto suite = test::fd_suite();
  std::apply([&](const auto&... c) { (check_against_fd(c.name, c.f, 8, count), ...); },
             suite);
  CHECK(count >= 100);
}

TEST_CASE("ring axioms hold to roundoff") {
  for (int k = 0; k < 50; ++k) {
    const Jet2 a = random_jet();
    const Jet2 b = random_jet();
    const Jet2 c = random_jet();
    check_close(a + (b - b), a, 1e-15);
    check_close(a * (b + c), a * b + a * c, 1e-13);
    check_close((a * b) * c, a * (b * c), 1e-13);
    check_close(a * b, b * a, 1e-15);
    Jet2 d = random_jet();
    d(0, 0) = 2.0 + std::abs(d(0, 0));
    check_close((a * d) / d, a, 1e-12);
  }
}

TEST_CASE("chain rule: composed functions against finite differences") {
  int count = 0;
  const std::array<JetFunc, 7> outer{JetFunc::sin, JetFunc::cos, JetFunc::exp,
                                     JetFunc::sinh, JetFunc::cosh, JetFunc::atan,
                                     JetFunc::sqrt};
  auto apply_scalar = [](JetFunc f, double x) {
    switch (f) {
      case JetFunc::sin: return std::sin(x);
      case JetFunc::cos: return std::cos(x);
      case JetFunc::exp: return std::exp(x);
      case JetFunc::sinh: return std::sinh(x);
      case JetFunc::cosh: return std::cosh(x);
      case JetFunc::atan: return std::atan(x);
      case JetFunc::sqrt: return std::sqrt(x);
      case JetFunc::pow: break;
    }
    return 0.0;
  };
  for (int k = 0; k < 105; ++k) {
    const JetFunc f = outer[k % outer.size()];
    // inner g = 1.5 + p u + q v + r u v + s v^2
    const double p = uniform(-1, 1), q = uniform(-1, 1), r = uniform(-1, 1),
                 s = uniform(-0.5, 0.5);
    auto inner = [=](const auto& u, const auto& v) {
      return 1.5 + p * u + q * v + r * u * v + s * v * v;
    };
    const double u0 = uniform(-0.5, 0.5), v0 = uniform(-0.5, 0.5);
    const Jet2 g = inner(Jet2::variable(Var::u, u0), Jet2::variable(Var::v, v0));
    const Jet2 composed = jet_func(g, f);
    const std::function<double(double, double)> scalar = [&](double u, double v) {
      return apply_scalar(f, inner(u, v));
    };
    for (int n = 1; n <= 4; ++n) {
      for (int j = 0; j <= n; ++j) {
        const double ref = n <= 2 ? fd_partial(scalar, u0, v0, n - j, j, 1e-4)
                                  : fd_partial(scalar, u0, v0, n - j, j, 1e-2, true);
        const double tol = n <= 2 ? 1e-5 : 1e-3;
        CHECK(std::abs(composed(n - j, j) - ref) <= tol * std::max(1.0, std::abs(ref)));
      }
    }
    ++count;
  }
  CHECK(count >= 100);
}

TEST_CASE("du and dv shift coefficients and drop the top order") {
  const Jet2 f = jet_func(jet_var(Var::u, 0.3) * jet_var(Var::v, -0.4), JetFunc::exp);
  const Jet2 fu = f.du();
  const Jet2 fv = f.dv();
  CHECK(fu(0, 0) == f(1, 0));
  CHECK(fu(2, 1) == f(3, 1));
  CHECK(fv(1, 2) == f(1, 3));
  for (int j = 0; j <= 4; ++j) {
    CHECK(fu(4 - j, j) == 0.0);
    CHECK(fv(4 - j, j) == 0.0);
  }
}

TEST_CASE("nested jets differentiate jet-valued expressions") {
  using JJ = BasicJet2<Jet2>;
  // f(s, u) = sin(s + u) with inner variable u and outer variable s.
  const Jet2 u = jet_var(Var::u, 0.2);
  const JJ s = JJ::variable(Var::u, Jet2::constant(0.0));
  const JJ f = sin(s + u);
  // outer first derivative = cos(u) as a jet in u
  const Jet2 d = f(1, 0);
  CHECK(d.value() == doctest::Approx(std::cos(0.2)).epsilon(1e-15));
  CHECK(d(1, 0) == doctest::Approx(-std::sin(0.2)).epsilon(1e-15));
  CHECK(f(2, 0)(1, 0) == doctest::Approx(-std::cos(0.2)).epsilon(1e-15));
}
