#include "nbtb/bitension.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "nbtb/oracle.hpp"
#include "nbtb/parallel.hpp"

namespace nbtb {
namespace {

constexpr int kFitTerms = 10;  // odd powers t, t^3, ..., t^19
constexpr double kMaxFitCondition = 1e12;

double binomial4(int k) {
  constexpr double c[5] = {1.0, 4.0, 6.0, 4.0, 1.0};
  return c[k];
}

// Distance from num to the multiples of den, num and den by ascending power.
// Least squares keeps this stable when the top coefficient of den is tiny.
double divisibility_residual(const std::vector<double>& num, const std::vector<double>& den) {
  const Eigen::Index rows = static_cast<Eigen::Index>(num.size());
  const Eigen::Index cols = rows - static_cast<Eigen::Index>(den.size()) + 1;
  if (cols <= 0) return Eigen::Map<const Eigen::VectorXd>(num.data(), rows).norm();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index q = 0; q < cols; ++q) {
    for (std::size_t j = 0; j < den.size(); ++j) M(q + static_cast<Eigen::Index>(j), q) = den[j];
  }
  const Eigen::Map<const Eigen::VectorXd> r(num.data(), rows);
  const Eigen::VectorXd quot = M.colPivHouseholderQr().solve(r);
  return (r - M * quot).norm();
}

}  // namespace

double TangentialResiduals::max_condition() const {
  return std::max({c1, c2, c3, c4});
}

Vec6d bitension_t0(const PrincipalData& pd) {
  const double a = pd.a.value();
  const double b = pd.b.value();
  const Vec3d e1 = value(pd.e1);
  const Vec3d e2 = value(pd.e2);
  const Vec3d N = value(pd.normal);
  const double normal_part =
      pd.lap_trace + (a + b) * (3.0 * a * a - 2.0 * a * b + 3.0 * b * b);
  const Vec3d first = N * normal_part + e1 * ((5.0 * a + b) * pd.grad_trace[0]) +
                      e2 * ((a + 5.0 * b) * pd.grad_trace[1]);
  return -join(first, Vec3d{});
}

TangentialResiduals tangential_conditions(const PrincipalData& pd) {
  const double a = pd.a.value();
  const double b = pd.b.value();
  TangentialResiduals r;
  r.c1 = std::abs((5.0 * a + b) * pd.grad_trace[0]);
  r.c2 = std::abs((a + 5.0 * b) * pd.grad_trace[1]);
  if (!pd.umbilic) {
    const double gap2 = (a - b) * (a - b);
    r.c3 = std::abs(gap2 * pd.d1a.value());
    r.c4 = std::abs(gap2 * pd.d2b.value());
  }
  r.bitension_t0 = bitension_t0(pd);
  return r;
}

double e3_component(const NBPoint& np) { return e3_component(np.pd(), np.t()); }

double e3_component(const PrincipalData& pd, double t) {
  const PQJets pq = pq_jets(pd, t);  // throws at unreliable umbilics
  if (pd.umbilic || t == 0.0) return 0.0;

  const double a = pd.a.value();
  const double b = pd.b.value();
  const double al = 1.0 + t * t * a * a;
  const double be = 1.0 + t * t * b * b;
  const double P = pq.P.value();
  const double Q = pq.Q.value();
  const double e1P = directional(pd, 1, pq.P).value();
  const double e2Q = directional(pd, 2, pq.Q).value();
  const double omega12_e1 = pd.omega12_e1;
  const double omega21_e2 = -pd.omega12_e2;
  const auto& acc = pd.accel_normal;

  const double first = 2.0 * e1P * a - omega12_e1 * Q * b + P * acc[0][0] +
                       Q * acc[0][1];
  const double second = 2.0 * e2Q * b - omega21_e2 * P * a + P * acc[1][0] +
                        Q * acc[1][1];
  return -t / al * first - t / be * second;
}

double e3_component_exact(const NBPoint& np) {
  return e3_component_exact(np.pd(), np.t());
}

double e3_component_exact(const PrincipalData& pd, double t) {
  const double literal = e3_component(pd, t);
  if (pd.umbilic || t == 0.0) return literal;

  // Terms from the t-dependence of the fiber metric in the connection.
  const double a = pd.a.value();
  const double b = pd.b.value();
  const double al = 1.0 + t * t * a * a;
  const double be = 1.0 + t * t * b * b;
  const PQJets pq = pq_jets(pd, t);
  const double P = pq.P.value();
  const double Q = pq.Q.value();
  const double t2 = t * t;
  const double along_e1 = t2 * a * pd.d1a.value() / (al * al) -
                          t2 * b * pd.d1b.value() / (al * be) -
                          (1.0 / al - 1.0 / be) * pd.omega12_e2;
  const double along_e2 = (1.0 / be - 1.0 / al) * pd.omega12_e1 -
                          t2 * a * pd.d2a.value() / (al * be) +
                          t2 * b * pd.d2b.value() / (be * be);
  return literal + P * t * a * along_e1 + Q * t * b * along_e2;
}

std::vector<double> default_leading_term_samples() {
  std::vector<double> t(24);
  for (int k = 0; k < 24; ++k) t[k] = 0.1 + 0.1 * k;
  return t;
}

LeadingTermResult leading_term_check(const PrincipalData& pd) {
  const std::vector<double> t = default_leading_term_samples();
  return leading_term_check(pd, t);
}

LeadingTermResult leading_term_check(const PrincipalData& pd,
                                     std::span<const double> t_samples) {
  if (!pd.derivatives_reliable()) {
    throw UmbilicDerivativesUnavailable("leading-term check at an umbilic");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(t_samples.size());
  if (n < kFitTerms) throw IllConditionedFit("too few fiber samples for fit");

  const double a = pd.a.value();
  const double b = pd.b.value();
  const double a2 = a * a;
  const double b2 = b * b;
  const double lead_a = 8.0 * a2 * pd.d1a.value() * pd.d1a.value();
  const double lead_b = 8.0 * b2 * pd.d2b.value() * pd.d2b.value();

  // Fit in s = t / t_max so the columns stay comparable in size.
  double t_max = 0.0;
  for (double t : t_samples) t_max = std::max(t_max, std::abs(t));
  if (!(t_max > 0.0)) throw IllConditionedFit("fiber samples are all zero");

  Eigen::MatrixXd V(n, kFitTerms);
  Eigen::VectorXd F(n);
  LeadingTermResult out;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = t_samples[k];
    const double al = 1.0 + t * t * a2;
    const double be = 1.0 + t * t * b2;
    F(k) = std::pow(al * be, 4) * e3_component(pd, t);
    out.max_abs_f = std::max(out.max_abs_f, std::abs(F(k)));
    const double lead = t * t * t * (lead_a * std::pow(be, 4) + lead_b * std::pow(al, 4));
    scale = std::max({scale, std::abs(F(k)), std::abs(lead)});
    const double s = t / t_max;
    double p = s;
    for (int m = 0; m < kFitTerms; ++m) {
      V(k, m) = p;
      p *= s * s;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  out.condition = sv(0) / sv(sv.size() - 1);
  if (!(out.condition <= kMaxFitCondition)) {
    throw IllConditionedFit("fiber-sample Vandermonde condition exceeds 1e12");
  }
  const Eigen::VectorXd c = svd.solve(F);

  // Everything below is in powers of s; T^k converts t^k.
  auto T = [&](int k) { return std::pow(t_max, k); };
  out.odd_coeffs.resize(kFitTerms);
  for (int m = 0; m < kFitTerms; ++m) out.odd_coeffs[m] = c(m) / T(2 * m + 1);

  // F - 8 (1+t^2b^2)^4 t^3 a^2 (e1 a)^2 - 8 (1+t^2a^2)^4 t^3 b^2 (e2 b)^2.
  std::vector<double> rest(2 * kFitTerms, 0.0);
  for (int m = 0; m < kFitTerms; ++m) rest[2 * m + 1] = c(m);
  for (int k = 0; k <= 4; ++k) {
    rest[3 + 2 * k] -= binomial4(k) * T(3 + 2 * k) *
                       (lead_a * std::pow(b2, k) + lead_b * std::pow(a2, k));
  }

  out.remainder = divisibility_residual(rest, {1.0, 0.0, (a2 + b2) * T(2), 0.0, a2 * b2 * T(4)});
  out.relative_remainder = scale > 1e-12 ? out.remainder / scale : out.remainder;
  return out;
}

const char* class_name(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::minimal:
      return "Minimal";
    case SurfaceClass::round_sphere:
      return "RoundSphere";
    case SurfaceClass::circular_cylinder:
      return "CircularCylinder";
    case SurfaceClass::not_tangentially_biharmonic:
      return "NotTangentiallyBiharmonic";
    case SurfaceClass::inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<UV> GridSpec::points(const Domain& d) const {
  if (n_u < 1 || n_v < 1) throw InputError("grid must be non-empty");
  auto lin = [](double lo, double hi, int n, int i) {
    return n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
  };
  std::vector<UV> pts;
  pts.reserve(static_cast<std::size_t>(n_u) * n_v);
  for (int i = 0; i < n_u; ++i) {
    for (int j = 0; j < n_v; ++j) pts.push_back({lin(d.u0, d.u1, n_u, i), lin(d.v0, d.v1, n_v, j)});
  }
  return pts;
}

namespace {

struct PointResult {
  UV uv;
  double a = 0.0, b = 0.0;
  bool umbilic = false;
  bool reliable = true;
  TangentialResiduals res;
  double max_tension = 0.0;
  double max_tension_t = 0.0;
  double max_e3 = 0.0;
  double max_e3_t = 0.0;
};

struct Tracker {
  double value = 0.0;
  std::optional<Witness> where;
  void offer(double v, UV uv, double t, const char* name) {
    if (v > value || !where) {
      value = std::max(value, v);
      where = Witness{uv, t, name, v};
    }
  }
};

}  // namespace

Verdict classify(const SurfacePatch& patch, const GridSpec& grid, double tol) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const std::vector<UV> pts = grid.points(patch.domain());
  if (grid.fiber.empty()) throw InputError("fiber sample list is empty");

  std::vector<PointResult> results(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const SurfaceSample s = sample_surface(patch, pts[i]);
    PointResult& r = results[i];
    r.uv = pts[i];
    r.a = s.pd.a.value();
    r.b = s.pd.b.value();
    r.umbilic = s.pd.umbilic;
    r.reliable = s.pd.derivatives_reliable();
    r.res = tangential_conditions(s.pd);
    if (!r.reliable) return;
    for (double t : grid.fiber) {
      const NBPoint np(patch, s, t, grid.fiber_bound);
      const double tn = norm(tension(np).tau);
      if (tn >= r.max_tension) {
        r.max_tension = tn;
        r.max_tension_t = t;
      }
      const double e3 = std::abs(e3_component_exact(np));
      if (e3 >= r.max_e3) {
        r.max_e3 = e3;
        r.max_e3_t = t;
      }
    }
  });

  Verdict v;
  Tracker tension_w, c1, c2, c3, c4, e3;
  bool all_umbilic = true;
  double a_lo = INFINITY, a_hi = -INFINITY, a_sum = 0.0;
  double flat_max = 0.0;  // max over points of min(|a|, |b|)
  double k_lo = INFINITY, k_hi = -INFINITY, k_sum = 0.0;
  double bt0_max = 0.0;
  for (const PointResult& r : results) {
    if (!r.reliable) {
      ++v.skipped_umbilics;
    } else {
      tension_w.offer(r.max_tension, r.uv, r.max_tension_t, "tension");
      e3.offer(r.max_e3, r.uv, r.max_e3_t, "e3comp");
    }
    c1.offer(r.res.c1, r.uv, 0.0, "c1");
    c2.offer(r.res.c2, r.uv, 0.0, "c2");
    c3.offer(r.res.c3, r.uv, 0.0, "c3");
    c4.offer(r.res.c4, r.uv, 0.0, "c4");
    all_umbilic = all_umbilic && r.umbilic;
    a_lo = std::min(a_lo, r.a);
    a_hi = std::max(a_hi, r.a);
    a_sum += r.a;
    const bool a_flat = std::abs(r.a) <= std::abs(r.b);
    const double k = a_flat ? r.b : r.a;
    flat_max = std::max(flat_max, a_flat ? std::abs(r.a) : std::abs(r.b));
    k_lo = std::min(k_lo, k);
    k_hi = std::max(k_hi, k);
    k_sum += k;
    bt0_max = std::max(bt0_max, norm(r.res.bitension_t0));
  }
  const double count = static_cast<double>(results.size());
  v.max_tension = tension_w.value;
  v.max_residuals.c1 = c1.value;
  v.max_residuals.c2 = c2.value;
  v.max_residuals.c3 = c3.value;
  v.max_residuals.c4 = c4.value;
  v.max_e3 = e3.value;
  v.max_residuals.e3comp = {e3.value};
  if (v.skipped_umbilics > 0) {
    v.note = "skipped " + std::to_string(v.skipped_umbilics) +
             " umbilic sample(s) without curvature derivatives";
  }

  const double residual = std::max(v.max_residuals.max_condition(), v.max_e3);
  auto record_failures = [&](double threshold) {
    for (Tracker* tr : {&c1, &c2, &c3, &c4, &e3}) {
      if (tr->where && tr->value > threshold) v.evidence.push_back(*tr->where);
    }
  };

  if (v.max_tension <= tol && v.skipped_umbilics < static_cast<int>(count)) {
    v.cls = SurfaceClass::minimal;
  } else if (v.max_tension <= kHysteresis * tol) {
    v.cls = SurfaceClass::inconclusive;
    if (tension_w.where) v.evidence.push_back(*tension_w.where);
    v.note = "tension inside the hysteresis band";
  } else {
    const double a_mean = a_sum / count;
    const double k_mean = k_sum / count;
    const bool sphere_like =
        all_umbilic && (a_hi - a_lo) <= tol * std::max(1.0, std::abs(a_mean));
    const bool cylinder_like =
        !all_umbilic && flat_max <= tol &&
        (k_hi - k_lo) <= tol * std::max(1.0, std::abs(k_mean));
    if (sphere_like || cylinder_like) {
      if (residual <= tol) {
        v.cls = sphere_like ? SurfaceClass::round_sphere
                            : SurfaceClass::circular_cylinder;
        v.curvature = sphere_like ? a_mean : k_mean;
      } else {
        v.cls = SurfaceClass::inconclusive;
        v.note = "constant curvature but tangential residuals above tolerance";
        record_failures(tol);
      }
    } else if (residual > kHysteresis * tol) {
      v.cls = SurfaceClass::not_tangentially_biharmonic;
      record_failures(kHysteresis * tol);
    } else if (residual > tol) {
      v.cls = SurfaceClass::inconclusive;
      v.note = "tangential residuals inside the hysteresis band";
      record_failures(tol);
    } else {
      v.cls = SurfaceClass::inconclusive;
      v.note = "residuals vanish but curvature is not constant on the grid";
    }
  }

  // Full bitension: t = 0 from the closed form, t != 0 from the oracle.
  v.max_bitension = bt0_max;
  if (bt0_max <= tol) {
    std::vector<double> fiber_nonzero;
    for (double t : grid.fiber) {
      if (t != 0.0) fiber_nonzero.push_back(t);
    }
    std::vector<double> worst(pts.size(), 0.0);
    parallel_for(pts.size(), [&](std::size_t i) {
      for (double t : fiber_nonzero) {
        worst[i] = std::max(worst[i], norm(oracle_bitension(patch, pts[i], t)));
        if (worst[i] > tol) return;
      }
    });
    for (double w : worst) v.max_bitension = std::max(v.max_bitension, w);
  }
  v.biharmonic = v.max_bitension <= tol;
  if (v.biharmonic && v.cls != SurfaceClass::minimal) {
    v.note += v.note.empty() ? "" : "; ";
    v.note += "biharmonic but not classified minimal";
  }
  return v;
}

}  // namespace nbtb
