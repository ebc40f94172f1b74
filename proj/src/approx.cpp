// SPDX-License-Identifier: Apache-2.0

#include "rlr/approx.hpp"

#include <cmath>
#include <string>

#include "rlr/error.hpp"
#include "rlr/parallel.hpp"
#include "rlr/specfun.hpp"

namespace rlr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

// chi2_0 is the point mass at 0 (n = 1 leaves C with no degrees of freedom).
double chisq_or_zero(RngStream& rng, double dof) { return dof > 0.0 ? sample_chisq(rng, dof) : 0.0; }

void check_single(const char* who, int m, int n, double sigma) {
  require(m >= 2, std::string(who) + ": m must be >= 2");
  require(n >= 1, std::string(who) + ": n must be >= 1");
  require(sigma > 0.0 && std::isfinite(sigma), std::string(who) + ": sigma must be > 0");
}

// Moments of A (possibly noncentral) needed by the representation.
struct AMoments {
  double m1, m2, inv1, inv2;
};

AMoments chisq_moments(double k, double nc) {
  AMoments a{};
  a.m1 = k + nc;
  a.m2 = 2.0 * (k + 2.0 * nc) + a.m1 * a.m1;
  // E[1/chi2_j] = 1/(j-2), E[1/chi2_j^2] = 1/((j-2)(j-4)), averaged over
  // the Poisson(nc/2) dof shift.
  a.inv1 = poisson_mixture(0.5 * nc, [k](std::int64_t j) { return 1.0 / (k + 2.0 * j - 2.0); });
  a.inv2 = poisson_mixture(0.5 * nc, [k](std::int64_t j) {
    const double d = k + 2.0 * j;
    return 1.0 / ((d - 2.0) * (d - 4.0));
  });
  return a;
}

// X = alpha A + beta B + gamma BC/A with A, B, C independent.
MomentPair representation_moments(double alpha, double beta, double gamma, const AMoments& a, double kb,
                                  double kc) {
  const double b1 = kb, b2 = kb * (kb + 2.0);
  const double c1 = kc, c2 = kc * (kc + 2.0);
  const double mean = alpha * a.m1 + beta * b1 + gamma * b1 * c1 * a.inv1;
  const double second = alpha * alpha * a.m2 + beta * beta * b2 + gamma * gamma * b2 * c2 * a.inv2 +
                        2.0 * alpha * beta * a.m1 * b1 + 2.0 * alpha * gamma * b1 * c1 +
                        2.0 * beta * gamma * b2 * c1 * a.inv1;
  MomentPair out;
  out.mean = mean;
  out.variance = std::max(0.0, second - mean * mean);
  return out;
}

}  // namespace

FMixtureParams FMixtureParams::case34(int m, int n_H, int n_E) {
  require(m >= 2 && n_H >= 1, "FMixtureParams::case34: requires m >= 2, n_H >= 1");
  require(n_E > m + 1, "FMixtureParams::case34: requires n_E > m + 1");
  FMixtureParams f;
  f.a1 = static_cast<double>(n_H) / (n_E - m + 1);
  f.a2 = static_cast<double>(m - 1) / (n_E - m + 2);
  f.a3 = static_cast<double>(m - 1) / (static_cast<double>(n_E - m) * (n_E - m - 1));
  f.b1 = 2.0 * n_H;
  f.b2 = 2.0 * m - 2.0;
  f.c1 = 2.0 * n_E - 2.0 * m + 2.0;
  f.c2 = 2.0 * n_E - 2.0 * m + 4.0;
  return f;
}

FMixtureParams FMixtureParams::case5(int p, int q, int n) {
  require(p >= 1 && p <= q, "FMixtureParams::case5: requires 1 <= p <= q");
  const int nu = n - p - q;
  require(nu > 1, "FMixtureParams::case5: requires nu = n - p - q > 1");
  FMixtureParams f;
  f.a1 = static_cast<double>(q) / (nu + 1);
  f.a2 = static_cast<double>(p - 1) / (nu + 2);
  f.a3 = static_cast<double>(p - 1) / (static_cast<double>(nu) * (nu - 1));
  f.b1 = 2.0 * q;
  f.b2 = 2.0 * p - 2.0;
  f.c1 = 2.0 * (nu + 1);
  f.c2 = 2.0 * (nu + 2);
  return f;
}

double approx_case1(RngStream& rng, int m, int n, double lambda, double sigma) {
  check_single("approx_case1", m, n, sigma);
  require(lambda >= 0.0 && std::isfinite(lambda), "approx_case1: lambda must be >= 0");
  const double s2 = sigma * sigma;
  const double a = sample_chisq(rng, 2.0 * n);
  const double b = sample_chisq(rng, 2.0 * m - 2.0);
  const double c = chisq_or_zero(rng, 2.0 * n - 2.0);
  return 0.5 * (lambda + s2) * a + 0.5 * s2 * b + s2 * s2 / (2.0 * (lambda + s2)) * b * c / a;
}

double approx_case2(RngStream& rng, int m, int n, double omega, double sigma) {
  check_single("approx_case2", m, n, sigma);
  require(omega >= 0.0 && std::isfinite(omega), "approx_case2: omega must be >= 0");
  const double s2 = sigma * sigma;
  const double a = sample_noncentral_chisq(rng, 2.0 * n, 2.0 * omega / s2);
  const double b = sample_chisq(rng, 2.0 * m - 2.0);
  const double c = chisq_or_zero(rng, 2.0 * n - 2.0);
  return 0.5 * s2 * (a + b + b * c / a);
}

double approx_case34(RngStream& rng, const FMixtureParams& params, double scale, double noncentrality) {
  require(scale >= 0.0 && std::isfinite(scale), "approx_case34: scale must be >= 0");
  require(noncentrality >= 0.0, "approx_case34: noncentrality must be >= 0");
  const double f1 = sample_f(rng, params.b1, params.c1, noncentrality);
  // p = 1 or m = 1 style params have b2 = 0: the second term vanishes.
  const double f2 = params.b2 > 0.0 ? sample_f(rng, params.b2, params.c2) : 0.0;
  return scale * params.a1 * f1 + params.a2 * f2 + params.a3;
}

double sample_fchi(RngStream& rng, double b1, double c1, double c, double dof_z) {
  require(c >= 0.0 && std::isfinite(c), "sample_fchi: c must be >= 0");
  require(dof_z > 0.0, "sample_fchi: dof_z must be > 0");
  const double z = c * sample_chisq(rng, dof_z);
  return sample_f(rng, b1, c1, z);
}

double approx_case5(RngStream& rng, int p, int q, int n, double rho) {
  const FMixtureParams f = FMixtureParams::case5(p, q, n);
  require(rho >= 0.0 && rho < 1.0, "approx_case5: rho must lie in [0, 1)");
  const double c = rho * rho / (1.0 - rho * rho);
  const double x = sample_fchi(rng, f.b1, f.c1, c, 2.0 * n);
  const double f2 = f.b2 > 0.0 ? sample_f(rng, f.b2, f.c2) : 0.0;
  return f.a1 * x + f.a2 * f2 + f.a3;
}

double approx_overlap(RngStream& rng, int m, int n, OverlapSpike kind, double spike, double sigma) {
  check_single("approx_overlap", m, n, sigma);
  require(spike >= 0.0 && std::isfinite(spike), "approx_overlap: spike must be >= 0");
  const double s2 = sigma * sigma;
  const double a = sample_chisq(rng, 2.0 * m - 2.0);
  const double c = chisq_or_zero(rng, 2.0 * n - 2.0);
  if (kind == OverlapSpike::Lambda) {
    const double b = sample_chisq(rng, 2.0 * n);
    const double r = s2 / (spike + s2);
    return 1.0 / (1.0 + r * a / b + 2.0 * r * r * a * c / (b * b));
  }
  const double b = sample_noncentral_chisq(rng, 2.0 * n, 2.0 * spike / s2);
  return 1.0 / (1.0 + a / b + 2.0 * a * c / (b * b));
}

double draw_approx(RngStream& rng, const ScenarioSpec& spec) {
  switch (spec.tag) {
    case Scenario::Case1: return approx_case1(rng, spec.m, spec.n_H, spec.lambda, spec.sigma);
    case Scenario::Case2: return approx_case2(rng, spec.m, spec.n_H, spec.omega, spec.sigma);
    case Scenario::Case3:
      return approx_case34(rng, FMixtureParams::case34(spec.m, spec.n_H, spec.n_E), 1.0 + spec.lambda, 0.0);
    case Scenario::Case4:
      return approx_case34(rng, FMixtureParams::case34(spec.m, spec.n_H, spec.n_E), 1.0, 2.0 * spec.omega);
    case Scenario::Case5Canonical: return approx_case5(rng, spec.p, spec.q, spec.n, spec.rho);
    case Scenario::Overlap1:
      return approx_overlap(rng, spec.m, spec.n_H, OverlapSpike::Lambda, spec.lambda, spec.sigma);
    case Scenario::Overlap2:
      return approx_overlap(rng, spec.m, spec.n_H, OverlapSpike::Omega, spec.omega, spec.sigma);
  }
  throw ParameterError("draw_approx: unknown scenario");
}

std::vector<double> approx_draws(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                                 int threads) {
  require(n_draws >= 1, "accumulate_approx: n_draws must be >= 1");
  spec.validate();
  return parallel_draws(rng, n_draws, threads, [&](RngStream& r) { return draw_approx(r, spec); });
}

EmpiricalDist accumulate_approx(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                                int threads) {
  return EmpiricalDist(approx_draws(rng, spec, n_draws, threads));
}

MomentPair case_moments(const ScenarioSpec& spec, MomentSource source) {
  spec.validate();
  const double n = spec.n_H;
  const double m = spec.m;
  const double s2 = spec.sigma * spec.sigma;
  const double s4 = s2 * s2;
  if (spec.tag == Scenario::Case1) {
    const double lam = spec.lambda;
    if (source == MomentSource::Printed) {
      require(spec.n_H > 3, "case_moments: printed Case1 variance requires n > 3");
      MomentPair out;
      out.mean = n * lam + (n + m - 1.0) * s2 + s4 / (lam + s2) * (m - 1.0);
      out.variance = 2.0 * (lam * n + s2 * (n + m - 1.0) + s4 / (lam + s2) * (m - 1.0) / ((n - 1.0) * (n - 2.0)));
      return out;
    }
    require(spec.n_H >= 3, "case_moments: representation moments require n >= 3");
    return representation_moments(0.5 * (lam + s2), 0.5 * s2, s4 / (2.0 * (lam + s2)), chisq_moments(2.0 * n, 0.0),
                                   2.0 * m - 2.0, 2.0 * n - 2.0);
  }
  if (spec.tag == Scenario::Case2) {
    const double w = spec.omega;
    if (source == MomentSource::Printed) {
      require(spec.n_H > 2, "case_moments: printed Case2 moments require n > 2");
      require(w > 0.0, "case_moments: printed Case2 variance requires omega > 0");
      MomentPair out;
      out.mean = (n + m - 1.0) * s2 + w + (n - 1.0) * (m - 1.0) / (s2 * (n - 1.0) + w);
      const double t = n + s2 / w;
      out.variance = 8.0 * w + 4.0 * s2 * (n + m - 1.0 + (n - 1.0) * (m - 1.0) / (2.0 * (t - 1.0) * (t - 1.0) * (t - 2.0)));
      return out;
    }
    require(spec.n_H >= 3, "case_moments: representation moments require n >= 3");
    return representation_moments(0.5 * s2, 0.5 * s2, 0.5 * s2, chisq_moments(2.0 * n, 2.0 * w / s2), 2.0 * m - 2.0,
                                  2.0 * n - 2.0);
  }
  throw ParameterError("case_moments: only Case1 and Case2 have moment formulas, got " + to_string(spec.tag));
}

}  // namespace rlr
