// SPDX-License-Identifier: Apache-2.0

#include "rlr/apps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rlr/approx.hpp"
#include "rlr/error.hpp"
#include "rlr/parallel.hpp"
#include "rlr/specfun.hpp"

namespace rlr {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool is_integer(double v) { return std::floor(v) == v; }

double rician_lambda_max(RngStream& rng, int rows, int cols, double K, double sigma_H) {
  // Canonical orientation rows >= cols; lambda_max(HH^H) is unchanged by
  // transposition, so the caller may swap n_T and n_R.
  const double los = std::sqrt(K / (K + 1.0));
  const double scatter = std::sqrt(1.0 / (K + 1.0)) * sigma_H * 0.70710678118654752440;
  ComplexMatrix h(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      h(i, j) = Complex(scatter * re, scatter * im);
    }
  }
  // u = sqrt(n_R) e1, v = sqrt(n_T) e1: ||u||^2 ||v||^2 = n_R n_T.
  h(0, 0) += los * std::sqrt(static_cast<double>(rows) * cols);
  ComplexMatrix g = h.adjoint() * h;
  g = 0.5 * (g + g.adjoint());
  return hermitian_leading_eig(g).value;
}

double chisq_or_zero(RngStream& rng, double dof) { return dof > 0.0 ? sample_chisq(rng, dof) : 0.0; }

std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(std::max(a, b)) << 32) | static_cast<std::uint64_t>(std::min(a, b));
}

}  // namespace

ScenarioSpec DetectionSpec::scenario_spec(bool null) const {
  validate();
  const double s2 = sigma * sigma;
  const double lambda = null ? 0.0 : snr * s2;
  switch (scenario) {
    case Scenario::Case1: return ScenarioSpec::case1(m, n_H, lambda, sigma);
    case Scenario::Case2: return ScenarioSpec::case2(m, n_H, lambda * n_H, sigma);
    case Scenario::Case3: return ScenarioSpec::case3(m, n_H, n_E, null ? 0.0 : snr);
    case Scenario::Case4: return ScenarioSpec::case4(m, n_H, n_E, lambda * n_H / s2);
    default: break;
  }
  throw ParameterError("DetectionSpec: scenario must be Case1..Case4, got " + to_string(scenario));
}

void DetectionSpec::validate() const {
  require(scenario == Scenario::Case1 || scenario == Scenario::Case2 || scenario == Scenario::Case3 ||
              scenario == Scenario::Case4,
          "DetectionSpec: scenario must be Case1..Case4");
  require(snr > 0.0 && std::isfinite(snr), "DetectionSpec: snr must be > 0");
  require(sigma > 0.0 && std::isfinite(sigma), "DetectionSpec: sigma must be > 0");
  require(threshold_mu >= 0.0, "DetectionSpec: threshold_mu must be >= 0");
}

EmpiricalDist detection_sample(const DetectionSpec& spec, Method method, std::size_t n_draws,
                               const RngStream& rng, int threads) {
  const ScenarioSpec s = spec.scenario_spec();
  if (method == Method::Exact) return accumulate(rng, s, n_draws, Quantity::Ell1, threads);
  return accumulate_approx(rng, s, n_draws, threads);
}

namespace {

PowerPoint survival_point(const EmpiricalDist& dist, double mu) {
  PowerPoint pt;
  pt.abscissa = mu;
  pt.power = dist.survival(mu);
  pt.mc_stderr = std::sqrt(pt.power * (1.0 - pt.power) / static_cast<double>(dist.count()));
  return pt;
}

}  // namespace

PowerEstimate detection_power(const DetectionSpec& spec, Method method, std::size_t n_draws,
                              const RngStream& rng, int threads) {
  const PowerPoint pt = survival_point(detection_sample(spec, method, n_draws, rng, threads), spec.threshold_mu);
  return {pt.power, pt.mc_stderr};
}

PowerCurve power_curve(const DetectionSpec& base, Sweep kind, const std::vector<double>& sweep, Method method,
                       std::size_t n_draws, const RngStream& rng, int threads) {
  require(!sweep.empty(), "power_curve: sweep must be nonempty");
  std::vector<double> xs = sweep;
  std::sort(xs.begin(), xs.end());
  PowerCurve curve;
  if (kind == Sweep::Threshold) {
    const EmpiricalDist dist = detection_sample(base, method, n_draws, rng, threads);
    for (double mu : xs) curve.points.push_back(survival_point(dist, mu));
    return curve;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    DetectionSpec s = base;
    s.snr = xs[i];
    const EmpiricalDist dist = detection_sample(s, method, n_draws, rng.substream(i), threads);
    PowerPoint pt = survival_point(dist, base.threshold_mu);
    pt.abscissa = xs[i];
    curve.points.push_back(pt);
  }
  return curve;
}

double calibrate_threshold(const DetectionSpec& spec, double pfa, std::size_t n_draws, const RngStream& rng,
                           int threads) {
  require(pfa > 0.0 && pfa < 1.0, "calibrate_threshold: pfa must lie in (0, 1)");
  const EmpiricalDist null = accumulate(rng, spec.scenario_spec(true), n_draws, Quantity::Ell1, threads);
  return null.quantile(1.0 - pfa);
}

void RicianSpec::validate() const {
  for (double v : {n_T, n_R, K, sigma_H, sigma_n, omega_D, mu_min}) {
    require(v > 0.0 && std::isfinite(v), "RicianSpec: all fields must be positive and finite");
  }
}

double RicianSpec::c1() const { return omega_D * sigma_H * sigma_H / (2.0 * (K + 1.0) * sigma_n * sigma_n); }

double RicianSpec::c2() const { return 2.0 * n_R * n_T * K / (sigma_H * sigma_H); }

double rician_outage(const RicianSpec& spec, OutageMethod method, std::size_t n_draws, const RngStream& rng,
                     int threads) {
  spec.validate();
  const double c1 = spec.c1();
  const double c2 = spec.c2();
  const double t = spec.mu_min / c1;
  if (method == OutageMethod::NoncentralChisq) {
    return noncentral_chisq_cdf(2.0 * (spec.n_T + spec.n_R) - 2.0, c2, t);
  }
  require(n_draws >= 1, "rician_outage: n_draws must be >= 1");
  std::vector<double> draws;
  if (method == OutageMethod::FullApprox) {
    // mu / C1 ~ X1 + X2 + X2 X3 / X1 with X1 ~ chi2_{2 n_T}(C2),
    // X2 ~ chi2_{2 n_R - 2}, X3 ~ chi2_{2 n_T - 2}.
    draws = parallel_draws(rng, n_draws, threads, [&](RngStream& r) {
      const double x1 = sample_noncentral_chisq(r, 2.0 * spec.n_T, c2);
      const double x2 = chisq_or_zero(r, 2.0 * spec.n_R - 2.0);
      const double x3 = chisq_or_zero(r, 2.0 * spec.n_T - 2.0);
      return x1 + x2 + x2 * x3 / x1;
    });
  } else {
    require(is_integer(spec.n_T) && is_integer(spec.n_R), "rician_outage: exact method needs integer antenna counts");
    const int rows = static_cast<int>(std::max(spec.n_T, spec.n_R));
    const int cols = static_cast<int>(std::min(spec.n_T, spec.n_R));
    const double scale = spec.omega_D / (spec.sigma_n * spec.sigma_n) / c1;
    draws = parallel_draws(rng.substream(pair_key(rows, cols)), n_draws, threads, [&](RngStream& r) {
      return scale * rician_lambda_max(r, rows, cols, spec.K, spec.sigma_H);
    });
  }
  const auto hits = std::count_if(draws.begin(), draws.end(), [t](double v) { return v <= t; });
  return static_cast<double>(hits) / static_cast<double>(draws.size());
}

AntennaSplit optimal_antenna_split(int N, const RicianSpec& channel, OutageMethod method, std::size_t n_draws,
                                   const RngStream& rng, int threads) {
  require(N >= 2, "optimal_antenna_split: N must be >= 2");
  AntennaSplit out;
  double best = 0.0;
  for (int nt = 1; nt < N; ++nt) {
    RicianSpec s = channel;
    s.n_T = nt;
    s.n_R = N - nt;
    const double p = rician_outage(s, method, n_draws, rng, threads);
    out.outage.push_back(p);
    const auto dist = [N](int k) { return std::abs(2 * k - N); };
    if (nt == 1 || p < best || (p == best && dist(nt) < dist(out.best_n_T))) {
      best = p;
      out.best_n_T = nt;
    }
  }
  return out;
}

}  // namespace rlr
