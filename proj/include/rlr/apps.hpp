// SPDX-License-Identifier: Apache-2.0
//
// Applications: largest-root detection power and rank-one Rician MIMO
// outage with the antenna-split optimizer.

#ifndef RLR_APPS_HPP
#define RLR_APPS_HPP

#include <cstddef>
#include <vector>

#include "rlr/exact_mc.hpp"
#include "rlr/random.hpp"

namespace rlr {

enum class Method { Approx, Exact };

/// Case1: Gaussian signal, known noise (lambda = snr sigma^2).
/// Case2: constant-modulus signal, known noise (omega = lambda n_H).
/// Case3: Gaussian signal, estimated noise (lambda = snr, whitened).
/// Case4: constant-modulus signal, estimated noise (omega = lambda n_H / sigma^2).
/// For Case2/Case4, lambda = snr sigma^2.
struct DetectionSpec {
  Scenario scenario = Scenario::Case1;
  int m = 2;
  int n_H = 1;
  int n_E = 0;
  double snr = 1.0;
  double sigma = 1.0;
  double threshold_mu = 1.0;

  /// Scenario under H1 (or under H0 when `null` is set: no signal).
  ScenarioSpec scenario_spec(bool null = false) const;
  void validate() const;
};

struct PowerEstimate {
  double power = 0.0;
  double stderr_ = 0.0;
};

struct PowerPoint {
  double abscissa = 0.0;
  double power = 0.0;
  double mc_stderr = 0.0;
};

struct PowerCurve {
  std::vector<PowerPoint> points;
};

/// Sorted H1 draws of the largest root for `spec` (threshold ignored).
EmpiricalDist detection_sample(const DetectionSpec& spec, Method method, std::size_t n_draws,
                               const RngStream& rng, int threads = 1);

/// Pr[ell_1 > mu] by Monte Carlo with its binomial standard error.
PowerEstimate detection_power(const DetectionSpec& spec, Method method, std::size_t n_draws,
                              const RngStream& rng, int threads = 1);

enum class Sweep { Threshold, Snr };

/// Threshold sweeps share one sample; SNR sweeps use substream i for point i.
PowerCurve power_curve(const DetectionSpec& base, Sweep kind, const std::vector<double>& sweep, Method method,
                       std::size_t n_draws, const RngStream& rng, int threads = 1);

/// Threshold whose exact H0 false-alarm rate is `pfa` (empirical quantile).
double calibrate_threshold(const DetectionSpec& spec, double pfa, std::size_t n_draws, const RngStream& rng,
                           int threads = 1);

struct RicianSpec {
  double n_T = 1.0;
  double n_R = 1.0;
  double K = 1.0;
  double sigma_H = 1.0;
  double sigma_n = 1.0;
  double omega_D = 1.0;
  double mu_min = 1.0;

  void validate() const;
  /// Omega_D sigma_H^2 / (2 (K + 1) sigma_n^2)
  double c1() const;
  /// 2 n_R n_T K / sigma_H^2
  double c2() const;
};

enum class OutageMethod { NoncentralChisq, FullApprox, Exact };

/// Pr(Omega_D / sigma_n^2 lambda_max(H H^H) <= mu_min). MC methods use
/// n_draws draws from `rng`; NoncentralChisq is analytic.
double rician_outage(const RicianSpec& spec, OutageMethod method, std::size_t n_draws, const RngStream& rng,
                     int threads = 1);

struct AntennaSplit {
  int best_n_T = 1;
  std::vector<double> outage;  ///< outage[i] is for n_T = i + 1
};

/// argmin over n_T in 1..N-1 of the outage with n_R = N - n_T; ties go to
/// the split closest to N/2, then to the smaller n_T. The exact method uses
/// the same draws for (a, b) and (b, a), which have the same law.
AntennaSplit optimal_antenna_split(int N, const RicianSpec& channel, OutageMethod method, std::size_t n_draws,
                                   const RngStream& rng, int threads = 1);

}  // namespace rlr

#endif  // RLR_APPS_HPP
