// SPDX-License-Identifier: Apache-2.0
//
// Stochastic approximations to the largest root and the eigenvector overlap:
// samplers built from independent chi-squared and F variates, plus analytic
// moments for the single-Wishart cases.

#ifndef RLR_APPROX_HPP
#define RLR_APPROX_HPP

#include <cstddef>
#include <vector>

#include "rlr/empirical.hpp"
#include "rlr/exact_mc.hpp"
#include "rlr/random.hpp"

namespace rlr {

/// ell ~ scale a1 F(b1, c1) + a2 F(b2, c2) + a3.
struct FMixtureParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  /// Double-Wishart coefficients; requires n_E > m + 1.
  static FMixtureParams case34(int m, int n_H, int n_E);
  /// Canonical-correlation coefficients with nu = n - p - q > 1.
  static FMixtureParams case5(int p, int q, int n);
};

/// (lambda + s^2)/2 A + s^2/2 B + s^4/(2(lambda + s^2)) BC/A with
/// A ~ chi2_{2n}, B ~ chi2_{2m-2}, C ~ chi2_{2n-2}.
double approx_case1(RngStream& rng, int m, int n, double lambda, double sigma);

/// s^2/2 [A + B + BC/A] with A ~ chi2_{2n}(2 omega / s^2).
double approx_case2(RngStream& rng, int m, int n, double omega, double sigma);

/// scale a1 F_{b1,c1}(noncentrality) + a2 F_{b2,c2} + a3.
double approx_case34(RngStream& rng, const FMixtureParams& params, double scale, double noncentrality);

/// (chi2_{b1}(Z)/b1) / (chi2_{c1}/c1) with Z = c chi2_{dof_z}: the F^chi law.
double sample_fchi(RngStream& rng, double b1, double c1, double c, double dof_z);

/// a1 F^chi_{b1,c1}(rho^2/(1-rho^2), 2n) + a2 F_{b2,c2} + a3.
double approx_case5(RngStream& rng, int p, int q, int n, double rho);

enum class OverlapSpike { Lambda, Omega };

/// Overlap law for a covariance spike (Lambda) or a mean spike (Omega).
double approx_overlap(RngStream& rng, int m, int n, OverlapSpike kind, double spike, double sigma);

/// One approximation draw for any scenario (overlap tags give R).
double draw_approx(RngStream& rng, const ScenarioSpec& spec);

std::vector<double> approx_draws(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                                 int threads = 1);

EmpiricalDist accumulate_approx(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                                int threads = 1);

struct MomentPair {
  double mean = 0.0;
  double variance = 0.0;
};

/// Printed: the closed-form remarks evaluated as written. Representation:
/// exact moments of the Case1/Case2 stochastic representations.
enum class MomentSource { Printed, Representation };

MomentPair case_moments(const ScenarioSpec& spec, MomentSource source);

}  // namespace rlr

#endif  // RLR_APPROX_HPP
