// SPDX-License-Identifier: Apache-2.0
//
// Special functions and distribution functions: log-gamma, regularized
// incomplete gamma and beta, central and noncentral chi-squared and F CDFs,
// the Gauss hypergeometric series and the density of the F^chi mixture law.

#ifndef RLR_SPECFUN_HPP
#define RLR_SPECFUN_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "rlr/error.hpp"

namespace rlr {

/// Poisson tail mass below which mixture sums are truncated.
inline constexpr double kTailMass = 1e-13;
/// Relative term size at which the 2F1 power series stops.
inline constexpr double kSeriesRelTol = 1e-15;
/// Hard cap on 2F1 series terms.
inline constexpr std::int64_t kMaxSeriesTerms = 1'000'000;
/// Closest |z| to 1 accepted by the raw 2F1 series.
inline constexpr double kMaxHypergeometricArg = 1.0 - 1e-10;

struct DensityEval {
  double x = 0.0;
  double value = 0.0;
  double est_error = 0.0;
};

struct SeriesEval {
  double value = 0.0;
  double est_error = 0.0;
  std::int64_t terms = 0;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);
/// ln B(a, b).
double log_beta(double a, double b);

/// Regularized lower incomplete gamma P(shape, x).
double reg_inc_gamma_P(double shape, double x);
/// Regularized upper incomplete gamma Q(shape, x) = 1 - P(shape, x), computed
/// without cancellation.
double reg_inc_gamma_Q(double shape, double x);

/// ln of x^a e^{-x} / Gamma(a + 1), accurate for large a (no cancellation
/// between a ln x and ln Gamma(a + 1)).
double log_gamma_density_term(double a, double x);

/// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

double chisq_cdf(double dof, double t);

/// CDF of chi^2_dof(noncentrality) at t, summed over Poisson weights from the
/// modal term outward until the remaining Poisson mass is below kTailMass.
/// Throws AccuracyError if the term budget runs out first.
double noncentral_chisq_cdf(double dof, double noncentrality, double t);

/// CDF of (chi^2_{d1}(noncentrality) / d1) / (chi^2_{d2} / d2).
double f_cdf(double d1, double d2, double x, double noncentrality = 0.0);

/// Gauss hypergeometric 2F1(a, b; c; z) by its raw power series.
/// est_error bounds truncation only; for negative z with large a, b the
/// alternating terms cancel and relative accuracy degrades.
/// Throws ConvergenceError when |z| > 1 - 1e-10 and AccuracyError when the
/// term cap is reached.
SeriesEval gauss_2f1_eval(double a, double b, double c, double z);
inline double gauss_2f1(double a, double b, double c, double z) {
  return gauss_2f1_eval(a, b, c, z).value;
}

/// Density of X ~ F^chi_{b1,c1}(rho^2 / (1 - rho^2), 2n) with b1 = 2q,
/// c1 = 2(nu + 1), nu = n - p - q: the first-term law of the canonical
/// correlation approximation.
DensityEval fchi_density(double x, int p, int q, int n, double rho);

/// Poisson(rate) mixture sum_k P(K = k) f(k), accumulated from the mode
/// outward until the remaining Poisson mass falls below `tail`. `f` must be
/// bounded by 1 in magnitude for the truncation bound to hold.
template <class F>
double poisson_mixture(double rate, F&& f, double tail = kTailMass,
                       std::int64_t max_terms = 100'000'000) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw ParameterError("poisson_mixture: rate must be finite and >= 0");
  }
  if (rate == 0.0) return f(std::int64_t{0});
  const auto mode = static_cast<std::int64_t>(std::floor(rate));
  // Weights are relative to the modal weight and renormalized at the end.
  double weight_sum = 1.0;
  double acc = f(mode);
  double w = 1.0;
  std::int64_t terms = 1;
  for (std::int64_t k = mode; ; ++k) {
    const double next = w * rate / static_cast<double>(k + 1);
    const double ratio = rate / static_cast<double>(k + 2);
    const double bound = next / (1.0 - ratio);
    if (bound <= tail * weight_sum) break;
    if (++terms > max_terms) {
      throw AccuracyError("poisson_mixture: term budget exhausted", bound / weight_sum);
    }
    w = next;
    weight_sum += w;
    acc += w * f(k + 1);
  }
  w = 1.0;
  for (std::int64_t k = mode; k > 0; --k) {
    const double prev = w * static_cast<double>(k) / rate;
    const double ratio = static_cast<double>(k - 1) / rate;
    const double bound = prev / (1.0 - ratio);
    if (bound <= tail * weight_sum) break;
    if (++terms > max_terms) {
      throw AccuracyError("poisson_mixture: term budget exhausted", bound / weight_sum);
    }
    w = prev;
    weight_sum += w;
    acc += w * f(k - 1);
  }
  return acc / weight_sum;
}

}  // namespace rlr

#endif  // RLR_SPECFUN_HPP
