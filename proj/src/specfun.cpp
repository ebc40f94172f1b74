// SPDX-License-Identifier: Apache-2.0

#include "rlr/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace rlr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::int64_t kMaxIncGammaIter = 100'000'000;

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

// Stirling series remainder: ln Gamma(a + 1) - [(a + 1/2) ln a - a + ln sqrt(2 pi)].
double stirling_error(double a) {
  if (a < 15.0) {
    return log_gamma(a + 1.0) - ((a + 0.5) * std::log(a) - a + 0.5 * std::log(2.0 * std::numbers::pi));
  }
  const double r = 1.0 / a;
  const double r2 = r * r;
  return r * (1.0 / 12.0 - r2 * (1.0 / 360.0 - r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 / 1188.0))));
}

// Kahan-Babuska (Neumaier) compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

// {P, Q} for the regularized incomplete gamma function.
std::pair<double, double> inc_gamma_pq(double a, double x) {
  require(a > 0.0 && std::isfinite(a), "incomplete gamma: shape must be positive, got " + std::to_string(a));
  require(x >= 0.0 && !std::isnan(x), "incomplete gamma: x must be nonnegative, got " + std::to_string(x));
  if (x == 0.0) return {0.0, 1.0};
  if (std::isinf(x)) return {1.0, 0.0};
  const double log_d = log_gamma_density_term(a, x);
  if (x < a + 1.0) {
    // P = D(a, x) * sum_n x^n / ((a + 1) ... (a + n))
    double term = 1.0;
    double sum = 1.0;
    double ap = a;
    for (std::int64_t n = 0;; ++n) {
      if (n >= kMaxIncGammaIter) {
        throw AccuracyError("incomplete gamma: series did not converge", std::fabs(term / sum));
      }
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    const double p = std::min(1.0, std::exp(log_d) * sum);
    return {p, 1.0 - p};
  }
  // Q = a D(a, x) / (x + 1 - a - 1 (1 - a) / (x + 3 - a - ...)), modified Lentz.
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (std::int64_t i = 1;; ++i) {
    if (i >= kMaxIncGammaIter) {
      throw AccuracyError("incomplete gamma: continued fraction did not converge", std::fabs(d * c - 1.0));
    }
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  const double q = std::min(1.0, std::exp(log_d + std::log(a)) * h);
  return {1.0 - q, q};
}

double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10'000'000; ++m) {
    const double md = m;
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw AccuracyError("reg_inc_beta: continued fraction did not converge", 1.0);
}

}  // namespace

double log_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), "log_gamma: x must be positive and finite, got " + std::to_string(x));
  // Shift to x >= 12 where the Stirling series is accurate to double precision.
  double shift = 0.0;
  double y = x;
  if (y < 12.0) {
    double prod = 1.0;
    while (y < 12.0) {
      prod *= y;
      y += 1.0;
    }
    shift = std::log(prod);
  }
  const double r = 1.0 / y;
  const double r2 = r * r;
  const double series =
      r * (1.0 / 12.0 -
           r2 * (1.0 / 360.0 -
                 r2 * (1.0 / 1260.0 - r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0 - r2 / 156.0))))));
  return (y - 0.5) * std::log(y) - y + 0.5 * std::log(2.0 * std::numbers::pi) + series - shift;
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

double log_gamma_density_term(double a, double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (a < 1.0) return a * std::log(x) - x - log_gamma(a + 1.0);
  const double u = (x - a) / a;
  return -a * (u - std::log1p(u)) - 0.5 * std::log(2.0 * std::numbers::pi * a) - stirling_error(a);
}

double reg_inc_gamma_P(double shape, double x) { return inc_gamma_pq(shape, x).first; }

double reg_inc_gamma_Q(double shape, double x) { return inc_gamma_pq(shape, x).second; }

double reg_inc_beta(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, "reg_inc_beta: a and b must be positive");
  require(x >= 0.0 && x <= 1.0, "reg_inc_beta: x must lie in [0, 1], got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double chisq_cdf(double dof, double t) {
  require(dof > 0.0, "chisq_cdf: dof must be positive");
  require(t >= 0.0, "chisq_cdf: t must be nonnegative");
  return reg_inc_gamma_P(0.5 * dof, 0.5 * t);
}

double noncentral_chisq_cdf(double dof, double noncentrality, double t) {
  require(dof > 0.0 && std::isfinite(dof), "noncentral_chisq_cdf: dof must be positive");
  require(noncentrality >= 0.0 && std::isfinite(noncentrality),
          "noncentral_chisq_cdf: noncentrality must be nonnegative");
  require(t >= 0.0 && !std::isnan(t), "noncentral_chisq_cdf: t must be nonnegative");
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  if (noncentrality == 0.0) return reg_inc_gamma_P(0.5 * dof, 0.5 * t);

  const double lambda = 0.5 * noncentrality;
  const double x = 0.5 * t;
  const auto mode = static_cast<std::int64_t>(std::floor(lambda));
  const double a_mode = 0.5 * dof + static_cast<double>(mode);
  // Above the mean sum upper tails: the forward Q recurrence is the stable one there.
  const bool upper = t > dof + noncentrality;
  const auto [p_mode, q_mode] = inc_gamma_pq(a_mode, x);
  const double d_mode = std::exp(log_gamma_density_term(a_mode, x));

  constexpr std::int64_t max_terms = 100'000'000;
  CompensatedSum acc;
  CompensatedSum weights;
  acc.add(upper ? q_mode : p_mode);
  weights.add(1.0);
  std::int64_t terms = 1;

  // Forward: P(a + 1) = P(a) - D(a), Q(a + 1) = Q(a) + D(a), D(a + 1) = D(a) x / (a + 1).
  {
    double w = 1.0;
    double central = upper ? q_mode : p_mode;
    double d = d_mode;
    double a = a_mode;
    for (std::int64_t k = mode;; ++k) {
      const double next_w = w * lambda / static_cast<double>(k + 1);
      const double bound = next_w / (1.0 - lambda / static_cast<double>(k + 2));
      if (bound <= 0.5 * kTailMass * weights.value()) break;
      if (++terms > max_terms) {
        throw AccuracyError("noncentral_chisq_cdf: term budget exceeded", bound / weights.value());
      }
      central = upper ? central + d : std::max(0.0, central - d);
      d *= x / (a + 1.0);
      a += 1.0;
      w = next_w;
      weights.add(w);
      acc.add(w * std::min(1.0, central));
    }
  }
  // Backward: D(a - 1) = D(a) a / x, P(a - 1) = P(a) + D(a - 1), Q(a - 1) = Q(a) - D(a - 1).
  {
    double w = 1.0;
    double central = upper ? q_mode : p_mode;
    double d = d_mode;
    double a = a_mode;
    for (std::int64_t k = mode; k > 0; --k) {
      const double prev_w = w * static_cast<double>(k) / lambda;
      const double bound = prev_w / (1.0 - static_cast<double>(k - 1) / lambda);
      if (bound <= 0.5 * kTailMass * weights.value()) break;
      if (++terms > max_terms) {
        throw AccuracyError("noncentral_chisq_cdf: term budget exceeded", bound / weights.value());
      }
      d *= a / x;
      a -= 1.0;
      central = upper ? std::max(0.0, central - d) : central + d;
      w = prev_w;
      weights.add(w);
      acc.add(w * std::min(1.0, central));
    }
  }
  const double mixed = acc.value() / weights.value();
  return std::clamp(upper ? 1.0 - mixed : mixed, 0.0, 1.0);
}

double f_cdf(double d1, double d2, double x, double noncentrality) {
  require(d1 > 0.0 && d2 > 0.0, "f_cdf: degrees of freedom must be positive");
  require(noncentrality >= 0.0, "f_cdf: noncentrality must be nonnegative");
  require(x >= 0.0, "f_cdf: x must be nonnegative");
  if (x == 0.0) return 0.0;
  const double y = d1 * x / (d1 * x + d2);
  return poisson_mixture(0.5 * noncentrality, [&](std::int64_t k) {
    return reg_inc_beta(0.5 * d1 + static_cast<double>(k), 0.5 * d2, y);
  });
}

SeriesEval gauss_2f1_eval(double a, double b, double c, double z) {
  if (c <= 0.0 && c == std::floor(c)) {
    throw DomainError("gauss_2f1: c must not be a nonpositive integer, got " + std::to_string(c));
  }
  if (!(std::fabs(z) <= kMaxHypergeometricArg)) {
    throw ConvergenceError("gauss_2f1: |z| = " + std::to_string(std::fabs(z)) +
                           " too close to 1 for the power series; transform the argument first");
  }
  SeriesEval out;
  double term = 1.0;
  double sum = 1.0;
  for (std::int64_t k = 0;; ++k) {
    if (k >= kMaxSeriesTerms) {
      throw AccuracyError("gauss_2f1: term cap reached", std::fabs(term / sum));
    }
    const double kd = static_cast<double>(k);
    const double ratio = (a + kd) * (b + kd) * z / ((c + kd) * (kd + 1.0));
    const double next = term * ratio;
    if (next == 0.0) {
      out.terms = k + 1;
      break;
    }
    sum += next;
    term = next;
    const double kd1 = kd + 1.0;
    const double next_ratio = std::fabs((a + kd1) * (b + kd1) * z / ((c + kd1) * (kd1 + 1.0)));
    if (std::fabs(term) < kSeriesRelTol * std::fabs(sum) && next_ratio < 1.0) {
      const double r = std::max(next_ratio, std::fabs(z));
      out.est_error = std::fabs(term) * next_ratio / (1.0 - r);
      out.terms = k + 2;
      break;
    }
  }
  out.value = sum;
  return out;
}

DensityEval fchi_density(double x, int p, int q, int n, double rho) {
  if (p < 1 || q < p) throw ParameterError("fchi_density: need 1 <= p <= q");
  const int nu = n - p - q;
  if (nu <= 1) throw ParameterError("fchi_density: need nu = n - p - q > 1, got " + std::to_string(nu));
  if (!(rho >= 0.0 && rho < 1.0)) throw ParameterError("fchi_density: rho must lie in [0, 1)");
  require(x >= 0.0 && std::isfinite(x), "fchi_density: x must be nonnegative and finite");

  const double b1 = 2.0 * q;
  const double c1 = 2.0 * (nu + 1);
  const double ratio = c1 / b1;
  DensityEval out;
  out.x = x;
  const double x_power = 0.5 * b1 - 1.0;
  if (x == 0.0 && x_power > 0.0) return out;

  const double rho2 = rho * rho;
  const double log_prefactor = static_cast<double>(n) * std::log1p(-rho2) - log_beta(0.5 * c1, 0.5 * b1) +
                               0.5 * c1 * std::log(ratio) + (x_power > 0.0 ? x_power * std::log(x) : 0.0) -
                               0.5 * (c1 + b1) * std::log(x + ratio);
  const double arg = x * rho2 / (x + ratio);
  const SeriesEval hyp = gauss_2f1_eval(static_cast<double>(n), 0.5 * (c1 + b1), 0.5 * b1, arg);
  const double prefactor = std::exp(log_prefactor);
  out.value = prefactor * hyp.value;
  out.est_error = prefactor * hyp.est_error;
  if (!(out.est_error < 1e-10)) {
    throw AccuracyError("fchi_density: truncation bound above 1e-10", out.est_error);
  }
  return out;
}

}  // namespace rlr
