// SPDX-License-Identifier: Apache-2.0

#ifndef RLR_EMPIRICAL_HPP
#define RLR_EMPIRICAL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace rlr {

/// Sorted sample set with empirical CDF, quantile and moment queries.
class EmpiricalDist {
 public:
  /// Sorts `samples`; throws ParameterError if empty or any value is NaN.
  explicit EmpiricalDist(std::vector<double> samples);

  std::size_t count() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }

  /// Fraction of samples <= x.
  double cdf(double x) const;
  /// Fraction of samples > x.
  double survival(double x) const { return 1.0 - cdf(x); }
  /// Inverse empirical CDF: smallest sample s with cdf(s) >= prob, prob in [0, 1].
  double quantile(double prob) const;
  double mean() const;
  /// Unbiased sample variance (0 for a singleton).
  double variance() const;
  /// Standard error of the mean.
  double standard_error() const;

 private:
  std::vector<double> samples_;
};

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(const EmpiricalDist& a, const EmpiricalDist& b);

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_distance(const EmpiricalDist& a, const std::function<double(double)>& cdf);

}  // namespace rlr

#endif  // RLR_EMPIRICAL_HPP
