// SPDX-License-Identifier: Apache-2.0

#include "rlr/empirical.hpp"

#include <algorithm>
#include <cmath>

#include "rlr/error.hpp"

namespace rlr {

EmpiricalDist::EmpiricalDist(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw ParameterError("EmpiricalDist: need at least one sample");
  if (std::any_of(samples_.begin(), samples_.end(), [](double v) { return std::isnan(v); })) {
    throw ParameterError("EmpiricalDist: NaN sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDist::cdf(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalDist::quantile(double prob) const {
  if (!(prob >= 0.0 && prob <= 1.0)) throw ParameterError("EmpiricalDist::quantile: prob outside [0, 1]");
  const auto n = static_cast<double>(samples_.size());
  auto idx = static_cast<std::size_t>(std::ceil(prob * n));
  if (idx > 0) --idx;
  return samples_[std::min(idx, samples_.size() - 1)];
}

double EmpiricalDist::mean() const {
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / static_cast<double>(samples_.size());
}

double EmpiricalDist::variance() const {
  if (samples_.size() < 2) return 0.0;
  const double mu = mean();
  double s = 0.0;
  for (double v : samples_) s += (v - mu) * (v - mu);
  return s / static_cast<double>(samples_.size() - 1);
}

double EmpiricalDist::standard_error() const {
  return std::sqrt(variance() / static_cast<double>(samples_.size()));
}

double ks_distance(const EmpiricalDist& a, const EmpiricalDist& b) {
  const auto xs = a.samples();
  const auto ys = b.samples();
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_distance(const EmpiricalDist& a, const std::function<double(double)>& cdf) {
  const auto xs = a.samples();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace rlr
