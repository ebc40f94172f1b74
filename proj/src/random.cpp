// SPDX-License-Identifier: Apache-2.0

#include "rlr/random.hpp"

#include <cmath>
#include <string>

#include "rlr/error.hpp"
#include "rlr/specfun.hpp"

namespace rlr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(what) + " must be positive and finite, got " +
                         std::to_string(v));
  }
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(what) + " must be nonnegative and finite, got " +
                         std::to_string(v));
  }
}

std::uint64_t poisson_inversion(RngStream& rng, double rate) {
  double p = std::exp(-rate);
  double cdf = p;
  const double u = rng.uniform();
  std::uint64_t k = 0;
  // The tail beyond k = 1000 is below double resolution for rate < 10.
  while (u > cdf && k < 1000) {
    ++k;
    p *= rate / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson random
// variables", Insurance: Mathematics and Economics 12 (1993).
std::uint64_t poisson_ptrs(RngStream& rng, double rate) {
  const double slam = std::sqrt(rate);
  const double loglam = std::log(rate);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
    const double rhs = -rate + k * loglam - log_gamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(k);
  }
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  const std::uint64_t child = splitmix64(splitmix64(stream_id_) ^ splitmix64(~index));
  return RngStream(seed_, child);
}

double RngStream::uniform() {
  // 53 random bits, offset by half an ulp so 0 and 1 are excluded.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

ComplexVector sample_complex_gaussian_vector(RngStream& rng, int dim, const ComplexVector& mean,
                                             double variance) {
  if (dim < 1) throw ParameterError("sample_complex_gaussian_vector: dim must be >= 1");
  require_positive(variance, "sample_complex_gaussian_vector: variance");
  if (mean.size() != dim) {
    throw ParameterError("sample_complex_gaussian_vector: mean has length " +
                         std::to_string(mean.size()) + ", expected " + std::to_string(dim));
  }
  if (!mean.allFinite()) throw ParameterError("sample_complex_gaussian_vector: mean not finite");
  const double sd = std::sqrt(0.5 * variance);
  ComplexVector out(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    out[i] = mean[i] + Complex(sd * re, sd * im);
  }
  return out;
}

ComplexVector sample_complex_gaussian_vector(RngStream& rng, int dim, double variance) {
  if (dim < 1) throw ParameterError("sample_complex_gaussian_vector: dim must be >= 1");
  return sample_complex_gaussian_vector(rng, dim, ComplexVector::Zero(dim), variance);
}

double sample_gamma(RngStream& rng, double shape, double scale) {
  require_positive(shape, "sample_gamma: shape");
  require_positive(scale, "sample_gamma: scale");
  if (shape < 1.0) {
    // G(a) = G(a + 1) * U^{1/a}
    const double g = sample_gamma(rng, shape + 1.0, 1.0);
    const double u = rng.uniform();
    return scale * g * std::exp(std::log(u) / shape);
  }
  // G. Marsaglia and W. Tsang, ACM TOMS 26 (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return scale * d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

double sample_chisq(RngStream& rng, double dof) {
  require_positive(dof, "sample_chisq: dof");
  return sample_gamma(rng, 0.5 * dof, 2.0);
}

double sample_noncentral_chisq(RngStream& rng, double dof, double noncentrality) {
  require_positive(dof, "sample_noncentral_chisq: dof");
  require_nonnegative(noncentrality, "sample_noncentral_chisq: noncentrality");
  const std::uint64_t k = sample_poisson(rng, 0.5 * noncentrality);
  return sample_chisq(rng, dof + 2.0 * static_cast<double>(k));
}

double sample_f(RngStream& rng, double d1, double d2, double noncentrality) {
  require_positive(d1, "sample_f: d1");
  require_positive(d2, "sample_f: d2");
  const double num = sample_noncentral_chisq(rng, d1, noncentrality) / d1;
  const double den = sample_chisq(rng, d2) / d2;
  return num / den;
}

std::uint64_t sample_poisson(RngStream& rng, double rate) {
  require_nonnegative(rate, "sample_poisson: rate");
  if (rate == 0.0) return 0;
  if (rate < 10.0) return poisson_inversion(rng, rate);
  return poisson_ptrs(rng, rate);
}

}  // namespace rlr
