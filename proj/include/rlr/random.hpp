// SPDX-License-Identifier: Apache-2.0
//
// Reproducible random variates for the Monte Carlo oracle and the
// approximation samplers.
//
// An RngStream is identified by (seed, stream_id). The pair fully determines
// its output, so parallel work is made reproducible by handing each unit of
// work its own substream instead of sharing a generator between threads.

#ifndef RLR_RANDOM_HPP
#define RLR_RANDOM_HPP

#include <cstdint>
#include <random>

#include "rlr/linalg.hpp"

namespace rlr {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Independent child stream; same (seed, stream_id, index) gives the same child.
  RngStream substream(std::uint64_t index) const;

  /// Raw 64 random bits.
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal (polar method, spare value cached).
  double normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Coordinates independent CN(mean_i, variance): real and imaginary parts are
/// independent N(., variance / 2).
ComplexVector sample_complex_gaussian_vector(RngStream& rng, int dim, const ComplexVector& mean,
                                             double variance);
/// Zero-mean overload.
ComplexVector sample_complex_gaussian_vector(RngStream& rng, int dim, double variance);

/// Gamma(shape, scale) by Marsaglia-Tsang squeeze/rejection; shape < 1 uses
/// the U^{1/shape} boost.
double sample_gamma(RngStream& rng, double shape, double scale = 1.0);

/// Central chi-squared with real dof > 0.
double sample_chisq(RngStream& rng, double dof);

/// Noncentral chi-squared as chi^2_{dof + 2K} with K ~ Poisson(noncentrality / 2).
/// With noncentrality == 0 no Poisson variate is drawn, so the stream matches
/// sample_chisq exactly.
double sample_noncentral_chisq(RngStream& rng, double dof, double noncentrality);

/// (chi^2_{d1}(noncentrality) / d1) / (chi^2_{d2} / d2).
double sample_f(RngStream& rng, double d1, double d2, double noncentrality = 0.0);

/// Poisson(rate): sequential inversion below rate 10, Hormann's PTRS
/// transformed rejection above (exact at any rate).
std::uint64_t sample_poisson(RngStream& rng, double rate);

}  // namespace rlr

#endif  // RLR_RANDOM_HPP
