// SPDX-License-Identifier: Apache-2.0
//
// Exact Monte Carlo oracle: builds the actual complex Wishart models from
// Gaussian data and returns the largest root or the leading-eigenvector
// overlap. Also holds the deterministic rank-one perturbation series.

#ifndef RLR_EXACT_MC_HPP
#define RLR_EXACT_MC_HPP

#include <cstddef>
#include <string>

#include "rlr/empirical.hpp"
#include "rlr/linalg.hpp"
#include "rlr/random.hpp"

namespace rlr {

enum class Scenario { Case1, Case2, Case3, Case4, Case5Canonical, Overlap1, Overlap2 };

std::string to_string(Scenario tag);

/// Parameters of one scenario. Only the fields relevant to `tag` are read.
/// Case3/Case4 use identity noise covariance (sigma is ignored). Case5 uses
/// p, q, n, rho; m is set to p.
struct ScenarioSpec {
  Scenario tag = Scenario::Case1;
  int m = 2;
  int n_H = 1;
  int n_E = 0;
  double lambda = 0.0;
  double omega = 0.0;
  double sigma = 1.0;
  int p = 0;
  int q = 0;
  int n = 0;
  double rho = 0.0;

  static ScenarioSpec case1(int m, int n_H, double lambda, double sigma);
  static ScenarioSpec case2(int m, int n_H, double omega, double sigma);
  static ScenarioSpec case3(int m, int n_H, int n_E, double lambda);
  static ScenarioSpec case4(int m, int n_H, int n_E, double omega);
  static ScenarioSpec case5(int p, int q, int n, double rho);
  static ScenarioSpec overlap1(int m, int n_H, double lambda, double sigma);
  static ScenarioSpec overlap2(int m, int n_H, double omega, double sigma);

  /// Throws ParameterError naming the first violated precondition.
  void validate() const;
  bool is_overlap() const { return tag == Scenario::Overlap1 || tag == Scenario::Overlap2; }
};

enum class Quantity { Ell1, Overlap };

/// One exact draw of the largest eigenvalue (of H, or of E^{-1}H).
double draw_exact_ell1(RngStream& rng, const ScenarioSpec& spec);

/// One exact draw of |v_hat^H e_1|^2 for Overlap1/Overlap2.
double draw_exact_overlap(RngStream& rng, const ScenarioSpec& spec);

/// n_draws exact draws in block order; identical for any thread count.
std::vector<double> exact_draws(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                                Quantity what, int threads = 1);

EmpiricalDist accumulate(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                         Quantity what, int threads = 1);

/// H(eps) = [[z, eps sqrt(z) b^H], [eps sqrt(z) b, eps^2 Z]]: a rank-one
/// leading block perturbed at first and second order.
struct PerturbationInstance {
  double z = 1.0;
  ComplexVector b;
  ComplexMatrix Z;
  double epsilon = 0.0;

  void validate() const;
};

/// Partial sum z + |b|^2 eps^2 + z^{-1} b^H (Z - b b^H) b eps^4 up to `order`
/// (0, 2 or 4).
double perturbation_ell1(const PerturbationInstance& inst, int order);

/// The matrix H(eps) = A0 + eps A1 + eps^2 A2 whose largest eigenvalue the
/// series expands.
ComplexMatrix perturbation_matrix(const PerturbationInstance& inst);

}  // namespace rlr

#endif  // RLR_EXACT_MC_HPP
