// SPDX-License-Identifier: Apache-2.0

#include "rlr/exact_mc.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "rlr/error.hpp"
#include "rlr/parallel.hpp"

namespace rlr {

namespace {

[[noreturn]] void reject(const ScenarioSpec& spec, const std::string& why) {
  throw ParameterError(to_string(spec.tag) + ": " + why);
}

// rows x cols matrix of i.i.d. CN(0, 1) entries, filled column by column.
ComplexMatrix standard_gaussian(RngStream& rng, Eigen::Index rows, Eigen::Index cols) {
  constexpr double kHalf = 0.70710678118654752440;
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = Complex(kHalf * re, kHalf * im);
    }
  }
  return g;
}

// Columns are the n_H observations; coordinate 1 carries the spike.
ComplexMatrix signal_data(RngStream& rng, int m, int n_H, double lambda, double omega, double sigma) {
  ComplexMatrix x = standard_gaussian(rng, m, n_H);
  x *= sigma;
  if (lambda > 0.0) x.row(0) *= std::sqrt(lambda + sigma * sigma) / sigma;
  // All noncentrality in the first observation: sum ||mu_j||^2 = omega.
  if (omega > 0.0) x(0, 0) += std::sqrt(omega);
  return x;
}

ComplexMatrix gram(const ComplexMatrix& x) {
  ComplexMatrix h = x * x.adjoint();
  return 0.5 * (h + h.adjoint());
}

double case5_draw(RngStream& rng, const ScenarioSpec& s) {
  const ComplexMatrix x = standard_gaussian(rng, s.n, s.q);
  ComplexMatrix y = standard_gaussian(rng, s.n, s.p);
  if (s.rho > 0.0) {
    y.col(0) = s.rho * x.col(0) + std::sqrt(1.0 - s.rho * s.rho) * y.col(0);
  }
  // Projector onto span(X) through a thin QR factor.
  Eigen::HouseholderQR<ComplexMatrix> qr(x);
  const ComplexMatrix qx = qr.householderQ() * ComplexMatrix::Identity(s.n, s.q);
  const ComplexMatrix w = qx.adjoint() * y;
  const ComplexMatrix resid = y - qx * w;
  const ComplexMatrix h = gram(w.adjoint());
  const ComplexMatrix e = gram(resid.adjoint());
  return generalized_largest_eig(h, e).value;
}

}  // namespace

std::string to_string(Scenario tag) {
  switch (tag) {
    case Scenario::Case1: return "Case1";
    case Scenario::Case2: return "Case2";
    case Scenario::Case3: return "Case3";
    case Scenario::Case4: return "Case4";
    case Scenario::Case5Canonical: return "Case5Canonical";
    case Scenario::Overlap1: return "Overlap1";
    case Scenario::Overlap2: return "Overlap2";
  }
  return "unknown";
}

ScenarioSpec ScenarioSpec::case1(int m, int n_H, double lambda, double sigma) {
  ScenarioSpec s;
  s.tag = Scenario::Case1;
  s.m = m;
  s.n_H = n_H;
  s.lambda = lambda;
  s.sigma = sigma;
  s.validate();
  return s;
}

ScenarioSpec ScenarioSpec::case2(int m, int n_H, double omega, double sigma) {
  ScenarioSpec s;
  s.tag = Scenario::Case2;
  s.m = m;
  s.n_H = n_H;
  s.omega = omega;
  s.sigma = sigma;
  s.validate();
  return s;
}

ScenarioSpec ScenarioSpec::case3(int m, int n_H, int n_E, double lambda) {
  ScenarioSpec s;
  s.tag = Scenario::Case3;
  s.m = m;
  s.n_H = n_H;
  s.n_E = n_E;
  s.lambda = lambda;
  s.validate();
  return s;
}

ScenarioSpec ScenarioSpec::case4(int m, int n_H, int n_E, double omega) {
  ScenarioSpec s;
  s.tag = Scenario::Case4;
  s.m = m;
  s.n_H = n_H;
  s.n_E = n_E;
  s.omega = omega;
  s.validate();
  return s;
}

ScenarioSpec ScenarioSpec::case5(int p, int q, int n, double rho) {
  ScenarioSpec s;
  s.tag = Scenario::Case5Canonical;
  s.p = p;
  s.q = q;
  s.n = n;
  s.m = p;
  s.rho = rho;
  s.validate();
  return s;
}

ScenarioSpec ScenarioSpec::overlap1(int m, int n_H, double lambda, double sigma) {
  ScenarioSpec s = case1(m, n_H, lambda, sigma);
  s.tag = Scenario::Overlap1;
  return s;
}

ScenarioSpec ScenarioSpec::overlap2(int m, int n_H, double omega, double sigma) {
  ScenarioSpec s = case2(m, n_H, omega, sigma);
  s.tag = Scenario::Overlap2;
  return s;
}

void ScenarioSpec::validate() const {
  if (tag == Scenario::Case5Canonical) {
    if (p < 1) reject(*this, "p must be >= 1");
    if (p > q) reject(*this, "requires p <= q");
    if (n - p - q <= 1) reject(*this, "requires nu = n - p - q > 1");
    if (!(rho >= 0.0 && rho < 1.0)) reject(*this, "rho must lie in [0, 1)");
    return;
  }
  if (m < 2) reject(*this, "m must be >= 2");
  if (n_H < 1) reject(*this, "n_H must be >= 1");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) reject(*this, "lambda must be finite and >= 0");
  if (!(omega >= 0.0) || !std::isfinite(omega)) reject(*this, "omega must be finite and >= 0");
  switch (tag) {
    case Scenario::Case3:
    case Scenario::Case4:
      if (n_E <= m + 1) reject(*this, "requires n_E > m + 1");
      break;
    default:
      if (!(sigma > 0.0) || !std::isfinite(sigma)) reject(*this, "sigma must be finite and > 0");
  }
}

double draw_exact_ell1(RngStream& rng, const ScenarioSpec& spec) {
  switch (spec.tag) {
    case Scenario::Case1:
      return hermitian_leading_eig(gram(signal_data(rng, spec.m, spec.n_H, spec.lambda, 0.0, spec.sigma))).value;
    case Scenario::Case2:
      return hermitian_leading_eig(gram(signal_data(rng, spec.m, spec.n_H, 0.0, spec.omega, spec.sigma))).value;
    case Scenario::Case3:
    case Scenario::Case4: {
      const double lambda = spec.tag == Scenario::Case3 ? spec.lambda : 0.0;
      const double omega = spec.tag == Scenario::Case4 ? spec.omega : 0.0;
      const ComplexMatrix h = gram(signal_data(rng, spec.m, spec.n_H, lambda, omega, 1.0));
      const ComplexMatrix e = gram(standard_gaussian(rng, spec.m, spec.n_E));
      return generalized_largest_eig(h, e).value;
    }
    case Scenario::Case5Canonical:
      return case5_draw(rng, spec);
    default:
      throw PreconditionError("draw_exact_ell1: " + to_string(spec.tag) + " is an overlap scenario");
  }
}

double draw_exact_overlap(RngStream& rng, const ScenarioSpec& spec) {
  if (!spec.is_overlap()) {
    throw PreconditionError("draw_exact_overlap: " + to_string(spec.tag) + " is not an overlap scenario");
  }
  const double lambda = spec.tag == Scenario::Overlap1 ? spec.lambda : 0.0;
  const double omega = spec.tag == Scenario::Overlap2 ? spec.omega : 0.0;
  const EigPair top = hermitian_leading_eig(gram(signal_data(rng, spec.m, spec.n_H, lambda, omega, spec.sigma)));
  return std::norm(top.vector[0]);
}

std::vector<double> exact_draws(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws,
                                Quantity what, int threads) {
  if (n_draws < 1) throw ParameterError("accumulate: n_draws must be >= 1");
  spec.validate();
  if (what == Quantity::Overlap) {
    return parallel_draws(rng, n_draws, threads, [&](RngStream& r) { return draw_exact_overlap(r, spec); });
  }
  return parallel_draws(rng, n_draws, threads, [&](RngStream& r) { return draw_exact_ell1(r, spec); });
}

EmpiricalDist accumulate(const RngStream& rng, const ScenarioSpec& spec, std::size_t n_draws, Quantity what,
                         int threads) {
  return EmpiricalDist(exact_draws(rng, spec, n_draws, what, threads));
}

void PerturbationInstance::validate() const {
  if (!(z > 0.0) || !std::isfinite(z)) throw ParameterError("PerturbationInstance: z must be > 0");
  if (b.size() < 1) throw ParameterError("PerturbationInstance: b must be nonempty");
  if (Z.rows() != b.size() || Z.cols() != b.size()) {
    throw ParameterError("PerturbationInstance: Z must be " + std::to_string(b.size()) + "x" +
                         std::to_string(b.size()));
  }
  if (!is_hermitian(Z)) throw ParameterError("PerturbationInstance: Z is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (Z + Z.adjoint()), Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, Z.cwiseAbs().maxCoeff());
  if (solver.eigenvalues()[0] < -1e-12 * scale) throw ParameterError("PerturbationInstance: Z is not PSD");
  if (!std::isfinite(epsilon)) throw ParameterError("PerturbationInstance: epsilon must be finite");
}

double perturbation_ell1(const PerturbationInstance& inst, int order) {
  inst.validate();
  if (order != 0 && order != 2 && order != 4) {
    throw ParameterError("perturbation_ell1: order must be 0, 2 or 4");
  }
  const double e2 = inst.epsilon * inst.epsilon;
  double out = inst.z;
  if (order == 0) return out;
  const double bb = inst.b.squaredNorm();
  out += bb * e2;
  if (order == 2) return out;
  const double bzb = inst.b.dot(inst.Z * inst.b).real();
  out += (bzb - bb * bb) / inst.z * e2 * e2;
  return out;
}

ComplexMatrix perturbation_matrix(const PerturbationInstance& inst) {
  inst.validate();
  const Eigen::Index k = inst.b.size();
  const double eps = inst.epsilon;
  ComplexMatrix h = ComplexMatrix::Zero(k + 1, k + 1);
  h(0, 0) = inst.z;
  h.block(1, 0, k, 1) = eps * std::sqrt(inst.z) * inst.b;
  h.block(0, 1, 1, k) = eps * std::sqrt(inst.z) * inst.b.adjoint();
  h.block(1, 1, k, k) = eps * eps * 0.5 * (inst.Z + inst.Z.adjoint());
  return h;
}

}  // namespace rlr
