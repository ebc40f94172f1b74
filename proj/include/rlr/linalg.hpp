// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra: the leading eigenpair of a Hermitian matrix,
// the largest root of E^{-1}H through Cholesky whitening, and the Cholesky
// factor itself.

#ifndef RLR_LINALG_HPP
#define RLR_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace rlr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct EigPair {
  double value = 0.0;
  ComplexVector vector;  // unit norm, phase fixed
};

/// Relative tolerance used to accept a matrix as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

/// max|M - M^H| <= tol * max|M|.
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

/// Rotate `v` so its largest-magnitude component (first one on ties) is real
/// and nonnegative.
void fix_phase(ComplexVector& v);

/// Algebraically largest eigenvalue of a Hermitian matrix with a phase-fixed
/// unit eigenvector.
///
/// Throws PreconditionError if `m` is empty, non-square or not Hermitian, and
/// ConvergenceError if the eigensolver fails.
EigPair hermitian_leading_eig(const ComplexMatrix& m);

/// Lower-triangular L with positive real diagonal such that L L^H = e.
/// Throws NotPositiveDefiniteError carrying the failing pivot index.
ComplexMatrix cholesky(const ComplexMatrix& e);

/// Largest eigenvalue of E^{-1}H, computed from the Hermitian matrix
/// L^{-1} H L^{-H} with E = L L^H. The returned vector is the corresponding
/// eigenvector of E^{-1}H, normalized and phase fixed.
///
/// Throws SingularWhiteningError if `e` is not positive definite.
EigPair generalized_largest_eig(const ComplexMatrix& h, const ComplexMatrix& e);

}  // namespace rlr

#endif  // RLR_LINALG_HPP
