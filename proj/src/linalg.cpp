// SPDX-License-Identifier: Apache-2.0

#include "rlr/linalg.hpp"

#include <cmath>
#include <string>

#include "rlr/error.hpp"

namespace rlr {

namespace {

void require_square_hermitian(const ComplexMatrix& m, const char* who) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw PreconditionError(std::string(who) + ": expected a nonempty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!is_hermitian(m)) {
    throw PreconditionError(std::string(who) + ": matrix is not Hermitian");
  }
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return skew <= tol * scale;
}

void fix_phase(ComplexVector& v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  if (best <= 0.0) return;
  const Complex rot = std::conj(v[arg]) / best;
  v *= rot;
  v[arg] = Complex(best, 0.0);
}

EigPair hermitian_leading_eig(const ComplexMatrix& m) {
  require_square_hermitian(m, "hermitian_leading_eig");
  if (m.rows() == 1) {
    EigPair out;
    out.value = m(0, 0).real();
    out.vector = ComplexVector::Ones(1);
    return out;
  }
  // Symmetrize so the solver sees an exactly Hermitian lower triangle.
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_leading_eig: eigensolver did not converge for a " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           " matrix");
  }
  const Eigen::Index top = m.rows() - 1;
  EigPair out;
  out.value = solver.eigenvalues()[top];
  out.vector = solver.eigenvectors().col(top);
  out.vector.normalize();
  fix_phase(out.vector);
  return out;
}

ComplexMatrix cholesky(const ComplexMatrix& e) {
  require_square_hermitian(e, "cholesky");
  const Eigen::Index n = e.rows();
  ComplexMatrix l = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = e(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (!(pivot > 0.0) || !std::isfinite(pivot)) {
      throw NotPositiveDefiniteError(
          "cholesky: nonpositive pivot " + std::to_string(pivot) + " at index " +
              std::to_string(j),
          static_cast<std::size_t>(j));
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex s = e(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

EigPair generalized_largest_eig(const ComplexMatrix& h, const ComplexMatrix& e) {
  require_square_hermitian(h, "generalized_largest_eig");
  if (e.rows() != h.rows() || e.cols() != h.cols()) {
    throw PreconditionError("generalized_largest_eig: H and E differ in dimension");
  }
  ComplexMatrix l;
  try {
    l = cholesky(e);
  } catch (const NotPositiveDefiniteError& err) {
    throw SingularWhiteningError(std::string("generalized_largest_eig: E is not positive definite (") +
                                 err.what() + ")");
  }
  const auto lower = l.triangularView<Eigen::Lower>();
  // W = L^{-1} H L^{-H}
  ComplexMatrix tmp = lower.solve(h);
  ComplexMatrix w = lower.solve(tmp.adjoint());
  w = 0.5 * (w + w.adjoint());

  EigPair whitened = hermitian_leading_eig(w);
  EigPair out;
  out.value = whitened.value;
  out.vector = l.adjoint().triangularView<Eigen::Upper>().solve(whitened.vector);
  out.vector.normalize();
  fix_phase(out.vector);
  return out;
}

}  // namespace rlr
