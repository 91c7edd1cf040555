#include "chanrecon/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace chanrecon {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions disagree (" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
  }
  return a * b;
}

void canonicalize_columns(ComplexMatrix& u, ComplexMatrix* paired) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index imax = 0;
    u.col(j).cwiseAbs().maxCoeff(&imax);
    Complex pivot = u(imax, j);
    if (std::abs(pivot) == 0.0) continue;
    Complex rot = std::conj(pivot) / std::abs(pivot);
    u.col(j) *= rot;
    if (paired && j < paired->cols()) paired->col(j) *= rot;
  }
}

ComplexMatrix qr_orthonormal(const ComplexMatrix& a) {
  if (a.rows() < a.cols()) {
    throw DimensionError("qr_orthonormal: expected rows >= cols");
  }
  require_finite(a, "qr_orthonormal");
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  RealVector rdiag = qr.matrixQR().diagonal().head(a.cols()).cwiseAbs();
  double rmax = rdiag.maxCoeff();
  double thresh = 1e-12 * rmax;
  Eigen::Index rank = (rdiag.array() >= thresh).count();
  if (rmax == 0.0 || rank < a.cols()) {
    throw RankDeficiencyError("qr_orthonormal: rank-deficient input", rank);
  }
  return qr.householderQ() * ComplexMatrix::Identity(a.rows(), a.cols());
}

SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  canonicalize_columns(out.u, &out.v);
  return out;
}

EvdResult hermitian_evd(const ComplexMatrix& r) {
  if (r.rows() != r.cols()) {
    throw DimensionError("hermitian_evd: matrix not square");
  }
  require_finite(r, "hermitian_evd");
  double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  double asym = (r - r.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    throw NumericalError("hermitian_evd: input not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (r + r.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_evd: eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to non-increasing.
  EvdResult out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  canonicalize_columns(out.eigenvectors);
  return out;
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng) {
  if (rows < 1 || cols < 1) {
    throw DimensionError("gaussian_matrix: dimensions must be positive");
  }
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  return g;
}

double frobenius_norm_sq(const ComplexMatrix& a) { return a.squaredNorm(); }

}  // namespace chanrecon
