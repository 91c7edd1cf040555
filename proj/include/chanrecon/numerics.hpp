#pragma once

#include "chanrecon/rng.hpp"
#include "chanrecon/types.hpp"

namespace chanrecon {

/// Thin SVD a = u * diag(sigma) * v^H with sigma non-increasing and the
/// columns of u, v phase-canonicalized (largest-modulus entry of each u
/// column has zero phase).
struct SvdResult {
  ComplexMatrix u;
  RealVector sigma;
  ComplexMatrix v;
};

struct EvdResult {
  RealVector eigenvalues;     // non-increasing
  ComplexMatrix eigenvectors;  // columns, orthonormal, phase-canonicalized
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Orthonormal basis Q (rows x cols of a) for the column span of a.
/// Throws RankDeficiencyError (carrying the detected rank) when the
/// smallest R diagonal falls below 1e-12 times the largest.
ComplexMatrix qr_orthonormal(const ComplexMatrix& a);

SvdResult svd(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix, eigenvalues non-increasing.
/// Throws NumericalError if r deviates from Hermitian symmetry beyond
/// 1e-10 (relative to the largest entry magnitude).
EvdResult hermitian_evd(const ComplexMatrix& r);

/// i.i.d. CN(0, 1) entries, filled row by row; deterministic given the
/// stream state.
ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng);

double frobenius_norm_sq(const ComplexMatrix& a);

/// Rotate each column of u so its largest-modulus entry has zero phase;
/// the same rotation is applied to the matching column of paired (when
/// given) so u * diag(s) * paired^H is unchanged.
void canonicalize_columns(ComplexMatrix& u, ComplexMatrix* paired = nullptr);

}  // namespace chanrecon
