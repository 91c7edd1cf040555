#pragma once

#include <string>
#include <vector>

namespace chanrecon {

/// Arithmetic cost atoms; each scalar complex addition or multiplication
/// counts as one FLOP, real and complex are not distinguished.
enum class FlopKind {
  gram_aah,     // A A^H for A (M x N): M^2 N + M(N - M/2) - M/2
  matmul_ab,    // A (M x N) times B (N x L): 2MNL - ML
  scale,        // alpha * A (M x N): MN
  sum,          // A + C (M x N): MN
  qr_q,         // QR of A (M x N), Q required: 4(M^2 N - M N^2 + N^3/3)
  svd_sigma_u,  // SVD of A (M x N), Sigma and U: 4 M^2 N + 13 N^3
  svd_sigma_v,  // SVD of A (M x N), Sigma and V: 2 M N^2 + 13 N^3
};

struct FlopAtom {
  FlopKind kind;
  long long m = 0;
  long long n = 0;
  long long l = 0;  // only matmul_ab uses the third dimension
};

double atom_flops(const FlopAtom& atom);

struct FlopTerm {
  std::string label;
  FlopAtom atom;
  double multiplicity = 1.0;
  double flops = 0.0;  // multiplicity * atom_flops(atom)
};

struct FlopTotal {
  double value = 0.0;  // may be fractional (QR's N^3/3 term)
  std::vector<FlopTerm> breakdown;
};

/// Direct SVD: per-subcarrier Gram products, averaging, and the EVD of
/// the Nt x Nt correlation matrix (costed as the Sigma,U SVD row).
FlopTotal flops_direct_svd(long long nt, long long m, long long s, long long n_sub);

/// Method I: averaging, the sketch product, QR of Y, C = Q^H H_bar, the
/// small SVD of C (Sigma,V row on C^H, i.e. 2ML^2 + 13L^3), and Q*U_tilde.
FlopTotal flops_method1(long long nt, long long m, long long l, long long s,
                        long long n_sub);

struct RatioRow {
  long long nt;
  double direct;
  double method1;
  double ratio;  // method1 / direct
};

std::vector<RatioRow> ratio_sweep(const std::vector<long long>& nt_range,
                                  long long m, long long l, long long s,
                                  long long n_sub);

}  // namespace chanrecon
