#include "chanrecon/reconstruct.hpp"

#include <Eigen/QR>

namespace chanrecon {

const char* method_name(Method m) {
  return m == Method::direct_svd ? "direct_svd" : "method1";
}

AveragedCorrelation average_correlation(const PuChannelSet& pu) {
  if (pu.per_subcarrier.empty()) {
    throw DimensionError("average_correlation: empty PU channel set");
  }
  Eigen::Index nt = pu.per_subcarrier.front().cols();
  ComplexMatrix r = ComplexMatrix::Zero(nt, nt);
  for (const auto& h : pu.per_subcarrier) {
    if (h.cols() != nt || h.rows() != pu.per_subcarrier.front().rows()) {
      throw DimensionError("average_correlation: inconsistent channel dimensions");
    }
    r.noalias() += h.adjoint() * h;
  }
  r /= static_cast<double>(pu.per_subcarrier.size());
  return {std::move(r)};
}

ReconstructionOutput direct_svd_reconstruct(const AveragedCorrelation& r, int s) {
  Eigen::Index nt = r.r.rows();
  if (s < 1 || s > nt) {
    throw DimensionError("direct_svd_reconstruct: s out of range [1, Nt]");
  }
  EvdResult evd = hermitian_evd(r.r);
  ReconstructionOutput out;
  out.method = Method::direct_svd;
  out.h_eff = evd.eigenvectors.leftCols(s).adjoint();
  out.singular_values =
      evd.eigenvalues.head(s).cwiseMax(0.0).cwiseSqrt();
  if (s < nt) {
    double gap = evd.eigenvalues(s - 1) - evd.eigenvalues(s);
    out.degenerate_boundary = gap < 1e-10 * std::abs(evd.eigenvalues(0));
  }
  return out;
}

AveragedChannel average_channel(const PuChannelSet& pu) {
  if (pu.per_subcarrier.empty()) {
    throw DimensionError("average_channel: empty PU channel set");
  }
  const ComplexMatrix& first = pu.per_subcarrier.front();
  ComplexMatrix h_bar = ComplexMatrix::Zero(first.cols(), first.rows());
  for (const auto& h : pu.per_subcarrier) {
    if (h.rows() != first.rows() || h.cols() != first.cols()) {
      throw DimensionError("average_channel: inconsistent channel dimensions");
    }
    h_bar.noalias() += h.adjoint();
  }
  h_bar /= static_cast<double>(pu.per_subcarrier.size());
  return {std::move(h_bar)};
}

ComplexMatrix randomized_range(const AveragedChannel& h_bar, int l, RngStream& rng,
                               bool* deficient) {
  Eigen::Index nt = h_bar.h_bar.rows();
  Eigen::Index m = h_bar.h_bar.cols();
  if (l < 1 || l > m) {
    throw DimensionError("randomized_range: requires M >= L >= 1");
  }
  if (l > nt) {
    throw DimensionError("randomized_range: L exceeds Nt");
  }
  ComplexMatrix g = gaussian_matrix(m, l, rng);
  ComplexMatrix y = h_bar.h_bar * g;
  if (deficient) *deficient = false;
  try {
    return qr_orthonormal(y);
  } catch (const RankDeficiencyError&) {
    if (deficient) *deficient = true;
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(y);
    qr.setThreshold(1e-12);
    Eigen::Index rank = std::max<Eigen::Index>(qr.rank(), 1);
    ComplexMatrix q =
        qr.householderQ() * ComplexMatrix::Identity(y.rows(), y.cols());
    return q.leftCols(rank);
  }
}

ReconstructionOutput randomized_reconstruct(const AveragedChannel& h_bar, int l,
                                            int s, RngStream& rng) {
  Eigen::Index m = h_bar.h_bar.cols();
  if (!(m >= l && l >= s && s >= 1)) {
    throw DimensionError("randomized_reconstruct: requires M >= L >= S >= 1");
  }
  std::uint64_t seed = rng.seed();
  bool deficient = false;
  ComplexMatrix q = randomized_range(h_bar, l, rng, &deficient);
  if (q.cols() < s) {
    throw NumericalError(
        "randomized_reconstruct: sketch rank below requested stream count");
  }
  ComplexMatrix c = q.adjoint() * h_bar.h_bar;  // L x M
  SvdResult cs = svd(c);
  ReconstructionOutput out;
  out.method = Method::method1;
  out.l_used = l;
  out.seed = seed;
  out.rank_deficient_range = deficient;
  out.h_eff = (q * cs.u.leftCols(s)).transpose();
  out.singular_values = cs.sigma.head(s);
  Eigen::Index available = cs.sigma.size();
  if (s < available) {
    double gap = cs.sigma(s - 1) - cs.sigma(s);
    out.degenerate_boundary = gap < 1e-10 * cs.sigma(0);
  }
  return out;
}

double approximation_residual(const AveragedChannel& h_bar, int l, RngStream& rng) {
  ComplexMatrix q = randomized_range(h_bar, l, rng);
  ComplexMatrix residual = h_bar.h_bar - q * (q.adjoint() * h_bar.h_bar);
  return frobenius_norm_sq(residual);
}

ComplexMatrix downlink_effective_channel(const ReconstructionOutput& out) {
  if (out.method == Method::method1) return out.h_eff.conjugate();
  return out.h_eff;
}

}  // namespace chanrecon
