#pragma once

#include <optional>

#include "chanrecon/channel3d.hpp"
#include "chanrecon/numerics.hpp"

namespace chanrecon {

enum class Method { direct_svd, method1 };

const char* method_name(Method m);

/// S x Nt effective channel. Rows are conjugate-transposed eigenvectors
/// (direct_svd) or transposed Q*U_tilde columns (method1); either way
/// they are orthonormal within 1e-9. See downlink_effective_channel()
/// for the convention bridge used at the precoder.
struct ReconstructionOutput {
  ComplexMatrix h_eff;
  Method method = Method::direct_svd;
  std::optional<int> l_used;
  std::optional<std::uint64_t> seed;
  RealVector singular_values;     // the S retained values
  bool degenerate_boundary = false;  // eigen/singular gap at the S cut < 1e-10 * top
  bool rank_deficient_range = false;
};

struct AveragedCorrelation {
  ComplexMatrix r;  // Nt x Nt Hermitian PSD
};

struct AveragedChannel {
  ComplexMatrix h_bar;  // Nt x M
};

/// Mean of H^H H over the subcarriers of one PU.
AveragedCorrelation average_correlation(const PuChannelSet& pu);

/// Rows are the conjugate-transposed top-s eigenvectors of r.
ReconstructionOutput direct_svd_reconstruct(const AveragedCorrelation& r, int s);

/// Mean of H^H over the subcarriers of one PU (Nt x M).
AveragedChannel average_channel(const PuChannelSet& pu);

/// Orthonormal basis Q (Nt x l) for the range of h_bar * G with G an
/// M x l Gaussian sketch. When the sketch is rank-deficient, Q falls
/// back to a rank-revealing basis of the achieved rank (fewer columns)
/// and the deficient flag is set.
ComplexMatrix randomized_range(const AveragedChannel& h_bar, int l, RngStream& rng,
                               bool* deficient = nullptr);

/// Method I: sketch, orthonormalize, SVD the small matrix C = Q^H h_bar,
/// return (Q * U_tilde)^T.
ReconstructionOutput randomized_reconstruct(const AveragedChannel& h_bar, int l,
                                            int s, RngStream& rng);

/// ||(I - Q Q^H) h_bar||_F^2 for a fresh sketch at width l.
double approximation_residual(const AveragedChannel& h_bar, int l, RngStream& rng);

/// The h_eff rows rewritten in the downlink (conjugate-transpose)
/// convention expected by the ZF precoder: method1 rows are plain
/// transposes of the singular directions, so they get conjugated here;
/// direct_svd rows pass through.
ComplexMatrix downlink_effective_channel(const ReconstructionOutput& out);

}  // namespace chanrecon
