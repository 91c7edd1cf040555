#pragma once

#include <string>
#include <vector>

#include "chanrecon/reconstruct.hpp"

namespace chanrecon {

struct LinkConfig {
  int num_users = 7;        // K
  int streams_per_user = 2;  // S
  double tx_power = 1.0;     // rho_f, linear per-stream scale
  double noise_var = 1.0;    // sigma^2, linear

  double snr_db() const { return 10.0 * std::log10(tx_power / noise_var); }
  void validate(int nt) const;
};

struct PrecodeResult {
  ComplexMatrix w;            // Nt x (K*S), normalized so ||w||_F^2 = K*S
  int streams_per_user = 1;
  double norm_scale = 1.0;    // w = norm_scale * w_unnormalized

  ComplexMatrix user_block(int k) const {
    return w.middleCols(static_cast<Eigen::Index>(k) * streams_per_user,
                        streams_per_user);
  }
  int num_users() const {
    return static_cast<int>(w.cols()) / streams_per_user;
  }
};

struct DropReport {
  std::vector<std::vector<double>> per_user_per_stream_sinr;  // linear
  double sum_rate = 0.0;  // bits/s/Hz
  std::string method_tag;
  LinkConfig cfg;
};

struct MethodSpec {
  Method method = Method::direct_svd;
  int l = 0;  // method1 sketch width, ignored for direct_svd

  std::string tag() const;
};

/// Row-stack effective channels in user order; all must share Nt.
ComplexMatrix stack_effective_channels(const std::vector<ComplexMatrix>& h_effs);

/// W = H^H (H H^H)^-1 followed by global power normalization.
/// Throws NumericalError (with the condition estimate in the message)
/// when cond(H H^H) >= 1e12.
PrecodeResult zf_precoder(const ComplexMatrix& h);

/// Unnormalized pseudo-inverse H^H (H H^H)^-1 (the raw ZF identity
/// H * W = I holds for this one).
ComplexMatrix zf_precoder_unnormalized(const ComplexMatrix& h);

/// MMSE combiner with ideal covariance, inter-user terms included:
/// E = (H W^k)^H (rho * sum_l (H W^l)(H W^l)^H + sigma^2 I)^-1.
ComplexMatrix mmse_combiner(const ComplexMatrix& h_user, const PrecodeResult& w,
                            int user_k, const LinkConfig& cfg);

/// Per-stream SINR: diagonal signal power of E H W^k against intra-user
/// leakage, inter-user leakage, and combined noise.
RealVector per_stream_sinr(const ComplexMatrix& h_user, const PrecodeResult& w,
                           const ComplexMatrix& e, int user_k,
                           const LinkConfig& cfg);

/// Generate channels once, run every method on the identical channels,
/// precode, combine, and report capacity-based sum rates (averaged over
/// the PU subcarriers). Deterministic given the stream seed.
std::vector<DropReport> run_drop(const ScenarioConfig& scenario,
                                 const std::vector<MethodSpec>& methods,
                                 const LinkConfig& cfg, RngStream& rng);

}  // namespace chanrecon
