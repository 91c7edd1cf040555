#include "chanrecon/link.hpp"

#include <cmath>

namespace chanrecon {

void LinkConfig::validate(int nt) const {
  if (num_users < 1 || streams_per_user < 1) {
    throw std::invalid_argument("link: K and S must be >= 1");
  }
  if (num_users * streams_per_user > nt) {
    throw std::invalid_argument("link: ZF requires K*S <= Nt");
  }
  if (!(tx_power > 0.0) || !(noise_var > 0.0)) {
    throw std::invalid_argument("link: tx_power and noise_var must be > 0");
  }
}

std::string MethodSpec::tag() const {
  if (method == Method::direct_svd) return "direct_svd";
  return "method1_L" + std::to_string(l);
}

ComplexMatrix stack_effective_channels(const std::vector<ComplexMatrix>& h_effs) {
  if (h_effs.empty()) {
    throw DimensionError("stack_effective_channels: no users");
  }
  Eigen::Index nt = h_effs.front().cols();
  Eigen::Index total_rows = 0;
  for (const auto& h : h_effs) {
    if (h.cols() != nt) {
      throw DimensionError("stack_effective_channels: Nt mismatch across users");
    }
    total_rows += h.rows();
  }
  if (total_rows > nt) {
    throw DimensionError("stack_effective_channels: total streams exceed Nt");
  }
  ComplexMatrix stacked(total_rows, nt);
  Eigen::Index row = 0;
  for (const auto& h : h_effs) {
    stacked.middleRows(row, h.rows()) = h;
    row += h.rows();
  }
  return stacked;
}

ComplexMatrix zf_precoder_unnormalized(const ComplexMatrix& h) {
  ComplexMatrix gram = h * h.adjoint();
  Eigen::JacobiSVD<ComplexMatrix> sv(h);
  double smax = sv.singularValues()(0);
  double smin = sv.singularValues()(sv.singularValues().size() - 1);
  double cond = smin > 0.0 ? (smax * smax) / (smin * smin)
                           : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    throw NumericalError("zf_precoder: H H^H ill-conditioned, cond ~ " +
                         std::to_string(cond));
  }
  return h.adjoint() * gram.llt().solve(ComplexMatrix::Identity(h.rows(), h.rows()));
}

PrecodeResult zf_precoder(const ComplexMatrix& h) {
  ComplexMatrix w = zf_precoder_unnormalized(h);
  double target = static_cast<double>(h.rows());  // K*S
  double scale = std::sqrt(target / w.squaredNorm());
  PrecodeResult out;
  out.w = scale * w;
  out.norm_scale = scale;
  return out;
}

ComplexMatrix mmse_combiner(const ComplexMatrix& h_user, const PrecodeResult& w,
                            int user_k, const LinkConfig& cfg) {
  Eigen::Index m = h_user.rows();
  if (h_user.cols() != w.w.rows()) {
    throw DimensionError("mmse_combiner: channel/precoder dimension mismatch");
  }
  ComplexMatrix hw_all = h_user * w.w;  // M x (K*S)
  ComplexMatrix cov = cfg.tx_power * (hw_all * hw_all.adjoint());
  cov += cfg.noise_var * ComplexMatrix::Identity(m, m);
  ComplexMatrix hw_k =
      hw_all.middleCols(static_cast<Eigen::Index>(user_k) * w.streams_per_user,
                        w.streams_per_user);
  return hw_k.adjoint() * cov.llt().solve(ComplexMatrix::Identity(m, m));
}

RealVector per_stream_sinr(const ComplexMatrix& h_user, const PrecodeResult& w,
                           const ComplexMatrix& e, int user_k,
                           const LinkConfig& cfg) {
  int s = w.streams_per_user;
  ComplexMatrix ehw = e * (h_user * w.w);  // S x (K*S)
  Eigen::Index own_start = static_cast<Eigen::Index>(user_k) * s;
  RealVector sinr(s);
  for (int i = 0; i < s; ++i) {
    double signal = cfg.tx_power * std::norm(ehw(i, own_start + i));
    double interference = 0.0;
    for (Eigen::Index j = 0; j < ehw.cols(); ++j) {
      if (j == own_start + i) continue;
      interference += cfg.tx_power * std::norm(ehw(i, j));
    }
    double noise = cfg.noise_var * e.row(i).squaredNorm();
    sinr(i) = signal / (interference + noise);
  }
  return sinr;
}

std::vector<DropReport> run_drop(const ScenarioConfig& scenario,
                                 const std::vector<MethodSpec>& methods,
                                 const LinkConfig& cfg, RngStream& rng) {
  scenario.validate();
  cfg.validate(scenario.bs_array.num_elements());
  if (cfg.num_users != scenario.num_users) {
    throw std::invalid_argument("run_drop: link K and scenario num_users disagree");
  }
  if (cfg.streams_per_user > scenario.rx_antennas) {
    throw std::invalid_argument("run_drop: S exceeds user antennas M");
  }

  RngStream channel_rng = rng.derive(0);
  auto channels = build_pu_channels(scenario, channel_rng);

  std::vector<DropReport> reports;
  reports.reserve(methods.size());
  for (const auto& spec : methods) {
    std::vector<ComplexMatrix> effective(channels.size());
    for (std::size_t k = 0; k < channels.size(); ++k) {
      ReconstructionOutput out;
      if (spec.method == Method::direct_svd) {
        out = direct_svd_reconstruct(average_correlation(channels[k]),
                                     cfg.streams_per_user);
      } else {
        // Reconstruction streams are shared across methods and L so runs
        // on the same drop stay paired.
        RngStream recon_rng = rng.derive(1000 + static_cast<std::uint64_t>(k));
        out = randomized_reconstruct(average_channel(channels[k]), spec.l,
                                     cfg.streams_per_user, recon_rng);
      }
      effective[k] = downlink_effective_channel(out);
    }
    ComplexMatrix stacked = stack_effective_channels(effective);
    PrecodeResult w = zf_precoder(stacked);
    w.streams_per_user = cfg.streams_per_user;

    DropReport report;
    report.method_tag = spec.tag();
    report.cfg = cfg;
    int n_sub = scenario.num_subcarriers();
    report.per_user_per_stream_sinr.assign(
        channels.size(), std::vector<double>(cfg.streams_per_user, 0.0));
    double rate = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k) {
      for (const auto& h_sc : channels[k].per_subcarrier) {
        ComplexMatrix e = mmse_combiner(h_sc, w, static_cast<int>(k), cfg);
        RealVector sinr = per_stream_sinr(h_sc, w, e, static_cast<int>(k), cfg);
        for (int i = 0; i < cfg.streams_per_user; ++i) {
          report.per_user_per_stream_sinr[k][i] += sinr(i) / n_sub;
          rate += std::log2(1.0 + sinr(i)) / n_sub;
        }
      }
    }
    report.sum_rate = rate;
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace chanrecon
