#include "chanrecon/commands.hpp"

#include <algorithm>
#include <cmath>

#include "chanrecon/bound.hpp"
#include "chanrecon/flops.hpp"
#include "chanrecon/link.hpp"

namespace chanrecon {

namespace {

std::vector<MethodSpec> configured_methods(const RunConfig& cfg) {
  std::vector<MethodSpec> methods;
  if (cfg.methods.direct_svd) {
    methods.push_back({Method::direct_svd, 0});
  }
  std::vector<int> ls = cfg.methods.method1_l;
  std::sort(ls.begin(), ls.end());
  for (int l : ls) methods.push_back({Method::method1, l});
  return methods;
}

}  // namespace

CsvArtifact cmd_flops(const RunConfig& cfg, const std::string& out_dir) {
  const FlopsSection& f = cfg.flops;
  std::vector<long long> nt_range;
  for (long long nt = f.nt_min; nt <= f.nt_max; nt += f.nt_step) {
    nt_range.push_back(nt);
  }
  std::vector<long long> ls = f.l_list;
  std::sort(ls.begin(), ls.end());

  CsvArtifact csv;
  csv.path = out_dir + "/flops.csv";
  csv.header = {"nt", "l", "direct", "method1", "ratio"};
  for (long long nt : nt_range) {
    for (long long l : ls) {
      double direct = flops_direct_svd(nt, f.m, f.s, f.n_sub).value;
      double method1 = flops_method1(nt, f.m, l, f.s, f.n_sub).value;
      csv.add_row({csv_format(nt), csv_format(l), csv_format(direct),
                   csv_format(method1), csv_format(method1 / direct)});
    }
  }
  return csv;
}

CsvArtifact cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
  auto methods = configured_methods(cfg);
  RngStream master(cfg.master_seed);

  // method index -> per-SNR accumulated rates
  std::size_t n_snr = cfg.simulate.snr_db.size();
  std::vector<std::vector<double>> sum(methods.size(), std::vector<double>(n_snr, 0.0));
  std::vector<std::vector<double>> sum_sq = sum;

  for (int drop = 0; drop < cfg.simulate.num_drops; ++drop) {
    // Channel seeds are shared across SNR points and methods so every
    // comparison is paired.
    RngStream drop_rng = master.derive(2000 + static_cast<std::uint64_t>(drop));
    for (std::size_t si = 0; si < n_snr; ++si) {
      LinkConfig link;
      link.num_users = cfg.scenario.num_users;
      link.streams_per_user = cfg.streams_per_user;
      link.noise_var = cfg.noise_var;
      link.tx_power = cfg.noise_var * std::pow(10.0, cfg.simulate.snr_db[si] / 10.0);
      auto reports = run_drop(cfg.scenario, methods, link, drop_rng);
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        sum[mi][si] += reports[mi].sum_rate;
        sum_sq[mi][si] += reports[mi].sum_rate * reports[mi].sum_rate;
      }
    }
  }

  CsvArtifact csv;
  csv.path = out_dir + "/simulate.csv";
  csv.header = {"snr_db", "method", "l", "mean_rate", "stderr", "ro_over_direct_pct"};
  int n = cfg.simulate.num_drops;
  for (std::size_t si = 0; si < n_snr; ++si) {
    double direct_mean = 0.0;
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      if (methods[mi].method == Method::direct_svd) direct_mean = sum[mi][si] / n;
    }
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      double mean = sum[mi][si] / n;
      double var = std::max(0.0, sum_sq[mi][si] / n - mean * mean);
      double se = n > 1 ? std::sqrt(var / n) : 0.0;
      std::string pct =
          direct_mean > 0.0 ? csv_format(100.0 * mean / direct_mean) : "";
      csv.add_row({csv_format(cfg.simulate.snr_db[si]),
                   methods[mi].method == Method::direct_svd ? "direct_svd" : "method1",
                   csv_format(static_cast<long long>(methods[mi].l)),
                   csv_format(mean), csv_format(se), pct});
    }
  }
  return csv;
}

CsvArtifact cmd_boundcheck(const RunConfig& cfg, const std::string& out_dir) {
  auto suite = standard_spectrum_suite(cfg.bound.nt, cfg.bound.m);
  RngStream master(cfg.master_seed);

  CsvArtifact csv;
  csv.path = out_dir + "/bound_check.csv";
  csv.header = {"spec_id", "d", "p", "bound", "mean", "stderr", "pass"};
  for (std::size_t spec_i = 0; spec_i < suite.size(); ++spec_i) {
    const SpectrumSpec& spec = suite[spec_i];
    for (int d = 0; d + 2 <= spec.m; ++d) {
      for (int p = 2; d + p <= spec.m; ++p) {
        RngStream rng = master.derive(3000 + spec_i * 10000 +
                                      static_cast<std::uint64_t>(d) * 100 + p);
        BoundCheckReport rep = empirical_residual_mean(spec, d, p, cfg.bound.trials,
                                                       rng, cfg.bound.slack);
        csv.add_row({rep.spec_id, csv_format(static_cast<long long>(rep.d)),
                     csv_format(static_cast<long long>(rep.p)), csv_format(rep.bound),
                     csv_format(rep.empirical_mean), csv_format(rep.std_error),
                     csv_format(rep.pass)});
      }
    }
  }
  return csv;
}

}  // namespace chanrecon
