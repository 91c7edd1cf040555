// Acceptance suite: one pass/fail line per criterion, exit code = number
// of failed criteria. argv[1] must be the path to the CLI binary (used by
// the determinism criterion).

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chanrecon/bound.hpp"
#include "chanrecon/channel3d.hpp"
#include "chanrecon/flops.hpp"
#include "chanrecon/link.hpp"
#include "chanrecon/reconstruct.hpp"

namespace fs = std::filesystem;
using namespace chanrecon;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << "  [" << idx << "] " << name;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  std::ostringstream oss;
  oss.precision(6);
  oss << v;
  return oss.str();
}

// ---- criterion 1: Method I under 30% of direct at the reference config ----

void criterion_complexity_30pct() {
  double direct = flops_direct_svd(128, 8, 2, 1).value;
  double method1 = flops_method1(128, 8, 8, 2, 1).value;
  double ratio = method1 / direct;
  report(1, "complexity ratio RO(8,8) at Nt=128 below 30%", ratio < 0.30,
         "ratio=" + fmt(ratio));
}

// ---- criterion 2: under 10% at Nt=200 with RO(8,2); monotone trends ----

void criterion_complexity_10pct_and_trends() {
  auto at200 = ratio_sweep({200}, 8, 2, 2, 1);
  bool pass = at200[0].ratio < 0.10;
  std::string detail = "ratio(200)=" + fmt(at200[0].ratio);

  std::vector<long long> nts;
  for (long long nt = 32; nt <= 256; nt += 8) nts.push_back(nt);
  auto rows = ratio_sweep(nts, 8, 8, 2, 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i].ratio < rows[i - 1].ratio)) {
      pass = false;
      detail += "; not decreasing at Nt=" + std::to_string(rows[i].nt);
    }
  }
  double prev = 0.0;
  for (long long l : {2, 4, 6, 8}) {
    double r = ratio_sweep({128}, 8, l, 2, 1)[0].ratio;
    if (!(r > prev)) {
      pass = false;
      detail += "; not increasing at L=" + std::to_string(l);
    }
    prev = r;
  }
  report(2, "complexity ratio RO(8,2) at Nt=200 below 10%, monotone in Nt and L",
         pass, detail);
}

// ---- criterion 3: Theorem 1 expected-residual bound over the full grid ----

void criterion_theorem1_bound() {
  const int trials = 1000;
  RngStream master(424242);
  bool pass = true;
  std::string detail;
  int points = 0;
  auto suite = standard_spectrum_suite(64, 8);
  for (std::size_t si = 0; si < suite.size(); ++si) {
    for (int d = 0; d + 2 <= suite[si].m; ++d) {
      for (int p = 2; d + p <= suite[si].m; ++p) {
        RngStream rng = master.derive(
            static_cast<std::uint64_t>(si) * 10000 + d * 100 + p);
        BoundCheckReport rep =
            empirical_residual_mean(suite[si], d, p, trials, rng, 0.05);
        ++points;
        if (!rep.pass) {
          pass = false;
          detail += suite[si].id + " d=" + std::to_string(d) +
                    " p=" + std::to_string(p) + " mean=" + fmt(rep.empirical_mean) +
                    " bound=" + fmt(rep.bound) + "; ";
        }
      }
    }
  }
  report(3, "Theorem 1 residual bound over " + std::to_string(points) +
            " (spectrum,d,p) points, 1000 trials each",
         pass, pass ? std::to_string(suite.size()) + " spectra" : detail);
}

// ---- criterion 4: exact capture and L = M equivalence with direct SVD ----

AveragedChannel channel_with_spectrum(int nt, int m, const std::vector<double>& sv,
                                      RngStream& rng) {
  SpectrumSpec spec;
  spec.id = "acc4";
  spec.nt = nt;
  spec.m = m;
  spec.singular_values =
      Eigen::Map<const RealVector>(sv.data(), static_cast<Eigen::Index>(sv.size()));
  return AveragedChannel{random_matrix_with_spectrum(spec, rng)};
}

double span_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * a.adjoint() - b * b.adjoint()).norm();
}

void criterion_exact_capture() {
  bool pass = true;
  std::string detail;
  RngStream master(515151);

  // rank(h_bar) <= L: the range finder captures everything, residual ~ 0
  for (int trial = 0; trial < 20; ++trial) {
    RngStream rng = master.derive(static_cast<std::uint64_t>(trial));
    std::vector<double> sv = {0.8, 0.5, 0.3, 0.0, 0.0, 0.0, 0.0, 0.0};
    double norm = std::sqrt(0.64 + 0.25 + 0.09);
    for (double& v : sv) v /= norm;  // unit Frobenius norm
    AveragedChannel hb = channel_with_spectrum(64, 8, sv, rng);
    double res = approximation_residual(hb, 4, rng);
    if (!(res < 1e-18)) {
      pass = false;
      detail += "residual=" + fmt(res) + " at trial " + std::to_string(trial) + "; ";
    }
  }

  // L = M with a spectral gap at the S cut: same downlink subspace as the
  // direct pipeline and as an independent full-SVD oracle of h_bar
  const int s = 2;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream rng = master.derive(1000 + static_cast<std::uint64_t>(trial));
    std::vector<double> sv = {1.0, 0.9, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05};  // gap 1.8
    AveragedChannel hb = channel_with_spectrum(64, 8, sv, rng);

    ReconstructionOutput m1 = randomized_reconstruct(hb, 8, s, rng);
    PuChannelSet pu;
    pu.per_subcarrier = {hb.h_bar.adjoint()};  // so mean(H^H H) = h_bar h_bar^H
    ReconstructionOutput dsvd =
        direct_svd_reconstruct(average_correlation(pu), s);

    ComplexMatrix span_m1 = downlink_effective_channel(m1).adjoint();
    ComplexMatrix span_d = downlink_effective_channel(dsvd).adjoint();
    SvdResult oracle = svd(hb.h_bar);
    ComplexMatrix span_o = oracle.u.leftCols(s);

    double d_md = span_distance(span_m1, span_d);
    double d_mo = span_distance(span_m1, span_o);
    if (!(d_md < 1e-8 && d_mo < 1e-8)) {
      pass = false;
      detail += "dist(m1,direct)=" + fmt(d_md) + " dist(m1,oracle)=" + fmt(d_mo) +
                " at trial " + std::to_string(trial) + "; ";
    }
  }
  report(4, "exact-capture residual < 1e-18 and L=M subspace equivalence", pass,
         detail);
}

// ---- criterion 5: raw ZF identity on well-conditioned stacks ----

void criterion_zf_identity() {
  bool pass = true;
  std::string detail;
  RngStream master(616161);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RngStream rng = master.derive(static_cast<std::uint64_t>(trial));
    int rows = 2 + trial % 13;  // K*S in 2..14
    ComplexMatrix h = gaussian_matrix(rows, 128, rng);
    ComplexMatrix w = zf_precoder_unnormalized(h);
    double err = (h * w - ComplexMatrix::Identity(rows, rows)).norm();
    worst = std::max(worst, err / std::sqrt(static_cast<double>(rows)));
    if (!(err < 1e-8 * std::sqrt(static_cast<double>(rows)))) {
      pass = false;
      detail += "err=" + fmt(err) + " rows=" + std::to_string(rows) + "; ";
    }
  }
  report(5, "ZF identity ||H W - I|| < 1e-8*sqrt(K*S) on 100 stacks", pass,
         "worst normalized err=" + fmt(worst));
}

// ---- criterion 6: sum-rate ordering across L and parity with direct ----

void criterion_rate_ordering() {
  ScenarioConfig scenario;  // defaults: Nt=128, K=7, M=8
  LinkConfig cfg;
  cfg.num_users = scenario.num_users;
  cfg.streams_per_user = 2;
  cfg.noise_var = 1.0;
  cfg.tx_power = 1e4;  // 40 dB

  std::vector<MethodSpec> methods;
  methods.push_back({Method::direct_svd, 0});
  for (int l : {2, 4, 6, 8}) methods.push_back({Method::method1, l});

  const int drops = 100;
  std::vector<double> mean_rate(methods.size(), 0.0);
  RngStream master(717171);
  for (int drop = 0; drop < drops; ++drop) {
    RngStream rng = master.derive(static_cast<std::uint64_t>(drop));
    std::vector<DropReport> reports = run_drop(scenario, methods, cfg, rng);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      mean_rate[i] += reports[i].sum_rate / drops;
    }
  }

  bool pass = true;
  std::string detail = "direct=" + fmt(mean_rate[0]);
  for (std::size_t i = 1; i < methods.size(); ++i) {
    detail += " L" + std::to_string(methods[i].l) + "=" + fmt(mean_rate[i]);
  }
  for (std::size_t i = 2; i < methods.size(); ++i) {  // L=4 vs 2, 6 vs 4, 8 vs 6
    if (!(mean_rate[i] >= 0.99 * mean_rate[i - 1])) {
      pass = false;
      detail += "; ordering broken at L=" + std::to_string(methods[i].l);
    }
  }
  if (!(mean_rate.back() >= 0.99 * mean_rate[0])) {
    pass = false;
    detail += "; L=8 below 99% of direct";
  }
  report(6, "mean sum rate over 100 drops at 40 dB: L=2<=4<=6<=8 (1% slack), "
            "L=8 within 1% of direct",
         pass, detail);
}

// ---- criterion 7: channel model conservation and literal oracle ----

Complex literal_nlos(int u, int s, const RayClusterParams& ray,
                     const std::vector<Vector3>& rx_pos,
                     const std::vector<Vector3>& tx_pos,
                     const std::vector<FieldPattern>& rx_pat,
                     const std::vector<FieldPattern>& tx_pat, double t) {
  Complex total{0.0, 0.0};
  for (int m = 0; m < ray.n_subpaths; ++m) {
    Eigen::Vector2d frx = rx_pat[u].eval(ray.zoa[m], ray.aoa[m]);
    Eigen::Vector2d ftx = tx_pat[s].eval(ray.zod[m], ray.aod[m]);
    double inv_sqrt_xpr = std::sqrt(1.0 / ray.xpr[m]);
    Complex c11 = std::polar(1.0, ray.init_phases[m][0]);
    Complex c12 = inv_sqrt_xpr * std::polar(1.0, ray.init_phases[m][1]);
    Complex c21 = inv_sqrt_xpr * std::polar(1.0, ray.init_phases[m][2]);
    Complex c22 = std::polar(1.0, ray.init_phases[m][3]);
    Complex pol = frx(0) * (c11 * ftx(0) + c12 * ftx(1)) +
                  frx(1) * (c21 * ftx(0) + c22 * ftx(1));
    Complex ph_rx = std::polar(
        1.0, 2.0 * M_PI * unit_direction_vector(ray.zoa[m], ray.aoa[m]).dot(rx_pos[u]));
    Complex ph_tx = std::polar(
        1.0, 2.0 * M_PI * unit_direction_vector(ray.zod[m], ray.aod[m]).dot(tx_pos[s]));
    Complex ph_t = std::polar(1.0, 2.0 * M_PI * ray.doppler[m] * t);
    total += pol * ph_rx * ph_tx * ph_t;
  }
  return std::sqrt(ray.power / ray.n_subpaths) * total;
}

void criterion_channel_conservation() {
  bool pass = true;
  std::string detail;

  // unit direction vectors stay unit norm
  RngStream rng_dir(818181);
  for (int i = 0; i < 500; ++i) {
    Vector3 v = unit_direction_vector(rng_dir.uniform(-360.0, 360.0),
                                      rng_dir.uniform(-360.0, 360.0));
    if (std::abs(v.norm() - 1.0) >= 1e-12) {
      pass = false;
      detail += "non-unit direction; ";
      break;
    }
  }

  // literal-formula oracle, 100 random parameter sets
  std::vector<Vector3> rx_pos = {{0, 0, 0}, {0.5, 0, 0}};
  std::vector<Vector3> tx_pos = {{0, 0, 0}, {0.5, 0, 0}, {0, 0, 0.5}, {0.5, 0, 0.5}};
  std::vector<FieldPattern> rx_pat = {FieldPattern::slant(0.0), FieldPattern::slant(90.0)};
  std::vector<FieldPattern> tx_pat = {FieldPattern::slant(0.0), FieldPattern::slant(90.0),
                                      FieldPattern::slant(0.0), FieldPattern::slant(90.0)};
  RngStream rng(828282);
  double worst_oracle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    RayClusterParams ray;
    ray.power = rng.uniform(0.1, 2.0);
    ray.n_subpaths = 5;
    for (int m = 0; m < ray.n_subpaths; ++m) {
      ray.zoa.push_back(rng.uniform(5.0, 175.0));
      ray.aoa.push_back(rng.uniform(-180.0, 180.0));
      ray.zod.push_back(rng.uniform(5.0, 175.0));
      ray.aod.push_back(rng.uniform(-180.0, 180.0));
      ray.init_phases.push_back({rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI),
                                 rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI)});
      ray.xpr.push_back(rng.uniform(0.4, 12.0));
      ray.doppler.push_back(rng.uniform(-6.0, 6.0));
    }
    double t = rng.uniform(0.0, 0.01);
    int u = trial % 2;
    int s = trial % 4;
    Complex fast = nlos_ray_coefficient(u, s, ray, rx_pos, tx_pos, rx_pat, tx_pat, t);
    Complex lit = literal_nlos(u, s, ray, rx_pos, tx_pos, rx_pat, tx_pat, t);
    worst_oracle = std::max(worst_oracle, std::abs(fast - lit));
  }
  if (!(worst_oracle < 1e-12)) {
    pass = false;
    detail += "oracle mismatch " + fmt(worst_oracle) + "; ";
  }

  // Monte Carlo power conservation: E|H_{u,s}|^2 = sum_n P_n = 1
  ScenarioConfig cfg;
  cfg.bs_array.n_azimuth = 2;
  cfg.bs_array.n_elevation = 1;
  cfg.num_users = 1;
  cfg.rx_antennas = 2;
  cfg.num_rays = 3;
  cfg.subpaths_per_ray = 10;
  cfg.isotropic_patterns = true;
  RngStream mc(838383);
  const int draws = 10000;
  double acc = 0.0;
  long long entries = 0;
  for (int i = 0; i < draws; ++i) {
    RngStream draw_rng = mc.derive(static_cast<std::uint64_t>(i));
    PuChannelSet pu = build_user_channels(cfg, 0, draw_rng);
    acc += pu.per_subcarrier[0].squaredNorm();
    entries += pu.per_subcarrier[0].size();
  }
  double mean_power = acc / static_cast<double>(entries);
  if (!(std::abs(mean_power - 1.0) < 0.02)) {
    pass = false;
    detail += "mean power " + fmt(mean_power) + "; ";
  }
  report(7, "channel power conservation (2% at 1e4 draws), unit directions, "
            "literal-formula oracle at 1e-12",
         pass, detail.empty() ? "mean power=" + fmt(mean_power) : detail);
}

// ---- criterion 8: byte-identical CLI artifacts across repeated runs ----

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::string("<missing:") + p.string() + ">";
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void criterion_cli_determinism(const std::string& cli) {
  fs::path base = fs::temp_directory_path() / "chanrecon_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);

  fs::path config = base / "config.json";
  {
    std::ofstream out(config, std::ios::binary);
    out << R"({
  "master_seed": 99,
  "scenario": {"n_azimuth": 2, "n_elevation": 2, "num_users": 3},
  "simulate": {"num_drops": 5, "snr_db": [10.0, 30.0]},
  "flops": {"nt_min": 32, "nt_max": 64, "nt_step": 16},
  "bound": {"nt": 16, "m": 8, "trials": 100}
})";
  }

  bool pass = true;
  std::string detail;
  for (const std::string& sub : {std::string("flops"), std::string("simulate"),
                                 std::string("bound-check")}) {
    fs::path out1 = base / (sub + "_run1");
    fs::path out2 = base / (sub + "_run2");
    for (const fs::path& out : {out1, out2}) {
      std::string cmd = "\"" + cli + "\" --config \"" + config.string() +
                        "\" --seed 99 --out \"" + out.string() + "\" " + sub +
                        " > /dev/null";
      int rc = std::system(cmd.c_str());
      if (rc != 0) {
        pass = false;
        detail += sub + " exited " + std::to_string(rc) + "; ";
      }
    }
    if (!fs::exists(out1)) continue;
    for (const auto& entry : fs::directory_iterator(out1)) {
      std::string a = read_bytes(entry.path());
      std::string b = read_bytes(out2 / entry.path().filename());
      if (a != b || a.empty()) {
        pass = false;
        detail += entry.path().filename().string() + " differs across runs; ";
      }
    }
  }
  report(8, "CLI artifacts byte-identical across two runs with the same config+seed",
         pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-cli-binary>" << std::endl;
    return 64;
  }
  criterion_complexity_30pct();
  criterion_complexity_10pct_and_trends();
  criterion_theorem1_bound();
  criterion_exact_capture();
  criterion_zf_identity();
  criterion_rate_ordering();
  criterion_channel_conservation();
  criterion_cli_determinism(argv[1]);

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                : std::to_string(g_failures) + " CRITERIA FAILED")
            << std::endl;
  return g_failures;
}
