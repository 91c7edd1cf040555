#include "chanrecon/bound.hpp"

#include <cmath>

namespace chanrecon {

void SpectrumSpec::validate() const {
  if (m < 1 || nt < m) {
    throw std::invalid_argument("spectrum: requires nt >= m >= 1");
  }
  if (singular_values.size() != m) {
    throw std::invalid_argument("spectrum: needs m singular values");
  }
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (!(singular_values(i) >= 0.0)) {
      throw std::invalid_argument("spectrum: singular values must be >= 0");
    }
    if (i > 0 && singular_values(i) > singular_values(i - 1) + 1e-15) {
      throw std::invalid_argument("spectrum: singular values must be non-increasing");
    }
  }
}

double theorem1_bound(const SpectrumSpec& spec, int d, int p) {
  spec.validate();
  if (p < 2) {
    throw std::invalid_argument("theorem1_bound: requires p >= 2");
  }
  if (d < 0 || d + p > spec.m) {
    throw std::invalid_argument("theorem1_bound: requires 0 <= d and d+p <= m");
  }
  double tail = 0.0;
  for (Eigen::Index i = d; i < spec.singular_values.size(); ++i) {
    tail += spec.singular_values(i) * spec.singular_values(i);
  }
  return (1.0 + static_cast<double>(d) / (p - 1)) * tail;
}

ComplexMatrix random_matrix_with_spectrum(const SpectrumSpec& spec, RngStream& rng) {
  spec.validate();
  ComplexMatrix u = qr_orthonormal(gaussian_matrix(spec.nt, spec.m, rng));
  ComplexMatrix v = qr_orthonormal(gaussian_matrix(spec.m, spec.m, rng));
  return u * spec.singular_values.asDiagonal() * v.adjoint();
}

BoundCheckReport empirical_residual_mean(const SpectrumSpec& spec, int d, int p,
                                         int trials, RngStream& rng, double slack) {
  if (trials < 100) {
    throw std::invalid_argument("empirical_residual_mean: needs >= 100 trials");
  }
  double bound = theorem1_bound(spec, d, p);  // also validates d, p
  int l = d + p;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    RngStream trial_rng = rng.derive(static_cast<std::uint64_t>(t));
    AveragedChannel h_bar{random_matrix_with_spectrum(spec, trial_rng)};
    double r = approximation_residual(h_bar, l, trial_rng);
    sum += r;
    sum_sq += r * r;
  }
  double mean = sum / trials;
  double var = std::max(0.0, sum_sq / trials - mean * mean);
  double std_error = std::sqrt(var / trials);

  BoundCheckReport report;
  report.spec_id = spec.id;
  report.d = d;
  report.p = p;
  report.l = l;
  report.bound = bound;
  report.empirical_mean = mean;
  report.std_error = std_error;
  report.trials = trials;
  // The floor absorbs rounding noise (~1e-30 on unit-energy inputs) when
  // the analytic bound is exactly zero; it is far below any real violation.
  double noise_floor = 1e-20 * spec.singular_values.squaredNorm();
  report.pass = mean <= bound * (1.0 + slack) + 3.0 * std_error + noise_floor;
  return report;
}

std::vector<SpectrumSpec> standard_spectrum_suite(int nt, int m) {
  auto make = [&](std::string id, std::vector<double> sv) {
    SpectrumSpec spec;
    spec.id = std::move(id);
    spec.nt = nt;
    spec.m = m;
    spec.singular_values =
        Eigen::Map<RealVector>(sv.data(), static_cast<Eigen::Index>(sv.size()));
    spec.validate();
    return spec;
  };
  auto geometric = [&](double q) {
    std::vector<double> sv(m);
    for (int i = 0; i < m; ++i) sv[i] = std::pow(q, i);
    return sv;
  };
  std::vector<SpectrumSpec> suite;
  suite.push_back(make("flat", std::vector<double>(m, 1.0)));
  suite.push_back(make("geometric_0p5", geometric(0.5)));
  suite.push_back(make("geometric_0p8", geometric(0.8)));
  {
    std::vector<double> sv(m, 0.0);
    sv[0] = 1.0;
    if (m > 1) sv[1] = 0.5;
    suite.push_back(make("rank2", sv));
  }
  {
    std::vector<double> sv(m, 0.1);
    sv[0] = 1.0;
    if (m > 1) sv[1] = 1.0;
    suite.push_back(make("two_tier", sv));
  }
  return suite;
}

}  // namespace chanrecon
