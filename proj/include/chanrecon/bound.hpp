#pragma once

#include <string>
#include <vector>

#include "chanrecon/reconstruct.hpp"

namespace chanrecon {

/// Target spectrum for the expected-residual check: nt x m matrices with
/// prescribed singular values.
struct SpectrumSpec {
  std::string id;
  RealVector singular_values;  // non-increasing, length m
  int nt = 64;
  int m = 8;

  void validate() const;
};

/// (1 + d/(p-1)) * sum_{i>d} sigma_i^2. Requires p >= 2 (the expected
/// inverse-spectrum term d/(p-1) diverges at p = 1).
double theorem1_bound(const SpectrumSpec& spec, int d, int p);

/// U diag(sigma) V^H with Haar-distributed factors from QR of Gaussians.
ComplexMatrix random_matrix_with_spectrum(const SpectrumSpec& spec, RngStream& rng);

struct BoundCheckReport {
  std::string spec_id;
  int d = 0;
  int p = 2;
  int l = 2;  // d + p
  double bound = 0.0;
  double empirical_mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  bool pass = false;  // mean <= bound*(1+slack) + 3*std_error (+ tiny noise floor)
};

/// Mean sketch residual over fresh (matrix, G) pairs per trial against
/// the theorem bound.
BoundCheckReport empirical_residual_mean(const SpectrumSpec& spec, int d, int p,
                                         int trials, RngStream& rng,
                                         double slack = 0.05);

/// Standard verification suite: flat, geometric decays, rank-deficient
/// and two-tier spectra.
std::vector<SpectrumSpec> standard_spectrum_suite(int nt = 64, int m = 8);

}  // namespace chanrecon
