#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace chanrecon {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Vector3 = Eigen::Vector3d;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RankDeficiencyError : std::runtime_error {
  RankDeficiencyError(const std::string& msg, Eigen::Index rank)
      : std::runtime_error(msg), detected_rank(rank) {}
  Eigen::Index detected_rank;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_finite(const ComplexMatrix& a, const char* name) {
  if (!a.allFinite()) {
    throw NumericalError(std::string(name) + ": non-finite entries");
  }
}

}  // namespace chanrecon
