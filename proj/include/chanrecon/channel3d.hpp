#pragma once

#include <array>
#include <functional>
#include <vector>

#include "chanrecon/numerics.hpp"
#include "chanrecon/rng.hpp"
#include "chanrecon/types.hpp"

namespace chanrecon {

enum class Polarization { single, cross_0_90 };

/// Planar transmit array: n_azimuth x n_elevation grid, optionally
/// duplicated into two slant polarizations (0/+90) at the same physical
/// locations.
struct ArrayConfig {
  int n_azimuth = 8;
  int n_elevation = 8;
  double element_spacing = 0.5;  // wavelengths, both directions
  Polarization polarization = Polarization::cross_0_90;
  double carrier_wavelength = 0.299792458 / 2.0;  // meters, 2 GHz

  int num_elements() const {
    int per_pol = n_azimuth * n_elevation;
    return polarization == Polarization::cross_0_90 ? 2 * per_pol : per_pol;
  }
};

/// [sin(zen)cos(az), sin(zen)sin(az), cos(zen)]; zen = 90 deg is the
/// horizon, zen = 0 deg the zenith.
Vector3 unit_direction_vector(double zenith_deg, double azimuth_deg);

/// Element location in wavelength units; azimuth along x, elevation
/// along z; the two polarizations of one grid point are co-located.
Vector3 element_position(const ArrayConfig& config, int element_index);

/// Slant angle (degrees) of an element: 0 for the first polarization
/// block, 90 for the second.
double element_slant_deg(const ArrayConfig& config, int element_index);

/// Radiation pattern returning (F_theta, F_phi) for a departure/arrival
/// direction.
struct FieldPattern {
  std::function<Eigen::Vector2d(double zenith_deg, double azimuth_deg)> eval;

  static FieldPattern isotropic();          // (1, 0)
  static FieldPattern slant(double slant_deg);  // (cos s, sin s)
};

/// One ray: a cluster of n_subpaths sub-paths sharing a power and delay.
struct RayClusterParams {
  double power = 1.0;  // linear, P_n
  int n_subpaths = 1;
  std::vector<double> zoa, aoa, zod, aod;            // degrees, per sub-path
  std::vector<std::array<double, 4>> init_phases;    // {tt, tp, pt, pp}, radians
  std::vector<double> xpr;                           // linear, per sub-path
  std::vector<double> doppler;                       // Hz, per sub-path
  double delay = 0.0;                                // seconds

  void validate() const;
};

struct LosParams {
  double k_factor = 0.0;  // linear Ricean K
  double zoa = 90.0, aoa = 0.0, zod = 90.0, aod = 0.0;  // degrees
  double phase = 0.0;     // radians
  double doppler = 0.0;   // Hz
};

/// N_RB * N_SC per-subcarrier M x Nt channels of one user over one
/// precoding unit.
struct PuChannelSet {
  std::vector<ComplexMatrix> per_subcarrier;
  int user_id = 0;
  int pu_id = 0;
};

/// Sub-path sum for one (rx u, tx s) pair of one ray at time t.
Complex nlos_ray_coefficient(int u, int s, const RayClusterParams& ray,
                             const std::vector<Vector3>& rx_positions,
                             const std::vector<Vector3>& tx_positions,
                             const std::vector<FieldPattern>& rx_patterns,
                             const std::vector<FieldPattern>& tx_patterns,
                             double t);

/// Ricean combination: scales the NLOS value by sqrt(1/(K+1)) and, for
/// ray_index == 1 only, adds the specular term weighted sqrt(K/(K+1)).
Complex los_ray_coefficient(int u, int s, Complex nlos_value, int ray_index,
                            const LosParams& los,
                            const std::vector<Vector3>& rx_positions,
                            const std::vector<Vector3>& tx_positions,
                            const std::vector<FieldPattern>& rx_patterns,
                            const std::vector<FieldPattern>& tx_patterns,
                            double t);

/// Full M x Nt matrix of one ray at time t. Equal, entry for entry, to
/// nlos_ray_coefficient but assembled with rank-2 outer products.
ComplexMatrix nlos_ray_matrix(const RayClusterParams& ray,
                              const std::vector<Vector3>& rx_positions,
                              const std::vector<Vector3>& tx_positions,
                              const std::vector<FieldPattern>& rx_patterns,
                              const std::vector<FieldPattern>& tx_patterns,
                              double t);

/// Scenario knobs for synthetic ray generation. Per-ray powers are
/// normalized to sum to one; angles are drawn uniformly around the
/// given means.
struct ScenarioConfig {
  ArrayConfig bs_array;
  int num_users = 7;
  int rx_antennas = 8;  // M; dual-polarized linear array when even
  int n_rb = 1;
  int n_sc = 1;
  int num_rays = 6;
  int subpaths_per_ray = 8;
  double ray_power_decay_db = 3.0;     // power step between consecutive rays
  double mean_zod = 100.0, mean_aod = 0.0;
  double mean_zoa = 90.0, mean_aoa = 180.0;
  double ray_angle_spread_deg = 20.0;  // ray centers around the means
  double subpath_spread_deg = 5.0;     // sub-paths around the ray center
  double xpr_db = 8.0;
  double max_doppler_hz = 5.55;        // 3 km/h at 2 GHz
  double delay_spread_s = 1e-7;
  double subcarrier_spacing_hz = 15e3;
  double los_k_factor = 0.0;           // 0 = pure NLOS
  bool isotropic_patterns = false;     // override slant patterns (tests)

  int num_subcarriers() const { return n_rb * n_sc; }
  void validate() const;

  std::vector<Vector3> rx_positions() const;
  std::vector<FieldPattern> rx_field_patterns() const;
  std::vector<Vector3> tx_positions() const;
  std::vector<FieldPattern> tx_field_patterns() const;
};

/// Draw the ray parameters of one user.
std::vector<RayClusterParams> draw_rays(const ScenarioConfig& config, RngStream& rng);

/// Channels of one user for one PU; deterministic given the stream.
PuChannelSet build_user_channels(const ScenarioConfig& config, int user_id,
                                 RngStream& rng);

/// One PuChannelSet per user, each from an independent derived stream.
std::vector<PuChannelSet> build_pu_channels(const ScenarioConfig& config,
                                            RngStream& rng);

}  // namespace chanrecon
