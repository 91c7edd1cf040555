#include "chanrecon/channel3d.hpp"

#include <cmath>

namespace chanrecon {

namespace {

constexpr double kDegToRad = M_PI / 180.0;
const Complex kJ{0.0, 1.0};

Complex phase_factor(double radians) { return std::exp(kJ * radians); }

/// Array phase exp(j 2 pi r_hat . d_bar) with d_bar in wavelength units.
Complex array_phase(const Vector3& direction, const Vector3& position_wl) {
  return phase_factor(2.0 * M_PI * direction.dot(position_wl));
}

}  // namespace

Vector3 unit_direction_vector(double zenith_deg, double azimuth_deg) {
  double zen = zenith_deg * kDegToRad;
  double az = azimuth_deg * kDegToRad;
  return {std::sin(zen) * std::cos(az), std::sin(zen) * std::sin(az), std::cos(zen)};
}

Vector3 element_position(const ArrayConfig& config, int element_index) {
  if (element_index < 0 || element_index >= config.num_elements()) {
    throw DimensionError("element_position: index out of range");
  }
  int per_pol = config.n_azimuth * config.n_elevation;
  int physical = element_index % per_pol;  // co-located polarization pair
  int col = physical % config.n_azimuth;
  int row = physical / config.n_azimuth;
  double d = config.element_spacing;
  return {col * d, 0.0, row * d};
}

double element_slant_deg(const ArrayConfig& config, int element_index) {
  if (config.polarization == Polarization::single) return 0.0;
  int per_pol = config.n_azimuth * config.n_elevation;
  return element_index < per_pol ? 0.0 : 90.0;
}

FieldPattern FieldPattern::isotropic() {
  return {[](double, double) { return Eigen::Vector2d(1.0, 0.0); }};
}

FieldPattern FieldPattern::slant(double slant_deg) {
  double s = slant_deg * kDegToRad;
  Eigen::Vector2d value(std::cos(s), std::sin(s));
  return {[value](double, double) { return value; }};
}

void RayClusterParams::validate() const {
  if (power < 0.0 || !std::isfinite(power)) {
    throw std::invalid_argument("ray: power must be finite and >= 0");
  }
  if (n_subpaths < 1) throw std::invalid_argument("ray: n_subpaths must be >= 1");
  auto check_size = [&](const auto& v, const char* name) {
    if (static_cast<int>(v.size()) != n_subpaths) {
      throw std::invalid_argument(std::string("ray: ") + name +
                                  " size does not match n_subpaths");
    }
  };
  check_size(zoa, "zoa");
  check_size(aoa, "aoa");
  check_size(zod, "zod");
  check_size(aod, "aod");
  check_size(init_phases, "init_phases");
  check_size(xpr, "xpr");
  check_size(doppler, "doppler");
  for (int m = 0; m < n_subpaths; ++m) {
    if (!(xpr[m] > 0.0)) {
      throw std::invalid_argument("ray: xpr must be > 0 (kappa^-1 undefined)");
    }
    if (zoa[m] < 0.0 || zoa[m] > 180.0 || zod[m] < 0.0 || zod[m] > 180.0) {
      throw std::invalid_argument("ray: zenith angles must lie in [0, 180]");
    }
    if (!std::isfinite(aoa[m]) || !std::isfinite(aod[m])) {
      throw std::invalid_argument("ray: azimuth angles must be finite");
    }
  }
}

namespace {

Eigen::Matrix2cd nlos_coupling(const std::array<double, 4>& phases, double xpr) {
  double xi = std::sqrt(1.0 / xpr);
  Eigen::Matrix2cd c;
  c << phase_factor(phases[0]), xi * phase_factor(phases[1]),
      xi * phase_factor(phases[2]), phase_factor(phases[3]);
  return c;
}

/// One sub-path contribution assembled as (M x 2) * (2 x 2) * (2 x Nt).
ComplexMatrix subpath_matrix(double zoa, double aoa, double zod, double aod,
                             const Eigen::Matrix2cd& coupling,
                             const std::vector<Vector3>& rx_positions,
                             const std::vector<Vector3>& tx_positions,
                             const std::vector<FieldPattern>& rx_patterns,
                             const std::vector<FieldPattern>& tx_patterns) {
  auto rows = static_cast<Eigen::Index>(rx_positions.size());
  auto cols = static_cast<Eigen::Index>(tx_positions.size());
  Vector3 r_rx = unit_direction_vector(zoa, aoa);
  Vector3 r_tx = unit_direction_vector(zod, aod);
  ComplexMatrix grx(rows, 2);
  for (Eigen::Index u = 0; u < rows; ++u) {
    Eigen::Vector2d f = rx_patterns[u].eval(zoa, aoa);
    Complex ph = array_phase(r_rx, rx_positions[u]);
    grx(u, 0) = f(0) * ph;
    grx(u, 1) = f(1) * ph;
  }
  ComplexMatrix gtx(2, cols);
  for (Eigen::Index s = 0; s < cols; ++s) {
    Eigen::Vector2d f = tx_patterns[s].eval(zod, aod);
    Complex ph = array_phase(r_tx, tx_positions[s]);
    gtx(0, s) = f(0) * ph;
    gtx(1, s) = f(1) * ph;
  }
  return grx * coupling * gtx;
}

}  // namespace

Complex nlos_ray_coefficient(int u, int s, const RayClusterParams& ray,
                             const std::vector<Vector3>& rx_positions,
                             const std::vector<Vector3>& tx_positions,
                             const std::vector<FieldPattern>& rx_patterns,
                             const std::vector<FieldPattern>& tx_patterns,
                             double t) {
  ray.validate();
  Complex acc{0.0, 0.0};
  for (int m = 0; m < ray.n_subpaths; ++m) {
    Eigen::Vector2d frx = rx_patterns[u].eval(ray.zoa[m], ray.aoa[m]);
    Eigen::Vector2d ftx = tx_patterns[s].eval(ray.zod[m], ray.aod[m]);
    Eigen::Matrix2cd coupling = nlos_coupling(ray.init_phases[m], ray.xpr[m]);
    Complex pol = frx.cast<Complex>().transpose() * coupling * ftx.cast<Complex>();
    Complex ph_rx = array_phase(unit_direction_vector(ray.zoa[m], ray.aoa[m]),
                                rx_positions[u]);
    Complex ph_tx = array_phase(unit_direction_vector(ray.zod[m], ray.aod[m]),
                                tx_positions[s]);
    Complex ph_t = phase_factor(2.0 * M_PI * ray.doppler[m] * t);
    acc += pol * ph_rx * ph_tx * ph_t;
  }
  return std::sqrt(ray.power / ray.n_subpaths) * acc;
}

ComplexMatrix nlos_ray_matrix(const RayClusterParams& ray,
                              const std::vector<Vector3>& rx_positions,
                              const std::vector<Vector3>& tx_positions,
                              const std::vector<FieldPattern>& rx_patterns,
                              const std::vector<FieldPattern>& tx_patterns,
                              double t) {
  ray.validate();
  auto rows = static_cast<Eigen::Index>(rx_positions.size());
  auto cols = static_cast<Eigen::Index>(tx_positions.size());
  ComplexMatrix h = ComplexMatrix::Zero(rows, cols);
  for (int m = 0; m < ray.n_subpaths; ++m) {
    Eigen::Matrix2cd coupling = nlos_coupling(ray.init_phases[m], ray.xpr[m]);
    Complex ph_t = phase_factor(2.0 * M_PI * ray.doppler[m] * t);
    h.noalias() += ph_t * subpath_matrix(ray.zoa[m], ray.aoa[m], ray.zod[m],
                                         ray.aod[m], coupling, rx_positions,
                                         tx_positions, rx_patterns, tx_patterns);
  }
  return std::sqrt(ray.power / ray.n_subpaths) * h;
}

Complex los_ray_coefficient(int u, int s, Complex nlos_value, int ray_index,
                            const LosParams& los,
                            const std::vector<Vector3>& rx_positions,
                            const std::vector<Vector3>& tx_positions,
                            const std::vector<FieldPattern>& rx_patterns,
                            const std::vector<FieldPattern>& tx_patterns,
                            double t) {
  if (los.k_factor < 0.0) throw std::invalid_argument("los: k_factor must be >= 0");
  double k = los.k_factor;
  Complex value = std::sqrt(1.0 / (k + 1.0)) * nlos_value;
  if (ray_index != 1) return value;
  Eigen::Vector2d frx = rx_patterns[u].eval(los.zoa, los.aoa);
  Eigen::Vector2d ftx = tx_patterns[s].eval(los.zod, los.aod);
  Eigen::Matrix2cd coupling;
  coupling << phase_factor(los.phase), 0.0, 0.0, -phase_factor(los.phase);
  Complex pol = frx.cast<Complex>().transpose() * coupling * ftx.cast<Complex>();
  Complex ph_rx = array_phase(unit_direction_vector(los.zoa, los.aoa), rx_positions[u]);
  Complex ph_tx = array_phase(unit_direction_vector(los.zod, los.aod), tx_positions[s]);
  Complex ph_t = phase_factor(2.0 * M_PI * los.doppler * t);
  return value + std::sqrt(k / (k + 1.0)) * pol * ph_rx * ph_tx * ph_t;
}

void ScenarioConfig::validate() const {
  if (bs_array.n_azimuth < 1 || bs_array.n_elevation < 1) {
    throw std::invalid_argument("scenario: BS array dimensions must be >= 1");
  }
  if (num_users < 1) throw std::invalid_argument("scenario: num_users must be >= 1");
  if (rx_antennas < 1) throw std::invalid_argument("scenario: rx_antennas must be >= 1");
  if (n_rb < 1 || n_sc < 1) {
    throw std::invalid_argument("scenario: n_rb and n_sc must be >= 1");
  }
  if (num_rays < 1) throw std::invalid_argument("scenario: num_rays must be >= 1");
  if (subpaths_per_ray < 1) {
    throw std::invalid_argument("scenario: subpaths_per_ray must be >= 1");
  }
  if (los_k_factor < 0.0) {
    throw std::invalid_argument("scenario: los_k_factor must be >= 0");
  }
}

std::vector<Vector3> ScenarioConfig::rx_positions() const {
  // Linear 0.5-wavelength array along x; dual-polarized pairs co-located
  // when the antenna count is even.
  std::vector<Vector3> pos(rx_antennas);
  bool dual = rx_antennas % 2 == 0;
  int per_pol = dual ? rx_antennas / 2 : rx_antennas;
  for (int u = 0; u < rx_antennas; ++u) {
    pos[u] = Vector3{0.5 * (u % per_pol), 0.0, 0.0};
  }
  return pos;
}

std::vector<FieldPattern> ScenarioConfig::rx_field_patterns() const {
  std::vector<FieldPattern> pat(rx_antennas);
  bool dual = rx_antennas % 2 == 0;
  int per_pol = dual ? rx_antennas / 2 : rx_antennas;
  for (int u = 0; u < rx_antennas; ++u) {
    if (isotropic_patterns) {
      pat[u] = FieldPattern::isotropic();
    } else {
      pat[u] = FieldPattern::slant(dual && u >= per_pol ? 90.0 : 0.0);
    }
  }
  return pat;
}

std::vector<Vector3> ScenarioConfig::tx_positions() const {
  int nt = bs_array.num_elements();
  std::vector<Vector3> pos(nt);
  for (int s = 0; s < nt; ++s) pos[s] = element_position(bs_array, s);
  return pos;
}

std::vector<FieldPattern> ScenarioConfig::tx_field_patterns() const {
  int nt = bs_array.num_elements();
  std::vector<FieldPattern> pat(nt);
  for (int s = 0; s < nt; ++s) {
    pat[s] = isotropic_patterns
                 ? FieldPattern::isotropic()
                 : FieldPattern::slant(element_slant_deg(bs_array, s));
  }
  return pat;
}

std::vector<RayClusterParams> draw_rays(const ScenarioConfig& config, RngStream& rng) {
  config.validate();
  int n_rays = config.num_rays;
  int n_sub = config.subpaths_per_ray;
  // Exponentially decaying ray powers, normalized to unit total.
  std::vector<double> powers(n_rays);
  double total = 0.0;
  for (int n = 0; n < n_rays; ++n) {
    powers[n] = std::pow(10.0, -config.ray_power_decay_db * n / 10.0);
    total += powers[n];
  }
  double xpr_lin = std::pow(10.0, config.xpr_db / 10.0);
  std::vector<RayClusterParams> rays(n_rays);
  for (int n = 0; n < n_rays; ++n) {
    RayClusterParams& ray = rays[n];
    ray.power = powers[n] / total;
    ray.n_subpaths = n_sub;
    ray.delay = n == 0 ? 0.0 : rng.uniform(0.0, config.delay_spread_s);
    double spread = config.ray_angle_spread_deg;
    double zod_c = config.mean_zod + rng.uniform(-spread, spread);
    double aod_c = config.mean_aod + rng.uniform(-spread, spread);
    double zoa_c = config.mean_zoa + rng.uniform(-spread, spread);
    double aoa_c = config.mean_aoa + rng.uniform(-spread, spread);
    ray.zoa.resize(n_sub);
    ray.aoa.resize(n_sub);
    ray.zod.resize(n_sub);
    ray.aod.resize(n_sub);
    ray.init_phases.resize(n_sub);
    ray.xpr.assign(n_sub, xpr_lin);
    ray.doppler.resize(n_sub);
    double ss = config.subpath_spread_deg;
    auto clamp_zen = [](double z) { return std::min(180.0, std::max(0.0, z)); };
    for (int m = 0; m < n_sub; ++m) {
      ray.zoa[m] = clamp_zen(zoa_c + rng.uniform(-ss, ss));
      ray.aoa[m] = aoa_c + rng.uniform(-ss, ss);
      ray.zod[m] = clamp_zen(zod_c + rng.uniform(-ss, ss));
      ray.aod[m] = aod_c + rng.uniform(-ss, ss);
      for (auto& phi : ray.init_phases[m]) phi = rng.uniform(-M_PI, M_PI);
      ray.doppler[m] = config.max_doppler_hz * std::cos(rng.uniform(0.0, 2.0 * M_PI));
    }
  }
  return rays;
}

PuChannelSet build_user_channels(const ScenarioConfig& config, int user_id,
                                 RngStream& rng) {
  config.validate();
  auto rays = draw_rays(config, rng);
  auto rx_pos = config.rx_positions();
  auto tx_pos = config.tx_positions();
  auto rx_pat = config.rx_field_patterns();
  auto tx_pat = config.tx_field_patterns();

  std::vector<ComplexMatrix> ray_h(rays.size());
  for (std::size_t n = 0; n < rays.size(); ++n) {
    ray_h[n] = nlos_ray_matrix(rays[n], rx_pos, tx_pos, rx_pat, tx_pat, 0.0);
  }

  if (config.los_k_factor > 0.0) {
    LosParams los;
    los.k_factor = config.los_k_factor;
    los.zoa = config.mean_zoa;
    los.aoa = config.mean_aoa;
    los.zod = config.mean_zod;
    los.aod = config.mean_aod;
    los.phase = rng.uniform(-M_PI, M_PI);
    double scale = std::sqrt(1.0 / (los.k_factor + 1.0));
    for (auto& h : ray_h) h *= scale;
    auto rows = static_cast<Eigen::Index>(rx_pos.size());
    auto cols = static_cast<Eigen::Index>(tx_pos.size());
    ComplexMatrix los_h(rows, cols);
    for (Eigen::Index u = 0; u < rows; ++u) {
      for (Eigen::Index s = 0; s < cols; ++s) {
        // los_ray_coefficient with a zero NLOS value isolates the
        // specular term (the Ricean weights are inside).
        los_h(u, s) = los_ray_coefficient(static_cast<int>(u), static_cast<int>(s),
                                          Complex{0.0, 0.0}, 1, los, rx_pos,
                                          tx_pos, rx_pat, tx_pat, 0.0);
      }
    }
    ray_h[0] += los_h;
  }

  PuChannelSet pu;
  pu.user_id = user_id;
  pu.pu_id = 0;
  int n_sub = config.num_subcarriers();
  pu.per_subcarrier.reserve(n_sub);
  for (int k = 0; k < n_sub; ++k) {
    double freq = k * config.subcarrier_spacing_hz;
    ComplexMatrix h = ComplexMatrix::Zero(ray_h[0].rows(), ray_h[0].cols());
    for (std::size_t n = 0; n < rays.size(); ++n) {
      h += std::exp(Complex{0.0, -2.0 * M_PI * freq * rays[n].delay}) * ray_h[n];
    }
    pu.per_subcarrier.push_back(std::move(h));
  }
  return pu;
}

std::vector<PuChannelSet> build_pu_channels(const ScenarioConfig& config,
                                            RngStream& rng) {
  std::vector<PuChannelSet> out;
  out.reserve(config.num_users);
  for (int k = 0; k < config.num_users; ++k) {
    RngStream user_rng = rng.derive(static_cast<std::uint64_t>(k));
    out.push_back(build_user_channels(config, k, user_rng));
  }
  return out;
}

}  // namespace chanrecon
