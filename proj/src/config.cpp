#include "chanrecon/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chanrecon {

namespace {

using nlohmann::json;

std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream oss;
  oss << "invalid config (" << problems.size() << " problem(s)):";
  for (const auto& p : problems) oss << "\n  - " << p;
  return oss.str();
}

/// Pulls fields out of a json section, collecting type errors instead of
/// throwing on the first one.
class SectionReader {
 public:
  SectionReader(const json& root, std::string name, std::vector<std::string>& problems)
      : root_(root), name_(std::move(name)), problems_(problems) {}

  template <typename T>
  void get(const char* key, T& out) {
    if (!root_.contains(key)) return;
    try {
      out = root_.at(key).get<T>();
    } catch (const json::exception& e) {
      problems_.push_back(name_ + "." + key + ": " + e.what());
    }
  }

 private:
  const json& root_;
  std::string name_;
  std::vector<std::string>& problems_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), violations(std::move(problems)) {}

RunConfig validate_config(const std::string& raw_text) {
  json doc;
  try {
    doc = json::parse(raw_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("parse error: ") + e.what()});
  }
  if (!doc.is_object()) {
    throw ConfigError({"top level must be a JSON object"});
  }

  std::vector<std::string> problems;
  RunConfig cfg;

  SectionReader top(doc, "", problems);
  top.get("config_version", cfg.config_version);
  top.get("master_seed", cfg.master_seed);
  top.get("output_dir", cfg.output_dir);
  top.get("bandwidth_mhz", cfg.bandwidth_mhz);
  top.get("streams_per_user", cfg.streams_per_user);
  top.get("noise_var", cfg.noise_var);

  if (doc.contains("scenario")) {
    const json& sc = doc.at("scenario");
    SectionReader r(sc, "scenario", problems);
    r.get("n_azimuth", cfg.scenario.bs_array.n_azimuth);
    r.get("n_elevation", cfg.scenario.bs_array.n_elevation);
    r.get("element_spacing", cfg.scenario.bs_array.element_spacing);
    std::string pol = "cross";
    r.get("polarization", pol);
    if (pol == "cross") {
      cfg.scenario.bs_array.polarization = Polarization::cross_0_90;
    } else if (pol == "single") {
      cfg.scenario.bs_array.polarization = Polarization::single;
    } else {
      problems.push_back("scenario.polarization: must be \"cross\" or \"single\"");
    }
    double carrier_ghz = 2.0;
    r.get("carrier_frequency_ghz", carrier_ghz);
    if (carrier_ghz > 0.0) {
      cfg.scenario.bs_array.carrier_wavelength = 0.299792458 / carrier_ghz;
    } else {
      problems.push_back("scenario.carrier_frequency_ghz: must be > 0");
    }
    r.get("num_users", cfg.scenario.num_users);
    r.get("rx_antennas", cfg.scenario.rx_antennas);
    r.get("n_rb", cfg.scenario.n_rb);
    r.get("n_sc", cfg.scenario.n_sc);
    r.get("num_rays", cfg.scenario.num_rays);
    r.get("subpaths_per_ray", cfg.scenario.subpaths_per_ray);
    r.get("ray_power_decay_db", cfg.scenario.ray_power_decay_db);
    r.get("ray_angle_spread_deg", cfg.scenario.ray_angle_spread_deg);
    r.get("subpath_spread_deg", cfg.scenario.subpath_spread_deg);
    r.get("xpr_db", cfg.scenario.xpr_db);
    r.get("max_doppler_hz", cfg.scenario.max_doppler_hz);
    r.get("delay_spread_s", cfg.scenario.delay_spread_s);
    r.get("subcarrier_spacing_hz", cfg.scenario.subcarrier_spacing_hz);
    r.get("los_k_factor", cfg.scenario.los_k_factor);
  }

  if (doc.contains("methods")) {
    SectionReader r(doc.at("methods"), "methods", problems);
    r.get("direct_svd", cfg.methods.direct_svd);
    r.get("method1_l", cfg.methods.method1_l);
  }
  if (doc.contains("simulate")) {
    SectionReader r(doc.at("simulate"), "simulate", problems);
    r.get("num_drops", cfg.simulate.num_drops);
    r.get("snr_db", cfg.simulate.snr_db);
  }
  if (doc.contains("flops")) {
    SectionReader r(doc.at("flops"), "flops", problems);
    r.get("nt_min", cfg.flops.nt_min);
    r.get("nt_max", cfg.flops.nt_max);
    r.get("nt_step", cfg.flops.nt_step);
    r.get("m", cfg.flops.m);
    r.get("s", cfg.flops.s);
    r.get("l_list", cfg.flops.l_list);
    r.get("n_sub", cfg.flops.n_sub);
  }
  if (doc.contains("bound")) {
    SectionReader r(doc.at("bound"), "bound", problems);
    r.get("nt", cfg.bound.nt);
    r.get("m", cfg.bound.m);
    r.get("trials", cfg.bound.trials);
    r.get("slack", cfg.bound.slack);
  }

  // Cross-field constraints.
  if (cfg.config_version != 1) {
    problems.push_back("config_version: only version 1 is supported");
  }
  int nt = cfg.scenario.bs_array.num_elements();
  if (cfg.scenario.bs_array.n_azimuth < 1 || cfg.scenario.bs_array.n_elevation < 1) {
    problems.push_back("scenario: BS array dimensions must be >= 1");
  }
  if (cfg.scenario.num_users < 1) problems.push_back("scenario.num_users: must be >= 1");
  if (cfg.scenario.rx_antennas < 1) {
    problems.push_back("scenario.rx_antennas: must be >= 1");
  }
  if (cfg.scenario.n_rb < 1 || cfg.scenario.n_sc < 1) {
    problems.push_back("scenario: n_rb and n_sc must be >= 1");
  }
  if (cfg.scenario.num_rays < 1 || cfg.scenario.subpaths_per_ray < 1) {
    problems.push_back("scenario: num_rays and subpaths_per_ray must be >= 1");
  }
  if (cfg.streams_per_user < 1) {
    problems.push_back("streams_per_user: must be >= 1");
  }
  if (cfg.streams_per_user > cfg.scenario.rx_antennas) {
    problems.push_back("streams_per_user: M >= S violated (S exceeds rx_antennas)");
  }
  if (cfg.scenario.num_users * cfg.streams_per_user > nt) {
    problems.push_back("ZF feasibility violated: K*S exceeds Nt (" +
                       std::to_string(cfg.scenario.num_users) + "*" +
                       std::to_string(cfg.streams_per_user) + " > " +
                       std::to_string(nt) + ")");
  }
  for (int l : cfg.methods.method1_l) {
    if (!(cfg.scenario.rx_antennas >= l && l >= cfg.streams_per_user)) {
      problems.push_back("methods.method1_l: M >= L >= S violated for L=" +
                         std::to_string(l));
    }
  }
  if (!(cfg.noise_var > 0.0)) problems.push_back("noise_var: must be > 0");
  if (cfg.simulate.num_drops < 1) {
    problems.push_back("simulate.num_drops: must be >= 1");
  }
  if (cfg.simulate.snr_db.empty()) {
    problems.push_back("simulate.snr_db: must list at least one SNR point");
  }
  if (cfg.flops.nt_min < 1 || cfg.flops.nt_max < cfg.flops.nt_min ||
      cfg.flops.nt_step < 1) {
    problems.push_back("flops: require 1 <= nt_min <= nt_max and nt_step >= 1");
  }
  for (long long l : cfg.flops.l_list) {
    if (!(cfg.flops.m >= l && l >= cfg.flops.s)) {
      problems.push_back("flops.l_list: M >= L >= S violated for L=" +
                         std::to_string(l));
    }
  }
  if (cfg.bound.m < 1 || cfg.bound.nt < cfg.bound.m) {
    problems.push_back("bound: require nt >= m >= 1");
  }
  if (cfg.bound.trials < 100) problems.push_back("bound.trials: must be >= 100");

  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError({"cannot open config file: " + path});
  }
  std::ostringstream oss;
  oss << in.rdbuf();
  return validate_config(oss.str());
}

std::string default_config_json() {
  RunConfig d;
  json doc = {
      {"config_version", d.config_version},
      {"master_seed", d.master_seed},
      {"output_dir", d.output_dir},
      {"bandwidth_mhz", d.bandwidth_mhz},
      {"streams_per_user", d.streams_per_user},
      {"noise_var", d.noise_var},
      {"scenario",
       {{"n_azimuth", d.scenario.bs_array.n_azimuth},
        {"n_elevation", d.scenario.bs_array.n_elevation},
        {"element_spacing", d.scenario.bs_array.element_spacing},
        {"polarization", "cross"},
        {"carrier_frequency_ghz", 2.0},
        {"num_users", d.scenario.num_users},
        {"rx_antennas", d.scenario.rx_antennas},
        {"n_rb", d.scenario.n_rb},
        {"n_sc", d.scenario.n_sc},
        {"num_rays", d.scenario.num_rays},
        {"subpaths_per_ray", d.scenario.subpaths_per_ray},
        {"ray_power_decay_db", d.scenario.ray_power_decay_db},
        {"ray_angle_spread_deg", d.scenario.ray_angle_spread_deg},
        {"subpath_spread_deg", d.scenario.subpath_spread_deg},
        {"xpr_db", d.scenario.xpr_db},
        {"max_doppler_hz", d.scenario.max_doppler_hz},
        {"delay_spread_s", d.scenario.delay_spread_s},
        {"subcarrier_spacing_hz", d.scenario.subcarrier_spacing_hz},
        {"los_k_factor", d.scenario.los_k_factor}}},
      {"methods",
       {{"direct_svd", d.methods.direct_svd}, {"method1_l", d.methods.method1_l}}},
      {"simulate",
       {{"num_drops", d.simulate.num_drops}, {"snr_db", d.simulate.snr_db}}},
      {"flops",
       {{"nt_min", d.flops.nt_min},
        {"nt_max", d.flops.nt_max},
        {"nt_step", d.flops.nt_step},
        {"m", d.flops.m},
        {"s", d.flops.s},
        {"l_list", d.flops.l_list},
        {"n_sub", d.flops.n_sub}}},
      {"bound",
       {{"nt", d.bound.nt},
        {"m", d.bound.m},
        {"trials", d.bound.trials},
        {"slack", d.bound.slack}}},
  };
  return doc.dump(2) + "\n";
}

}  // namespace chanrecon
