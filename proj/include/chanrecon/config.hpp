#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chanrecon/channel3d.hpp"
#include "chanrecon/link.hpp"

namespace chanrecon {

struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<std::string> problems);
  std::vector<std::string> violations;
};

struct FlopsSection {
  long long nt_min = 32;
  long long nt_max = 256;
  long long nt_step = 8;
  long long m = 8;
  long long s = 2;
  std::vector<long long> l_list = {2, 4, 6, 8};
  long long n_sub = 1;
};

struct BoundSection {
  int nt = 64;
  int m = 8;
  int trials = 1000;
  double slack = 0.05;
};

struct SimulateSection {
  int num_drops = 100;
  std::vector<double> snr_db = {0.0, 10.0, 20.0, 30.0, 40.0};
};

struct MethodsSection {
  bool direct_svd = true;
  std::vector<int> method1_l = {2, 4, 6, 8};
};

/// Full run configuration; defaults mirror the standard simulation
/// setup (128-antenna dual-polarized 8x8 BS, 7 users, 8 rx antennas,
/// 2 streams).
struct RunConfig {
  int config_version = 1;
  std::uint64_t master_seed = 20240824;
  std::string output_dir = "out";
  double bandwidth_mhz = 20.0;  // presentation-only bits/s multiplier
  ScenarioConfig scenario;
  int streams_per_user = 2;
  double noise_var = 1.0;
  MethodsSection methods;
  SimulateSection simulate;
  FlopsSection flops;
  BoundSection bound;
};

/// Parse and validate a JSON config document. Collects every violation
/// before throwing, so a bad file reports all problems at once.
RunConfig validate_config(const std::string& raw_text);

RunConfig load_config_file(const std::string& path);

/// The built-in defaults serialized back out (documentation aid).
std::string default_config_json();

}  // namespace chanrecon
