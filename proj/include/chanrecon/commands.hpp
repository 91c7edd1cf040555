#pragma once

#include "chanrecon/config.hpp"
#include "chanrecon/csv.hpp"

namespace chanrecon {

/// Complexity sweep; columns nt,l,direct,method1,ratio.
CsvArtifact cmd_flops(const RunConfig& cfg, const std::string& out_dir);

/// Link-level sweep over SNR and methods; columns
/// snr_db,method,l,mean_rate,stderr,ro_over_direct_pct.
CsvArtifact cmd_simulate(const RunConfig& cfg, const std::string& out_dir);

/// Theorem bound verification over the (d, p) grid; columns
/// spec_id,d,p,bound,mean,stderr,pass.
CsvArtifact cmd_boundcheck(const RunConfig& cfg, const std::string& out_dir);

}  // namespace chanrecon
