#pragma once

#include <string>
#include <vector>

#include "scthresh/config.hpp"

namespace scthresh {

struct RunArtifacts {
  std::vector<std::string> curve_files;
  std::string metadata_file;
  std::string report_file;       // empty when fewer than two sizes
  std::string plot_script_file;  // empty unless requested
};

/// Executes a full scan: per-size fidelity curves, the crossing report when
/// two or more sizes are given, the predictor comparison, a JSON metadata
/// sidecar with every parameter of the run, and optionally a plot script.
/// Curve CSV bytes are identical across reruns of the same config on one
/// platform. Throws IoError on filesystem failures and engine errors
/// (TooLargeForExact etc.) unchanged.
RunArtifacts run(const RunConfig& config);

}  // namespace scthresh
