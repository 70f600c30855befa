#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scthresh/coupling.hpp"
#include "scthresh/mc.hpp"

namespace scthresh {

enum class EngineKind { Exact, Mc, Auto };

struct OutputSettings {
  std::string directory;  // default: $SCTHRESH_OUTPUT_DIR or "."
  bool csv = true;
  bool json = true;
  bool emit_plot_script = false;
};

/// One complete scan description, parsed from a sectioned key=value file.
struct RunConfig {
  EngineKind engine = EngineKind::Auto;
  CouplingModel model;
  std::vector<int> distances;
  std::vector<double> betas;
  std::optional<BathParams> bath;  // set when beta came from bath parameters
  McParams mc;
  OutputSettings output;

  /// Engine actually used for one lattice size under this config.
  EngineKind engine_for(int distance) const;
};

struct ConfigViolation {
  std::string key;
  std::string message;
};

/// Carries every violation found in a config, not just the first.
class ConfigValidationError : public std::runtime_error {
 public:
  explicit ConfigValidationError(std::vector<ConfigViolation> violations);
  const std::vector<ConfigViolation>& violations() const { return violations_; }

 private:
  std::vector<ConfigViolation> violations_;
};

/// Parses and validates a config document. Recognized sections and keys:
///
///   engine = exact | mc | auto            (top level, default auto)
///   [model]   kind = nn | striped | ohmic; J; range; include_imaginary
///   [lattice] d = 3 or d = 3,4,5
///   [beta]    min/max/steps, or list = 0.0,0.1,..., or bath parameters
///             lambda/omega0/v/delta (beta is then derived)
///   [mc]      sweeps, burn_in, chains, bins, seed, replica_exchange
///   [output]  directory, formats = csv,json, emit_plot_script
///
/// Throws ConfigValidationError listing every violation.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file. Throws IoError when unreadable.
RunConfig load_config_file(const std::string& path);

}  // namespace scthresh
