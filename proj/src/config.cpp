#include "scthresh/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "scthresh/errors.hpp"
#include "scthresh/exact.hpp"

namespace scthresh {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, sep)) parts.push_back(trim(item));
  return parts;
}

int plaquette_count(int d) { return d * (d - 1); }

// Raw key/value table with every violation collected along the way.
class Parser {
 public:
  explicit Parser(const std::string& text) {
    std::stringstream stream(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(stream, line)) {
      ++lineno;
      const auto comment = line.find('#');
      if (comment != std::string::npos) line = line.substr(0, comment);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          fail("line " + std::to_string(lineno), "malformed section header");
          continue;
        }
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        fail("line " + std::to_string(lineno), "expected key = value");
        continue;
      }
      const std::string key =
          (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (values_.count(key)) {
        fail(key, "duplicate key");
        continue;
      }
      values_[key] = value;
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    consumed_.insert(key);
    return it->second;
  }

  std::optional<double> take_double(const std::string& key) {
    const auto raw = take(key);
    if (!raw) return std::nullopt;
    try {
      std::size_t used = 0;
      const double v = std::stod(*raw, &used);
      if (used != raw->size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(key, "not a number: '" + *raw + "'");
      return std::nullopt;
    }
  }

  std::optional<std::uint64_t> take_uint(const std::string& key) {
    const auto raw = take(key);
    if (!raw) return std::nullopt;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(*raw, &used);
      if (used != raw->size() || v < 0) throw std::invalid_argument("");
      return static_cast<std::uint64_t>(v);
    } catch (...) {
      fail(key, "not a nonnegative integer: '" + *raw + "'");
      return std::nullopt;
    }
  }

  std::optional<bool> take_bool(const std::string& key) {
    const auto raw = take(key);
    if (!raw) return std::nullopt;
    if (*raw == "true" || *raw == "1" || *raw == "on") return true;
    if (*raw == "false" || *raw == "0" || *raw == "off") return false;
    fail(key, "not a boolean: '" + *raw + "'");
    return std::nullopt;
  }

  void fail(const std::string& key, const std::string& message) {
    violations_.push_back({key, message});
  }

  void report_unknown_keys() {
    for (const auto& [key, value] : values_) {
      if (!consumed_.count(key)) fail(key, "unknown key");
    }
  }

  std::vector<ConfigViolation> violations() { return std::move(violations_); }
  bool ok() const { return violations_.empty(); }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> consumed_;
  std::vector<ConfigViolation> violations_;
};

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<ConfigViolation> violations)
    : std::runtime_error("config validation failed with " +
                         std::to_string(violations.size()) + " violation(s)"),
      violations_(std::move(violations)) {}

EngineKind RunConfig::engine_for(int distance) const {
  if (engine != EngineKind::Auto) return engine;
  return plaquette_count(distance) <= kExactPlaquetteCap ? EngineKind::Exact : EngineKind::Mc;
}

RunConfig parse_config(const std::string& text) {
  Parser parser(text);
  RunConfig config;

  // engine
  if (const auto value = parser.take("engine")) {
    if (*value == "exact") {
      config.engine = EngineKind::Exact;
    } else if (*value == "mc") {
      config.engine = EngineKind::Mc;
    } else if (*value == "auto") {
      config.engine = EngineKind::Auto;
    } else {
      parser.fail("engine", "must be exact, mc or auto, got '" + *value + "'");
    }
  }

  // [model]
  const auto kind = parser.take("model.kind");
  bool model_known = false;
  if (!kind) {
    parser.fail("model.kind", "required key is missing");
  } else if (*kind == "nn") {
    config.model.kind = CouplingModel::Kind::NearestNeighbor;
    model_known = true;
  } else if (*kind == "striped") {
    config.model.kind = CouplingModel::Kind::StripedOhmic;
    model_known = true;
  } else if (*kind == "ohmic") {
    config.model.kind = CouplingModel::Kind::FullOhmic;
    model_known = true;
  } else {
    parser.fail("model.kind", "must be nn, striped or ohmic, got '" + *kind + "'");
  }

  const bool wants_range =
      model_known && config.model.kind != CouplingModel::Kind::NearestNeighbor;
  if (const auto j = parser.take_double("model.J")) {
    if (*j < 0.0) {
      parser.fail("model.J", "must be nonnegative");
    } else {
      config.model.j = *j;
    }
  }
  const auto range = parser.take_double("model.range");
  const auto include_imaginary = parser.take_bool("model.include_imaginary");
  if (wants_range) {
    if (range) {
      if (*range < 0.0) {
        parser.fail("model.range", "must be nonnegative");
      } else {
        config.model.range = *range;
      }
    }
  } else if (model_known && range) {
    parser.fail("model.range", "only meaningful for striped and ohmic models");
  }
  if (include_imaginary) {
    if (model_known && config.model.kind != CouplingModel::Kind::FullOhmic) {
      parser.fail("model.include_imaginary", "only meaningful for the ohmic model");
    } else {
      config.model.include_imaginary = *include_imaginary;
    }
  }

  // [lattice]
  if (const auto ds = parser.take("lattice.d")) {
    for (const std::string& part : split(*ds, ',')) {
      try {
        std::size_t used = 0;
        const int d = std::stoi(part, &used);
        if (used != part.size() || d < 1) throw std::invalid_argument("");
        config.distances.push_back(d);
      } catch (...) {
        parser.fail("lattice.d", "not a positive integer: '" + part + "'");
      }
    }
    if (config.distances.empty()) parser.fail("lattice.d", "no lattice sizes given");
  } else {
    parser.fail("lattice.d", "required key is missing");
  }

  // [beta] -- exactly one of: explicit list, min/max/steps grid, bath params.
  const auto beta_list = parser.take("beta.list");
  const auto beta_min = parser.take_double("beta.min");
  const auto beta_max = parser.take_double("beta.max");
  const auto beta_steps = parser.take_uint("beta.steps");
  const auto lambda = parser.take_double("beta.lambda");
  const auto omega0 = parser.take_double("beta.omega0");
  const auto velocity = parser.take_double("beta.v");
  const auto delta = parser.take_double("beta.delta");

  const bool has_grid = beta_min || beta_max || beta_steps;
  const bool has_bath = lambda || omega0 || velocity || delta;
  const int forms = (beta_list ? 1 : 0) + (has_grid ? 1 : 0) + (has_bath ? 1 : 0);
  if (forms == 0) {
    parser.fail("beta", "one of beta.list, beta.min/max/steps or bath parameters is required");
  } else if (forms > 1) {
    parser.fail("beta", "beta.list, beta.min/max/steps and bath parameters are exclusive");
  } else if (beta_list) {
    for (const std::string& part : split(*beta_list, ',')) {
      try {
        std::size_t used = 0;
        const double b = std::stod(part, &used);
        if (used != part.size() || b < 0.0) throw std::invalid_argument("");
        config.betas.push_back(b);
      } catch (...) {
        parser.fail("beta.list", "not a nonnegative number: '" + part + "'");
      }
    }
    if (!std::is_sorted(config.betas.begin(), config.betas.end())) {
      parser.fail("beta.list", "must be sorted ascending");
    }
  } else if (has_grid) {
    if (!beta_min || !beta_max || !beta_steps) {
      parser.fail("beta", "grid form needs all of beta.min, beta.max, beta.steps");
    } else if (*beta_min < 0.0 || *beta_max < *beta_min) {
      parser.fail("beta", "need 0 <= min <= max");
    } else if (*beta_steps < 1) {
      parser.fail("beta.steps", "must be at least 1");
    } else {
      const auto steps = static_cast<std::size_t>(*beta_steps);
      for (std::size_t i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0
                                    : static_cast<double>(i) / static_cast<double>(steps - 1);
        config.betas.push_back(*beta_min + t * (*beta_max - *beta_min));
      }
    }
  } else {
    if (!lambda || !omega0 || !velocity || !delta) {
      parser.fail("beta", "bath form needs all of beta.lambda, beta.omega0, beta.v, beta.delta");
    } else {
      BathParams bath{*lambda, *omega0, *velocity, *delta};
      try {
        config.betas.push_back(beta_from_bath(bath));
        config.bath = bath;
        // A bath also fixes the correlator range; fill it unless given.
        if (wants_range && !range) config.model.range = bath.v * bath.delta;
      } catch (const std::invalid_argument& err) {
        parser.fail("beta.v", err.what());
      }
    }
  }
  if (wants_range && !range && !config.bath) {
    parser.fail("model.range", "required for striped and ohmic models");
  }

  // [mc]
  if (const auto sweeps = parser.take_uint("mc.sweeps")) {
    if (*sweeps < 1) {
      parser.fail("mc.sweeps", "must be positive");
    } else {
      config.mc.sweeps = *sweeps;
    }
  }
  if (const auto burn = parser.take_uint("mc.burn_in")) config.mc.burn_in = *burn;
  if (const auto chains = parser.take_uint("mc.chains")) {
    if (*chains < 1 || *chains > 4096) {
      parser.fail("mc.chains", "must be in [1, 4096]");
    } else {
      config.mc.chains = static_cast<int>(*chains);
    }
  }
  if (const auto bins = parser.take_uint("mc.bins")) {
    if (*bins < 2) {
      parser.fail("mc.bins", "must be at least 2");
    } else {
      config.mc.bins = static_cast<int>(*bins);
    }
  }
  if (const auto seed = parser.take_uint("mc.seed")) config.mc.seed = *seed;
  if (const auto re = parser.take_bool("mc.replica_exchange")) config.mc.replica_exchange = *re;
  if (config.mc.resolved_burn_in() >= config.mc.sweeps) {
    parser.fail("mc.burn_in", "must be smaller than mc.sweeps");
  }

  // [output]
  if (const auto dir = parser.take("output.directory")) {
    config.output.directory = *dir;
  } else {
    const char* env = std::getenv("SCTHRESH_OUTPUT_DIR");
    config.output.directory = (env && *env) ? env : ".";
  }
  if (const auto formats = parser.take("output.formats")) {
    config.output.csv = false;
    config.output.json = false;
    for (const std::string& f : split(*formats, ',')) {
      if (f == "csv") {
        config.output.csv = true;
      } else if (f == "json") {
        config.output.json = true;
      } else {
        parser.fail("output.formats", "unknown format '" + f + "' (expected csv, json)");
      }
    }
  }
  if (const auto plot = parser.take_bool("output.emit_plot_script")) {
    config.output.emit_plot_script = *plot;
  }

  // Cross-field checks: engine capacity and weight realness.
  for (int d : config.distances) {
    if (config.engine == EngineKind::Exact && plaquette_count(d) > kExactPlaquetteCap) {
      parser.fail("lattice.d",
                  "d=" + std::to_string(d) + " has " + std::to_string(plaquette_count(d)) +
                      " plaquettes, above the exact enumeration cap of " +
                      std::to_string(kExactPlaquetteCap));
    }
    if (config.engine_for(d) == EngineKind::Mc && model_known &&
        config.model.kind == CouplingModel::Kind::FullOhmic && config.model.include_imaginary) {
      parser.fail("model.include_imaginary",
                  "d=" + std::to_string(d) +
                      " requires the Monte Carlo engine, which supports real weights only");
    }
  }

  parser.report_unknown_keys();
  if (!parser.ok()) throw ConfigValidationError(parser.violations());
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace scthresh
