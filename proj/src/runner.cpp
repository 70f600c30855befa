#include "scthresh/runner.hpp"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "scthresh/errors.hpp"
#include "scthresh/exact.hpp"
#include "scthresh/io.hpp"
#include "scthresh/polygons.hpp"

namespace scthresh {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json model_json(const CouplingModel& model) {
  json j;
  switch (model.kind) {
    case CouplingModel::Kind::NearestNeighbor:
      j["kind"] = "nn";
      j["J"] = model.j;
      break;
    case CouplingModel::Kind::StripedOhmic:
      j["kind"] = "striped";
      j["J"] = model.j;
      j["range"] = model.range;
      break;
    case CouplingModel::Kind::FullOhmic:
      j["kind"] = "ohmic";
      j["range"] = model.range;
      j["include_imaginary"] = model.include_imaginary;
      break;
  }
  return j;
}

std::string plot_script(const std::vector<std::pair<int, std::string>>& curves) {
  std::ostringstream out;
  out << "#!/usr/bin/env python3\n"
      << "\"\"\"Plot fidelity curves produced by a scan; run from the output directory.\"\"\"\n"
      << "import csv\n"
      << "import matplotlib\n"
      << "matplotlib.use(\"Agg\")\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "curves = {\n";
  for (const auto& [d, file] : curves) {
    out << "    " << d << ": \"" << file << "\",\n";
  }
  out << "}\n\n"
      << "for d, path in curves.items():\n"
      << "    betas, fs, errs = [], [], []\n"
      << "    with open(path) as fh:\n"
      << "        for row in csv.DictReader(fh):\n"
      << "            betas.append(float(row[\"beta\"]))\n"
      << "            fs.append(float(row[\"F\"]))\n"
      << "            errs.append(float(row.get(\"F_err\", 0.0) or 0.0))\n"
      << "    plt.errorbar(betas, fs, yerr=errs, marker=\"o\", markersize=3, label=f\"d={d}\")\n\n"
      << "plt.xlabel(\"beta\")\n"
      << "plt.ylabel(\"F\")\n"
      << "plt.ylim(0.65, 1.02)\n"
      << "plt.legend()\n"
      << "plt.grid(alpha=0.3)\n"
      << "plt.savefig(\"fidelity.png\", dpi=160)\n"
      << "print(\"wrote fidelity.png\")\n";
  return out.str();
}

}  // namespace

RunArtifacts run(const RunConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();

  const fs::path outdir(config.output.directory);
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec || !fs::is_directory(outdir)) {
    throw IoError("cannot create output directory: " + outdir.string());
  }

  RunArtifacts artifacts;
  json meta;
  meta["version"] = kVersion;
  meta["config"]["engine"] = config.engine == EngineKind::Exact ? "exact"
                             : config.engine == EngineKind::Mc ? "mc"
                                                               : "auto";
  meta["config"]["model"] = model_json(config.model);
  meta["config"]["lattice"]["d"] = config.distances;
  meta["config"]["beta"]["list"] = config.betas;
  if (config.bath) {
    meta["config"]["beta"]["bath"] = {{"lambda", config.bath->lambda},
                                      {"omega0", config.bath->omega0},
                                      {"v", config.bath->v},
                                      {"delta", config.bath->delta}};
    meta["config"]["beta"]["derived_beta"] = config.betas.front();
  }
  meta["config"]["mc"] = {{"sweeps", config.mc.sweeps},
                          {"burn_in", config.mc.resolved_burn_in()},
                          {"chains", config.mc.chains},
                          {"bins", config.mc.bins},
                          {"seed", config.mc.seed},
                          {"replica_exchange", config.mc.replica_exchange}};
  meta["config"]["output"] = {{"directory", config.output.directory},
                              {"csv", config.output.csv},
                              {"json", config.output.json},
                              {"emit_plot_script", config.output.emit_plot_script}};

  // Threshold predictor from a fresh polygon census. The full ohmic model has
  // no predictor: with every pair interacting there is no threshold.
  double predictor = 0.0;
  const PolygonCensus census = enumerate_polygons(14);
  const MuEstimate mu = estimate_mu(census);
  meta["derived"]["mu_hat"] = mu.mu_hat;
  if (config.model.kind != CouplingModel::Kind::FullOhmic && config.model.j > 0.0) {
    int n = 0;
    if (config.model.kind == CouplingModel::Kind::StripedOhmic) {
      const int reference_d =
          std::max(4, static_cast<int>(2.0 * config.model.range) + 2);
      n = neighbor_count(build_layout(reference_d), config.model);
      meta["derived"]["striped_neighbor_count"] = n;
    }
    if (config.model.kind == CouplingModel::Kind::NearestNeighbor || n >= 1) {
      predictor = predict_beta_c(config.model, mu.mu_hat, n);
      meta["derived"]["predictor_beta_c"] = predictor;
    }
  }

  std::vector<FidelityCurve> curves;
  std::vector<std::pair<int, std::string>> curve_files;
  for (int d : config.distances) {
    const auto t_d = std::chrono::steady_clock::now();
    const CodeLayout layout = build_layout(d);
    const CouplingMatrix coupling = build_coupling(layout, config.model);
    const EngineKind engine = config.engine_for(d);
    const std::string label = "d" + std::to_string(d);

    std::string csv;
    if (engine == EngineKind::Exact) {
      const auto exact = exact_curve(layout, coupling, config.betas);
      curves.push_back(io::curve_from_exact(d, config.model.describe(), exact));
      csv = io::exact_curve_csv(exact);
    } else {
      const auto mc = mc_curve(layout, coupling, config.betas, config.mc);
      curves.push_back(io::curve_from_mc(d, config.model.describe(), mc));
      csv = io::mc_curve_csv(mc);
    }
    meta["engines"][label] = engine == EngineKind::Exact ? "exact" : "mc";
    meta["timing_seconds"][label] = seconds_since(t_d);

    if (config.output.csv) {
      const std::string filename = "curve_" + label + ".csv";
      io::write_file((outdir / filename).string(), csv);
      artifacts.curve_files.push_back((outdir / filename).string());
      curve_files.emplace_back(d, filename);
    }
  }

  if (curves.size() >= 2 && config.output.json) {
    ThresholdReport report = threshold_report(curves, predictor);
    if (config.model.kind == CouplingModel::Kind::FullOhmic) {
      report.notes.push_back(
          "no analytic predictor: every qubit pair interacts, so no threshold is expected");
    } else {
      report.notes.push_back(
          "predictor ln(mu)/(8J) for nearest neighbors and ln(mu)/(nJ) for range-limited "
          "models disagree at n=4; both are straight-wall estimates, measured crossings "
          "are the reference");
    }
    artifacts.report_file = (outdir / "threshold_report.json").string();
    io::write_file(artifacts.report_file, io::report_json(report).dump(2) + "\n");
  }

  if (config.output.emit_plot_script && !curve_files.empty()) {
    artifacts.plot_script_file = (outdir / "plot.py").string();
    io::write_file(artifacts.plot_script_file, plot_script(curve_files));
  }

  meta["timing_seconds"]["total"] = seconds_since(t_start);
  for (const std::string& f : artifacts.curve_files) {
    meta["outputs"].push_back(fs::path(f).filename().string());
  }
  if (!artifacts.report_file.empty()) meta["outputs"].push_back("threshold_report.json");
  if (!artifacts.plot_script_file.empty()) meta["outputs"].push_back("plot.py");

  artifacts.metadata_file = (outdir / "run_meta.json").string();
  io::write_file(artifacts.metadata_file, meta.dump(2) + "\n");
  return artifacts;
}

}  // namespace scthresh
