#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "scthresh/coupling.hpp"
#include "scthresh/crossing.hpp"
#include "scthresh/exact.hpp"
#include "scthresh/geometry.hpp"
#include "scthresh/mc.hpp"
#include "scthresh/polygons.hpp"

namespace scthresh::io {

/// Shortest representation that round-trips a double exactly (17 significant
/// digits).
std::string format_double(double value);

std::string exact_curve_csv(const std::vector<SectorSums>& curve);
std::string mc_curve_csv(const std::vector<McEstimate>& curve);
std::string coupling_csv(const CouplingMatrix& coupling);
std::string polygons_csv(const PolygonCensus& census);

nlohmann::json layout_json(const CodeLayout& layout);
nlohmann::json report_json(const ThresholdReport& report);

FidelityCurve curve_from_exact(int distance, const std::string& model,
                               const std::vector<SectorSums>& curve);
FidelityCurve curve_from_mc(int distance, const std::string& model,
                            const std::vector<McEstimate>& curve);

/// Reads a fidelity curve from a CSV produced by exact-scan, mc-scan or run:
/// requires beta and F columns, picks up F_err when present.
FidelityCurve read_curve_csv(const std::string& path, int distance);

/// Writes content to path, throwing IoError on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace scthresh::io
