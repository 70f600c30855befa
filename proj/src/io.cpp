#include "scthresh/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "scthresh/errors.hpp"

namespace scthresh::io {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string exact_curve_csv(const std::vector<SectorSums>& curve) {
  std::ostringstream out;
  out << "beta,ReT+,ImT+,ReT-,ImT-,F\n";
  for (const auto& s : curve) {
    out << format_double(s.beta) << ',' << format_double(s.t_plus.real()) << ','
        << format_double(s.t_plus.imag()) << ',' << format_double(s.t_minus.real()) << ','
        << format_double(s.t_minus.imag()) << ',' << format_double(s.fidelity) << '\n';
  }
  return out.str();
}

std::string mc_curve_csv(const std::vector<McEstimate>& curve) {
  std::ostringstream out;
  out << "beta,R,R_err,F,F_err,acc_plaquette,acc_sector\n";
  for (const auto& e : curve) {
    out << format_double(e.beta) << ',' << format_double(e.ratio) << ','
        << format_double(e.ratio_stderr) << ',' << format_double(e.fidelity) << ','
        << format_double(e.fidelity_stderr) << ',' << format_double(e.plaquette_acceptance)
        << ',' << format_double(e.sector_acceptance) << '\n';
  }
  return out.str();
}

std::string coupling_csv(const CouplingMatrix& coupling) {
  std::ostringstream out;
  out << "r,s,ReJ,ImJ\n";
  for (const auto& p : coupling.pairs) {
    out << p.r << ',' << p.s << ',' << format_double(p.j.real()) << ','
        << format_double(p.j.imag()) << '\n';
  }
  return out.str();
}

std::string polygons_csv(const PolygonCensus& census) {
  std::ostringstream out;
  out << "length,count\n";
  for (const auto& [len, count] : census.counts) out << len << ',' << count << '\n';
  return out.str();
}

nlohmann::json layout_json(const CodeLayout& layout) {
  nlohmann::json j;
  j["distance"] = layout.distance;
  j["num_qubits"] = layout.num_qubits();
  auto& qubits = j["qubits"] = nlohmann::json::array();
  for (const auto& q : layout.qubits) {
    qubits.push_back({{"id", q.id},
                      {"x", q.x},
                      {"y", q.y},
                      {"orientation", q.orientation == Orientation::Horizontal ? "H" : "V"}});
  }
  j["stars"] = layout.stars;
  j["plaquettes"] = layout.plaquettes;
  j["logical_x"] = layout.logical_x;
  j["logical_z"] = layout.logical_z;
  return j;
}

nlohmann::json report_json(const ThresholdReport& report) {
  nlohmann::json j;
  j["predictor"] = report.predictor;
  auto& crossings = j["crossings"] = nlohmann::json::array();
  for (const auto& c : report.crossings) {
    nlohmann::json entry{{"d1", c.d1},
                         {"d2", c.d2},
                         {"beta_c", c.beta_c},
                         {"bracket", {c.bracket_low, c.bracket_high}},
                         {"beta_c_err", c.beta_c_err},
                         {"method", "linear-interpolation"},
                         {"multiple", c.multiple}};
    if (report.predictor > 0.0) entry["ratio_to_predictor"] = c.beta_c / report.predictor;
    crossings.push_back(entry);
  }
  auto& missing = j["pairs_without_crossing"] = nlohmann::json::array();
  for (const auto& [d1, d2] : report.pairs_without_crossing) missing.push_back({d1, d2});
  if (!report.crossings.empty()) {
    j["beta_c_min"] = report.beta_c_min;
    j["beta_c_max"] = report.beta_c_max;
    j["spread"] = report.spread;
    j["mean_beta_c"] = report.mean_beta_c;
    if (report.predictor > 0.0) j["mean_ratio_to_predictor"] = report.mean_ratio_to_predictor;
  }
  j["notes"] = report.notes;
  return j;
}

FidelityCurve curve_from_exact(int distance, const std::string& model,
                               const std::vector<SectorSums>& curve) {
  FidelityCurve fc;
  fc.distance = distance;
  fc.model = model;
  for (const auto& s : curve) fc.points.push_back({s.beta, s.fidelity, 0.0, CurveSource::Exact});
  return fc;
}

FidelityCurve curve_from_mc(int distance, const std::string& model,
                            const std::vector<McEstimate>& curve) {
  FidelityCurve fc;
  fc.distance = distance;
  fc.model = model;
  for (const auto& e : curve) {
    fc.points.push_back({e.beta, e.fidelity, e.fidelity_stderr, CurveSource::Mc});
  }
  return fc;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream stream(line);
  std::string cell;
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

FidelityCurve read_curve_csv(const std::string& path, int distance) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read curve file: " + path);

  std::string header;
  if (!std::getline(in, header)) throw IoError("empty curve file: " + path);
  const auto columns = split_csv_row(header);
  int beta_col = -1, f_col = -1, f_err_col = -1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == "beta") beta_col = static_cast<int>(i);
    if (columns[i] == "F") f_col = static_cast<int>(i);
    if (columns[i] == "F_err") f_err_col = static_cast<int>(i);
  }
  if (beta_col < 0 || f_col < 0) {
    throw IoError("curve file lacks beta/F columns: " + path);
  }

  FidelityCurve curve;
  curve.distance = distance;
  curve.model = path;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_row(line);
    CurvePoint p;
    p.beta = std::stod(cells.at(beta_col));
    p.fidelity = std::stod(cells.at(f_col));
    if (f_err_col >= 0) {
      p.fidelity_err = std::stod(cells.at(f_err_col));
      p.source = CurveSource::Mc;
    }
    curve.points.push_back(p);
  }
  return curve;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace scthresh::io
