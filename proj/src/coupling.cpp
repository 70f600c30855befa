#include "scthresh/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "scthresh/errors.hpp"

namespace scthresh {

double beta_from_bath(const BathParams& params) {
  if (params.v <= 0.0) {
    throw std::invalid_argument("beta_from_bath: bath velocity must be positive");
  }
  if (params.delta < 0.0) {
    throw std::invalid_argument("beta_from_bath: cycle duration must be nonnegative");
  }
  if (params.omega0 < 0.0) {
    throw std::invalid_argument("beta_from_bath: frequency scale must be nonnegative");
  }
  const double x = params.lambda * params.omega0 / params.v;
  return 0.5 * x * x;
}

std::complex<double> ohmic_phi(double separation, double v_delta) {
  if (!(separation > 0.0)) {
    throw std::invalid_argument("ohmic_phi: separation must be positive");
  }
  if (v_delta < 0.0) {
    throw std::invalid_argument("ohmic_phi: v*delta must be nonnegative");
  }
  if (separation < v_delta) {
    return {std::asinh(v_delta / separation), std::numbers::pi / 2.0};
  }
  return {0.0, std::asin(v_delta / separation)};
}

CouplingModel CouplingModel::nearest_neighbor(double j) {
  CouplingModel m;
  m.kind = Kind::NearestNeighbor;
  m.j = j;
  return m;
}

CouplingModel CouplingModel::striped_ohmic(double j, double range) {
  CouplingModel m;
  m.kind = Kind::StripedOhmic;
  m.j = j;
  m.range = range;
  return m;
}

CouplingModel CouplingModel::full_ohmic(double range, bool include_imaginary) {
  CouplingModel m;
  m.kind = Kind::FullOhmic;
  m.range = range;
  m.include_imaginary = include_imaginary;
  return m;
}

std::string CouplingModel::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::NearestNeighbor:
      out << "nn(J=" << j << ")";
      break;
    case Kind::StripedOhmic:
      out << "striped(J=" << j << ",range=" << range << ")";
      break;
    case Kind::FullOhmic:
      out << "ohmic(range=" << range << ",imag=" << (include_imaginary ? "on" : "off") << ")";
      break;
  }
  return out.str();
}

bool CouplingMatrix::is_real() const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [](const CouplingPair& p) { return p.j.imag() == 0.0; });
}

namespace {

// Squared pair separation in quarter lattice units: positions are exact
// multiples of 1/2, so this is an exact integer classifier. Nearest neighbors
// (distance 1/sqrt(2)) have quarter_dist2 == 2.
long quarter_dist2(const Qubit& a, const Qubit& b) {
  const long dx = std::lround(2.0 * (a.x - b.x));
  const long dy = std::lround(2.0 * (a.y - b.y));
  return dx * dx + dy * dy;
}

double separation(const Qubit& a, const Qubit& b) {
  return 0.5 * std::sqrt(static_cast<double>(quarter_dist2(a, b)));
}

}  // namespace

CouplingMatrix build_coupling(const CodeLayout& layout, const CouplingModel& model) {
  if ((model.kind == CouplingModel::Kind::NearestNeighbor ||
       model.kind == CouplingModel::Kind::StripedOhmic) &&
      model.j < 0.0) {
    throw std::invalid_argument("build_coupling: J must be nonnegative");
  }
  if (model.kind != CouplingModel::Kind::NearestNeighbor && model.range < 0.0) {
    throw std::invalid_argument("build_coupling: range must be nonnegative");
  }

  CouplingMatrix coupling;
  coupling.model = model;
  coupling.num_qubits = layout.num_qubits();

  const auto& qs = layout.qubits;
  bool bipartite = true;
  for (int r = 0; r < coupling.num_qubits; ++r) {
    for (int s = r + 1; s < coupling.num_qubits; ++s) {
      const bool opposite = qs[r].orientation != qs[s].orientation;
      std::complex<double> j;
      switch (model.kind) {
        case CouplingModel::Kind::NearestNeighbor:
          if (quarter_dist2(qs[r], qs[s]) != 2) continue;
          j = model.j;
          break;
        case CouplingModel::Kind::StripedOhmic:
          if (!opposite || separation(qs[r], qs[s]) >= model.range) continue;
          j = model.j;
          break;
        case CouplingModel::Kind::FullOhmic: {
          j = ohmic_phi(separation(qs[r], qs[s]), model.range);
          if (!model.include_imaginary) j = {j.real(), 0.0};
          break;
        }
      }
      coupling.pairs.push_back({r, s, j});
      bipartite = bipartite && opposite;
    }
  }
  coupling.bipartite = bipartite;
  return coupling;
}

CouplingMatrix gauge_transform(const CodeLayout& layout, const CouplingMatrix& coupling) {
  (void)layout;
  if (!coupling.bipartite) {
    throw GaugeNotApplicable(
        "gauge_transform: coupling connects same-sublattice pairs; the sublattice sign flip "
        "does not reduce to a coupling sign change");
  }
  CouplingMatrix gauged = coupling;
  for (auto& p : gauged.pairs) p.j = -p.j;
  return gauged;
}

std::map<int, std::complex<double>> boundary_field(const CodeLayout& layout,
                                                   const CouplingMatrix& coupling,
                                                   const std::vector<int>& gamma) {
  std::vector<char> in_gamma(layout.num_qubits(), 0);
  for (int q : gamma) {
    if (q < 0 || q >= layout.num_qubits()) {
      throw std::invalid_argument("boundary_field: gamma contains an unknown qubit id");
    }
    in_gamma[q] = 1;
  }

  std::map<int, std::complex<double>> field;
  for (int w = 0; w < layout.num_qubits(); ++w) {
    if (!in_gamma[w]) field[w] = 0.0;
  }
  for (const auto& p : coupling.pairs) {
    if (in_gamma[p.r] && !in_gamma[p.s]) field[p.s] += p.j;
    if (in_gamma[p.s] && !in_gamma[p.r]) field[p.r] += p.j;
  }
  return field;
}

Adjacency::Adjacency(const CouplingMatrix& coupling) {
  const int n = coupling.num_qubits;
  std::vector<std::size_t> degree(n, 0);
  for (const auto& p : coupling.pairs) {
    ++degree[p.r];
    ++degree[p.s];
  }
  offsets_.assign(n + 1, 0);
  for (int q = 0; q < n; ++q) offsets_[q + 1] = offsets_[q] + degree[q];
  entries_.resize(offsets_[n]);

  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& p : coupling.pairs) {
    entries_[cursor[p.r]++] = {p.s, p.j.real(), p.j.imag()};
    entries_[cursor[p.s]++] = {p.r, p.j.real(), p.j.imag()};
  }
}

std::complex<double> Adjacency::single_flip_delta(const std::vector<std::int8_t>& spins,
                                                  int q) const {
  double re = 0.0, im = 0.0;
  for (const Entry& e : neighbors(q)) {
    const double s = spins[e.other];
    re += e.j_re * s;
    im += e.j_im * s;
  }
  const double factor = -2.0 * spins[q];
  return {factor * re, factor * im};
}

}  // namespace scthresh
