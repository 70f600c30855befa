#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "scthresh/geometry.hpp"

namespace scthresh {

/// Microscopic bath parameters: coupling strength lambda, frequency scale
/// omega0, mode velocity v (lattice spacings per unit time), cycle duration
/// delta.
struct BathParams {
  double lambda = 0.0;
  double omega0 = 0.0;
  double v = 1.0;
  double delta = 0.0;
};

/// beta = (1/2) (lambda * omega0 / v)^2. Throws std::invalid_argument on
/// v <= 0, delta < 0 or omega0 < 0.
double beta_from_bath(const BathParams& params);

/// Dimensionless pair correlator of a zero-temperature Ohmic bath over one
/// cycle, as a function of qubit separation and the causal range v*delta:
///
///   asinh(v*delta / sep) + i*pi/2   for sep <  v*delta  (inside the cone)
///   i * asin(v*delta / sep)         for sep >= v*delta  (outside)
///
/// The boundary sep == v*delta takes the outside branch; asin(1) = pi/2 keeps
/// the imaginary part continuous there. Throws std::invalid_argument for
/// sep <= 0.
std::complex<double> ohmic_phi(double separation, double v_delta);

struct CouplingModel {
  enum class Kind { NearestNeighbor, StripedOhmic, FullOhmic };

  Kind kind = Kind::NearestNeighbor;
  double j = 1.0;                  // pair coupling (NearestNeighbor, StripedOhmic)
  double range = 0.0;              // v*delta (StripedOhmic, FullOhmic)
  bool include_imaginary = false;  // FullOhmic only

  static CouplingModel nearest_neighbor(double j);
  static CouplingModel striped_ohmic(double j, double range);
  static CouplingModel full_ohmic(double range, bool include_imaginary);

  std::string describe() const;
};

struct CouplingPair {
  int r;
  int s;  // r < s always
  std::complex<double> j;
};

/// Effective qubit-qubit couplings over unordered distinct pairs. The stored
/// values absorb the (omega0/v)^2 scale, so a Boltzmann exponent is exactly
/// -beta * sum_{pairs} J_rs s_r s_s with beta from beta_from_bath.
struct CouplingMatrix {
  CouplingModel model;
  int num_qubits = 0;
  std::vector<CouplingPair> pairs;
  bool bipartite = false;  // true iff every pair couples opposite orientations

  bool is_real() const;
};

/// Builds the pair list for a model on a layout.
///  - NearestNeighbor: pairs at link-midpoint distance 1/sqrt(2), J_rs = J.
///  - StripedOhmic: opposite-sublattice pairs at separation < range, J_rs = J.
///  - FullOhmic: all pairs, J_rs = ohmic_phi(separation, range); the
///    imaginary part is zeroed unless include_imaginary.
/// Throws std::invalid_argument for J < 0 (couplings are antiferromagnetic).
CouplingMatrix build_coupling(const CodeLayout& layout, const CouplingModel& model);

/// Sublattice sign flip J_rs -> -J_rs (eta_r eta_s J_rs with eta = -1 on the
/// vertical sublattice). Maps the antiferromagnetic nearest-neighbor model to
/// a ferromagnetic one. Throws GaugeNotApplicable on non-bipartite input.
CouplingMatrix gauge_transform(const CodeLayout& layout, const CouplingMatrix& coupling);

/// Effective boundary field induced by a logical-z path: h_w = sum_{t in
/// gamma} J_tw for every qubit w outside gamma. Diagnostic only.
std::map<int, std::complex<double>> boundary_field(const CodeLayout& layout,
                                                   const CouplingMatrix& coupling,
                                                   const std::vector<int>& gamma);

/// Per-qubit neighbor lists over a coupling matrix, for incremental energy
/// updates in the enumeration and Monte Carlo engines.
class Adjacency {
 public:
  struct Entry {
    int other;
    double j_re;
    double j_im;
  };

  explicit Adjacency(const CouplingMatrix& coupling);

  int num_qubits() const { return static_cast<int>(offsets_.size()) - 1; }

  std::span<const Entry> neighbors(int q) const {
    return {entries_.data() + offsets_[q], entries_.data() + offsets_[q + 1]};
  }

  /// Energy change from flipping the single spin q (spins unmodified).
  std::complex<double> single_flip_delta(const std::vector<std::int8_t>& spins, int q) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
};

}  // namespace scthresh
