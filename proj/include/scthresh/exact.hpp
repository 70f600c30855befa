#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "scthresh/coupling.hpp"
#include "scthresh/geometry.hpp"

namespace scthresh {

/// Largest plaquette count accepted by the exhaustive engine (2^24 subsets).
inline constexpr int kExactPlaquetteCap = 24;

/// Sector-restricted Boltzmann sums at one coupling strength, and the derived
/// fidelity of the encoded qubit conditioned on a trivial syndrome.
struct SectorSums {
  double beta = 0.0;
  std::complex<double> t_plus;
  std::complex<double> t_minus;
  std::complex<double> ratio;  // t_minus / t_plus
  double fidelity = 0.0;

  double fidelity_squared() const { return fidelity * fidelity; }
};

/// E = sum over the coupling's unordered pairs of J_rs s_r s_s.
/// Throws std::invalid_argument when config and coupling sizes disagree.
std::complex<double> energy(const SectorConfig& config, const CouplingMatrix& coupling);

/// |A| / sqrt(|A|^2 + |B|^2) with A = t_plus + t_minus, B = t_plus - t_minus.
/// The common prefactor of both sums cancels and is never computed.
/// Throws UndefinedFidelity when both sums are zero.
double fidelity_from_sums(std::complex<double> t_plus, std::complex<double> t_minus);

/// Sum of exp(-beta * E) over all 2^P plaquette subsets of one sector.
/// Energies are updated incrementally in Gray-code order and accumulated with
/// compensated summation, so the result is deterministic for a given layout
/// and coupling. Throws TooLargeForExact above kExactPlaquetteCap plaquettes
/// and std::invalid_argument for beta < 0.
std::complex<double> sector_sum(const CodeLayout& layout, const CouplingMatrix& coupling,
                                double beta, Sector sector);

/// Both sector sums plus derived quantities on a beta grid. The enumeration
/// runs once per sector; per-beta accumulation order matches sector_sum
/// term for term, so each entry equals an independent sector_sum call.
/// betas must be nonnegative and sorted ascending.
std::vector<SectorSums> exact_curve(const CodeLayout& layout, const CouplingMatrix& coupling,
                                    const std::vector<double>& betas);

/// Minimum real energy over one sector's configurations, its degeneracy, and
/// one minimizing subset. Meaningful for real couplings.
struct SectorGroundState {
  double min_energy = 0.0;
  std::uint64_t degeneracy = 0;
  std::uint64_t subset = 0;
};

SectorGroundState sector_ground_state(const CodeLayout& layout, const CouplingMatrix& coupling,
                                      Sector sector);

inline SectorSums make_sector_sums(double beta, std::complex<double> t_plus,
                                   std::complex<double> t_minus) {
  SectorSums s;
  s.beta = beta;
  s.t_plus = t_plus;
  s.t_minus = t_minus;
  s.ratio = (t_plus == std::complex<double>{0.0, 0.0})
                ? std::complex<double>{std::numeric_limits<double>::infinity(), 0.0}
                : t_minus / t_plus;
  s.fidelity = fidelity_from_sums(t_plus, t_minus);
  return s;
}

}  // namespace scthresh
