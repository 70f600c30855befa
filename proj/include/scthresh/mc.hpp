#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scthresh/coupling.hpp"
#include "scthresh/geometry.hpp"

namespace scthresh {

struct McParams {
  std::uint64_t sweeps = 100000;
  std::optional<std::uint64_t> burn_in;  // default: sweeps / 10
  std::uint64_t seed = 0;
  int chains = 4;
  int bins = 32;
  bool replica_exchange = false;  // mc_curve only; off by default

  std::uint64_t resolved_burn_in() const { return burn_in.value_or(sweeps / 10); }
  void validate() const;
};

struct McEstimate {
  double beta = 0.0;
  double ratio = 0.0;  // time in Minus / time in Plus
  double ratio_stderr = 0.0;
  double fidelity = 0.0;
  double fidelity_stderr = 0.0;
  double plaquette_acceptance = 0.0;
  double sector_acceptance = 0.0;
  bool ratio_saturated = false;  // no Plus-sector time observed; ratio is +inf
  std::uint64_t plus_count = 0;
  std::uint64_t minus_count = 0;
};

/// Fidelity as a function of the sector ratio R = T_minus / T_plus:
/// (1 + R) / sqrt((1 + R)^2 + (1 - R)^2).
double fidelity_from_ratio(double ratio);

/// Energy change from flipping all spins in flip_set at once. Pairs inside
/// the set are unchanged; only boundary pairs contribute. scratch must be an
/// all-zero byte per qubit and is restored before returning.
double flip_set_delta(const Adjacency& adjacency, const std::vector<std::int8_t>& spins,
                      std::span<const int> flip_set, std::vector<std::uint8_t>& scratch);

/// Metropolis estimate of R and F at one beta.
///
/// The chain state is a (plaquette subset, sector) pair represented by its
/// spin configuration. One sweep = one flip attempt per plaquette plus one
/// sector-flip attempt (flip every spin on the logical-z path); acceptance
/// min(1, exp(-beta dE)) with dE computed from incident pairs only. The move
/// set is reversible with symmetric proposals, so detailed balance holds, and
/// plaquette flips plus the sector flip reach every state in the joint space.
/// R is the Minus/Plus occupancy ratio after burn-in; errors come from
/// binning across bins and chains. Chain c is seeded with params.seed + c and
/// chains are merged in index order, so results are reproducible.
///
/// Throws ComplexWeightsUnsupported for coupling matrices with imaginary
/// parts and std::invalid_argument for invalid params or beta < 0.
McEstimate mc_estimate(const CodeLayout& layout, const CouplingMatrix& coupling, double beta,
                       const McParams& params);

/// One estimate per beta. By default points are fully independent (each beta
/// reuses the same seeds, so concatenating grids concatenates results). With
/// params.replica_exchange, replicas at all betas sweep in lockstep and
/// adjacent-beta configuration swaps are attempted after every sweep.
std::vector<McEstimate> mc_curve(const CodeLayout& layout, const CouplingMatrix& coupling,
                                 const std::vector<double>& betas, const McParams& params);

}  // namespace scthresh
