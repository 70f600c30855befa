#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scthresh/coupling.hpp"
#include "scthresh/geometry.hpp"

namespace scthresh {

/// Self-avoiding polygon counts on the square lattice, per site: translations
/// are modded out, rotations and reflections are counted as distinct shapes.
/// This is the normalization under which counts grow like mu^length.
struct PolygonCensus {
  int max_len = 0;
  std::vector<std::pair<int, std::uint64_t>> counts;  // (perimeter, count), perimeter = 4, 6, ...

  std::uint64_t count_for(int len) const;
};

/// Exact census for all even perimeters 4..max_len by anchored backtracking:
/// the lexicographically smallest vertex of each polygon is pinned to the
/// origin and the first step is forced, so every polygon is generated exactly
/// once. Throws std::invalid_argument for odd max_len or max_len outside
/// [4, 18].
PolygonCensus enumerate_polygons(int max_len);

struct MuEstimate {
  double mu_hat = 0.0;
  std::vector<std::pair<int, double>> ratios;  // (perimeter, counts(l)/counts(l-2))
};

/// Connective-constant estimate from the census: the growth ratio
/// counts(l)/counts(l-2) -> mu^2 is extrapolated to l -> infinity with a
/// quadratic Richardson step in 1/l over the last three ratios.
/// Requires at least three perimeters in the census.
MuEstimate estimate_mu(const PolygonCensus& census);

/// Interaction degree of a bulk (maximal-degree) qubit under a striped model.
int neighbor_count(const CodeLayout& layout, const CouplingModel& model);

/// Analytic threshold estimate from the loop-entropy balance:
///   NearestNeighbor -> ln(mu) / (8 J)
///   StripedOhmic    -> ln(mu) / (n J), n = striped_neighbors
/// Both are leading-order straight-wall estimates, and they disagree at
/// n = 4; measured curve crossings are the ground truth to compare against.
/// Throws NoPredictor for FullOhmic (with every qubit pair interacting there
/// is no threshold) and std::invalid_argument for J <= 0 or missing n.
double predict_beta_c(const CouplingModel& model, double mu, int striped_neighbors = 0);

}  // namespace scthresh
