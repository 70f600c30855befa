#pragma once

#include <cstdint>
#include <vector>

namespace scthresh {

enum class Orientation : std::uint8_t { Horizontal, Vertical };
enum class Sector : std::uint8_t { Plus, Minus };
enum class Parity : std::uint8_t { Even, Odd };

/// A physical qubit on a link of the planar lattice. Positions are
/// half-integer coordinates in lattice-spacing units: horizontal links sit at
/// (i+1/2, j), vertical links at (i, j+1/2).
struct Qubit {
  int id;
  double x;
  double y;
  Orientation orientation;
};

/// Distance-d planar surface-code layout.
///
/// Boundary convention: rough boundaries at top and bottom (weight-3
/// plaquettes there), smooth boundaries at left and right (weight-3 stars).
/// For distance d this gives d^2 vertical links, (d-1)^2 horizontal links,
/// and d(d-1) stars and plaquettes each. Qubit ids are assigned row-major by
/// position (y first, then x), so layouts are reproducible.
struct CodeLayout {
  int distance = 0;
  std::vector<Qubit> qubits;
  std::vector<std::vector<int>> stars;       // X-type stabilizer supports, sorted ids
  std::vector<std::vector<int>> plaquettes;  // Z-type stabilizer supports, sorted ids
  std::vector<int> logical_x;  // straight horizontal dual path (bottom row of vertical links)
  std::vector<int> logical_z;  // leftmost vertical column

  int num_qubits() const { return static_cast<int>(qubits.size()); }
  int num_plaquettes() const { return static_cast<int>(plaquettes.size()); }
};

/// Builds the distance-d layout. Throws std::invalid_argument for d < 1.
CodeLayout build_layout(int distance);

/// An x-basis spin configuration identified by (plaquette subset, sector).
/// spins[q] is the sigma^x eigenvalue of qubit q: flipped to -1 exactly when
/// q lies in the symmetric difference of the chosen plaquette supports,
/// XOR the logical-z path when sector == Minus.
struct SectorConfig {
  std::uint64_t subset = 0;
  Sector sector = Sector::Plus;
  std::vector<std::int8_t> spins;
};

/// Derives the spin assignment for a plaquette subset within a sector.
/// Throws std::invalid_argument if the subset references plaquettes beyond
/// the layout (bits >= num_plaquettes set).
SectorConfig spin_config(const CodeLayout& layout, std::uint64_t subset, Sector sector);

/// Parity of |a intersect b| for two support sets (need not be sorted).
Parity overlap_parity(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace scthresh
