#pragma once

#include <stdexcept>
#include <string>

namespace scthresh {

inline constexpr const char* kVersion = "0.1.0";

/// Lattice too large for exhaustive subset enumeration; use the Monte Carlo
/// engine instead.
class TooLargeForExact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The sublattice sign flip is only defined for bipartite coupling matrices.
class GaugeNotApplicable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The Metropolis engine samples real Boltzmann weights only.
class ComplexWeightsUnsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fidelity curves never intersect on the shared grid.
class NoCrossing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No analytic threshold predictor exists for the requested model.
class NoPredictor : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Both sector sums vanished; the fidelity ratio is undefined.
class UndefinedFidelity : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Filesystem failure while writing run artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scthresh
