#include "scthresh/exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "scthresh/errors.hpp"

namespace scthresh {

namespace {

// Kahan-Neumaier compensated accumulator. The sector sums add up to 2^24
// near-cancelling complex terms; plain summation loses digits the downstream
// fidelity ratio cares about.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Walks the 2^P plaquette subsets of one sector in Gray-code order. Each step
// flips a single plaquette, so the spin configuration and its energy are
// maintained incrementally; visit order is a determinism contract.
class SectorWalker {
 public:
  SectorWalker(const CodeLayout& layout, const CouplingMatrix& coupling, Sector sector)
      : adjacency_(coupling), supports_(layout.plaquettes) {
    SectorConfig base = spin_config(layout, 0, sector);
    energy_ = energy(base, coupling);
    spins_ = std::move(base.spins);
  }

  template <typename Visit>
  void walk(Visit&& visit) {
    visit(energy_);
    const std::uint64_t total = std::uint64_t{1} << supports_.size();
    for (std::uint64_t k = 1; k < total; ++k) {
      flip_plaquette(std::countr_zero(k));
      visit(energy_);
    }
  }

 private:
  void flip_plaquette(int b) {
    for (int q : supports_[b]) {
      energy_ += adjacency_.single_flip_delta(spins_, q);
      spins_[q] = -spins_[q];
    }
  }

  Adjacency adjacency_;
  std::vector<std::vector<int>> supports_;
  std::vector<std::int8_t> spins_;
  std::complex<double> energy_;
};

void check_enumerable(const CodeLayout& layout) {
  if (layout.num_plaquettes() > kExactPlaquetteCap) {
    throw TooLargeForExact("sector_sum: " + std::to_string(layout.num_plaquettes()) +
                           " plaquettes exceed the enumeration cap of " +
                           std::to_string(kExactPlaquetteCap));
  }
}

void check_same_lattice(const CodeLayout& layout, const CouplingMatrix& coupling) {
  if (coupling.num_qubits != layout.num_qubits()) {
    throw std::invalid_argument("coupling was built for a different layout (qubit counts " +
                                std::to_string(coupling.num_qubits) + " vs " +
                                std::to_string(layout.num_qubits()) + ")");
  }
}

std::complex<double> boltzmann(double beta, std::complex<double> e) {
  return std::exp(std::complex<double>(-beta * e.real(), -beta * e.imag()));
}

std::vector<std::complex<double>> sector_sums_on_grid(const CodeLayout& layout,
                                                      const CouplingMatrix& coupling,
                                                      const std::vector<double>& betas,
                                                      Sector sector) {
  std::vector<CompensatedSum> re(betas.size()), im(betas.size());
  SectorWalker walker(layout, coupling, sector);
  walker.walk([&](std::complex<double> e) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
      const std::complex<double> w = boltzmann(betas[i], e);
      re[i].add(w.real());
      im[i].add(w.imag());
    }
  });
  std::vector<std::complex<double>> sums(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) sums[i] = {re[i].value(), im[i].value()};
  return sums;
}

}  // namespace

std::complex<double> energy(const SectorConfig& config, const CouplingMatrix& coupling) {
  if (static_cast<int>(config.spins.size()) != coupling.num_qubits) {
    throw std::invalid_argument("energy: spin configuration does not match the coupling matrix");
  }
  std::complex<double> e = 0.0;
  for (const auto& p : coupling.pairs) {
    e += p.j * static_cast<double>(config.spins[p.r] * config.spins[p.s]);
  }
  return e;
}

double fidelity_from_sums(std::complex<double> t_plus, std::complex<double> t_minus) {
  const double a = std::abs(t_plus + t_minus);
  const double b = std::abs(t_plus - t_minus);
  if (a == 0.0 && b == 0.0) {
    throw UndefinedFidelity("fidelity_from_sums: both sector sums are zero");
  }
  return a / std::sqrt(a * a + b * b);
}

std::complex<double> sector_sum(const CodeLayout& layout, const CouplingMatrix& coupling,
                                double beta, Sector sector) {
  if (beta < 0.0) {
    throw std::invalid_argument("sector_sum: beta must be nonnegative");
  }
  check_same_lattice(layout, coupling);
  check_enumerable(layout);
  return sector_sums_on_grid(layout, coupling, {beta}, sector)[0];
}

std::vector<SectorSums> exact_curve(const CodeLayout& layout, const CouplingMatrix& coupling,
                                    const std::vector<double>& betas) {
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (betas[i] < 0.0) {
      throw std::invalid_argument("exact_curve: betas must be nonnegative");
    }
    if (i > 0 && betas[i] < betas[i - 1]) {
      throw std::invalid_argument("exact_curve: betas must be sorted ascending");
    }
  }
  check_same_lattice(layout, coupling);
  check_enumerable(layout);

  // The two sectors are independent; enumerate them in parallel.
  std::vector<std::complex<double>> plus, minus;
  std::thread minus_worker(
      [&] { minus = sector_sums_on_grid(layout, coupling, betas, Sector::Minus); });
  plus = sector_sums_on_grid(layout, coupling, betas, Sector::Plus);
  minus_worker.join();

  std::vector<SectorSums> curve;
  curve.reserve(betas.size());
  for (std::size_t i = 0; i < betas.size(); ++i) {
    curve.push_back(make_sector_sums(betas[i], plus[i], minus[i]));
  }
  return curve;
}

SectorGroundState sector_ground_state(const CodeLayout& layout, const CouplingMatrix& coupling,
                                      Sector sector) {
  check_same_lattice(layout, coupling);
  check_enumerable(layout);

  SectorGroundState ground;
  ground.min_energy = std::numeric_limits<double>::infinity();

  std::uint64_t index = 0;
  SectorWalker walker(layout, coupling, sector);
  walker.walk([&](std::complex<double> e) {
    // Gray-code subset for visit step k is k ^ (k >> 1).
    const std::uint64_t subset = index ^ (index >> 1);
    ++index;
    if (e.real() < ground.min_energy) {
      ground.min_energy = e.real();
      ground.degeneracy = 1;
      ground.subset = subset;
    } else if (e.real() == ground.min_energy) {
      ++ground.degeneracy;
    }
  });
  return ground;
}

}  // namespace scthresh
