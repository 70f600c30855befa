#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "scthresh/errors.hpp"
#include "scthresh/exact.hpp"

using namespace scthresh;

namespace {

// Brute-force oracle: spins recomputed from scratch per subset, energy by a
// full pair loop, plain summation. No Gray code, no incremental updates.
std::complex<double> oracle_sector_sum(const CodeLayout& layout, const CouplingMatrix& coupling,
                                       double beta, Sector sector) {
  const std::uint64_t total = std::uint64_t{1} << layout.num_plaquettes();
  std::complex<double> sum = 0.0;
  for (std::uint64_t subset = 0; subset < total; ++subset) {
    const SectorConfig config = spin_config(layout, subset, sector);
    std::complex<double> e = 0.0;
    for (const auto& p : coupling.pairs) {
      e += p.j * static_cast<double>(config.spins[p.r] * config.spins[p.s]);
    }
    sum += std::exp(-beta * e);
  }
  return sum;
}

double oracle_min_energy(const CodeLayout& layout, const CouplingMatrix& coupling,
                         Sector sector) {
  const std::uint64_t total = std::uint64_t{1} << layout.num_plaquettes();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t subset = 0; subset < total; ++subset) {
    const SectorConfig config = spin_config(layout, subset, sector);
    best = std::min(best, energy(config, coupling).real());
  }
  return best;
}

}  // namespace

TEST_CASE("energy of the uniform configuration counts pairs") {
  const CodeLayout layout = build_layout(3);
  const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
  const SectorConfig uniform = spin_config(layout, 0, Sector::Plus);
  CHECK(energy(uniform, coupling).real() ==
        doctest::Approx(static_cast<double>(coupling.pairs.size())));
  CHECK(energy(uniform, coupling).imag() == 0.0);
}

TEST_CASE("energy mismatch against a different layout") {
  const auto coupling = build_coupling(build_layout(3), CouplingModel::nearest_neighbor(1.0));
  const SectorConfig config = spin_config(build_layout(2), 0, Sector::Plus);
  CHECK_THROWS_AS(energy(config, coupling), std::invalid_argument);
}

TEST_CASE("single spin flip changes energy by the incident-pair sum") {
  const CodeLayout layout = build_layout(3);
  const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(0.8));
  std::mt19937_64 rng(7);

  for (int trial = 0; trial < 20; ++trial) {
    SectorConfig config = spin_config(layout, rng() & 0x3f, Sector::Plus);
    const int q = static_cast<int>(rng() % layout.num_qubits());
    const std::complex<double> before = energy(config, coupling);

    std::complex<double> incident = 0.0;
    for (const auto& p : coupling.pairs) {
      if (p.r == q) incident += p.j * static_cast<double>(config.spins[p.s]);
      if (p.s == q) incident += p.j * static_cast<double>(config.spins[p.r]);
    }
    const std::complex<double> expected_delta = -2.0 * static_cast<double>(config.spins[q]) * incident;

    config.spins[q] = -config.spins[q];
    const std::complex<double> after = energy(config, coupling);
    CHECK(std::abs(after - before - expected_delta) < 1e-12);
  }
}

TEST_CASE("global spin flip leaves energy unchanged") {
  const CodeLayout layout = build_layout(3);
  const auto coupling = build_coupling(layout, CouplingModel::full_ohmic(1.4, true));
  SectorConfig config = spin_config(layout, 0b101101, Sector::Minus);
  const auto before = energy(config, coupling);
  for (auto& s : config.spins) s = -s;
  CHECK(std::abs(energy(config, coupling) - before) < 1e-12);
}

TEST_CASE("sector_sum at beta 0 counts configurations exactly") {
  for (int d = 1; d <= 4; ++d) {
    const CodeLayout layout = build_layout(d);
    const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
    const double expected = std::pow(2.0, layout.num_plaquettes());
    for (Sector sector : {Sector::Plus, Sector::Minus}) {
      const auto sum = sector_sum(layout, coupling, 0.0, sector);
      CHECK(sum.real() == expected);
      CHECK(sum.imag() == 0.0);
    }
  }
}

TEST_CASE("sector_sum equals the brute-force oracle on d=2") {
  const CodeLayout layout = build_layout(2);
  const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
  for (Sector sector : {Sector::Plus, Sector::Minus}) {
    const auto fast = sector_sum(layout, coupling, 0.1, sector);
    const auto slow = oracle_sector_sum(layout, coupling, 0.1, sector);
    CHECK(std::abs(fast - slow) / std::abs(slow) < 1e-13);
  }
}

TEST_CASE("Gray-code enumeration equals naive recomputation, 20 random betas, d <= 3") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> beta_dist(0.0, 1.0);
  for (int d = 2; d <= 3; ++d) {
    const CodeLayout layout = build_layout(d);
    for (const auto& model :
         {CouplingModel::nearest_neighbor(1.0), CouplingModel::full_ohmic(1.3, true)}) {
      const auto coupling = build_coupling(layout, model);
      for (int trial = 0; trial < 20; ++trial) {
        const double beta = beta_dist(rng);
        for (Sector sector : {Sector::Plus, Sector::Minus}) {
          const auto fast = sector_sum(layout, coupling, beta, sector);
          const auto slow = oracle_sector_sum(layout, coupling, beta, sector);
          CHECK(std::abs(fast - slow) / std::abs(slow) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("large-beta sector sums are dominated by the sector minimum") {
  // beta large enough to isolate the minimum but small enough that
  // exp(-beta * E_min) stays finite (E_min = -16 at d=3).
  const double beta = 40.0;
  for (int d = 2; d <= 3; ++d) {
    const CodeLayout layout = build_layout(d);
    const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
    for (Sector sector : {Sector::Plus, Sector::Minus}) {
      const double log_sum = std::log(std::abs(sector_sum(layout, coupling, beta, sector)));
      // deviation bounded by log(degeneracy)/beta
      CHECK(std::abs(log_sum / beta + oracle_min_energy(layout, coupling, sector)) < 0.05);
    }
  }
}

TEST_CASE("fidelity_from_sums") {
  CHECK(fidelity_from_sums({3.0, 0.0}, {3.0, 0.0}) == 1.0);
  CHECK(fidelity_from_sums({0.0, 0.0}, {2.5, 0.0}) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(fidelity_from_sums({3.0, 0.0}, {1.0, 0.0}) ==
        doctest::Approx(0.894427190999916).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity_from_sums({0.0, 0.0}, {0.0, 0.0}), UndefinedFidelity);
}

TEST_CASE("exact_curve composes sector sums") {
  const CodeLayout layout = build_layout(2);
  const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));

  SUBCASE("single zero point") {
    const auto curve = exact_curve(layout, coupling, {0.0});
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].fidelity == 1.0);
  }

  SUBCASE("matches independent sector_sum calls exactly") {
    const std::vector<double> betas{0.1, 0.2};
    const auto curve = exact_curve(layout, coupling, betas);
    REQUIRE(curve.size() == 2);
    for (std::size_t i = 0; i < betas.size(); ++i) {
      CHECK(curve[i].t_plus == sector_sum(layout, coupling, betas[i], Sector::Plus));
      CHECK(curve[i].t_minus == sector_sum(layout, coupling, betas[i], Sector::Minus));
      CHECK(curve[i].beta == betas[i]);
    }
  }

  SUBCASE("grid order is preserved") {
    const auto curve = exact_curve(layout, coupling, {0.0, 0.05, 0.1, 0.3});
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].beta > curve[i - 1].beta);
  }

  SUBCASE("invalid grids rejected") {
    CHECK_THROWS_AS(exact_curve(layout, coupling, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(exact_curve(layout, coupling, {-0.1, 0.1}), std::invalid_argument);
  }
}

TEST_CASE("F(0) = 1 to machine precision for every model and d <= 5") {
  const std::vector<CouplingModel> models = {
      CouplingModel::nearest_neighbor(1.0),
      CouplingModel::striped_ohmic(1.0, 1.7),
      CouplingModel::full_ohmic(2.0, true),
  };
  for (int d = 1; d <= 5; ++d) {
    const CodeLayout layout = build_layout(d);
    for (const auto& model : models) {
      const auto coupling = build_coupling(layout, model);
      const auto curve = exact_curve(layout, coupling, {0.0});
      CHECK(std::abs(curve[0].fidelity - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("real couplings give real positive sums and F in [1/sqrt(2), 1]") {
  for (int d = 2; d <= 4; ++d) {
    const CodeLayout layout = build_layout(d);
    const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
    for (double beta : {0.05, 0.2, 1.0, 5.0}) {
      const auto sums = exact_curve(layout, coupling, {beta})[0];
      CHECK(sums.t_plus.imag() == 0.0);
      CHECK(sums.t_minus.imag() == 0.0);
      CHECK(sums.t_plus.real() > 0.0);
      CHECK(sums.t_minus.real() > 0.0);
      CHECK(sums.fidelity >= 1.0 / std::sqrt(2.0) - 1e-12);
      CHECK(sums.fidelity <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("conjugating the couplings conjugates the sums and preserves F") {
  const CodeLayout layout = build_layout(3);
  auto coupling = build_coupling(layout, CouplingModel::full_ohmic(1.6, true));
  auto conjugated = coupling;
  for (auto& p : conjugated.pairs) p.j = std::conj(p.j);

  for (double beta : {0.1, 0.4}) {
    const auto a = exact_curve(layout, coupling, {beta})[0];
    const auto b = exact_curve(layout, conjugated, {beta})[0];
    CHECK(std::abs(b.t_plus - std::conj(a.t_plus)) < 1e-9 * std::abs(a.t_plus));
    CHECK(std::abs(b.t_minus - std::conj(a.t_minus)) < 1e-9 * std::abs(a.t_minus));
    CHECK(b.fidelity == doctest::Approx(a.fidelity).epsilon(1e-12));
  }
}

TEST_CASE("single bulk plaquette excitation costs 16J in the gauged model") {
  const CodeLayout layout = build_layout(4);
  const double j = 0.75;
  const auto gauged =
      gauge_transform(layout, build_coupling(layout, CouplingModel::nearest_neighbor(j)));

  // A bulk plaquette is one whose four support qubits all have the full
  // coupling degree 4 (faces hugging the smooth boundary have a degree-2
  // vertical link and cost 12J instead).
  std::vector<int> degree(layout.num_qubits(), 0);
  for (const auto& p : gauged.pairs) {
    ++degree[p.r];
    ++degree[p.s];
  }
  int bulk = -1;
  for (int b = 0; b < layout.num_plaquettes(); ++b) {
    const auto& support = layout.plaquettes[b];
    if (support.size() == 4 &&
        std::all_of(support.begin(), support.end(), [&](int q) { return degree[q] == 4; })) {
      bulk = b;
    }
  }
  REQUIRE(bulk >= 0);

  const auto uniform = spin_config(layout, 0, Sector::Plus);
  const auto excited = spin_config(layout, std::uint64_t{1} << bulk, Sector::Plus);
  const double delta = (energy(excited, gauged) - energy(uniform, gauged)).real();
  CHECK(delta == doctest::Approx(16.0 * j).epsilon(1e-12));
}

TEST_CASE("a straight domain wall costs 4J per unit length") {
  // Flip runs of k consecutive bulk faces in an interior row of the gauged
  // ferromagnetic model. Extending the run by one face lengthens the wall by
  // one unit on top and one on bottom while the corners cancel in the
  // difference, so dE(k+1) - dE(k) = 2 * (2 units) * 4J = 16J. This pins the
  // unordered pair-sum convention: double-counted pairs would give 32J.
  const int d = 7;
  const CodeLayout layout = build_layout(d);
  const double j = 1.0;
  const auto gauged =
      gauge_transform(layout, build_coupling(layout, CouplingModel::nearest_neighbor(j)));

  // face (i + 1/2, row + 1/2) has plaquette index row * (d-1) + i; start the
  // run one column in so it stays clear of the smooth boundaries
  auto run_subset = [&](int k) {
    std::uint64_t subset = 0;
    for (int i = 1; i <= k; ++i) subset |= std::uint64_t{1} << (3 * (d - 1) + i);
    return subset;
  };
  const double e0 = energy(spin_config(layout, 0, Sector::Plus), gauged).real();
  std::vector<double> cost;
  for (int k = 1; k <= 4; ++k) {
    cost.push_back(energy(spin_config(layout, run_subset(k), Sector::Plus), gauged).real() - e0);
  }
  // A lone face costs 16J = 2 * 8J: its all-corner wall runs at 2J per unit,
  // half the straight-wall rate. The increments isolate the straight piece.
  CHECK(cost[0] == doctest::Approx(16.0 * j));
  for (std::size_t k = 1; k < cost.size(); ++k) {
    CHECK(cost[k] - cost[k - 1] == doctest::Approx(16.0 * j).epsilon(1e-12));
  }
}

TEST_CASE("enumeration cap") {
  const CodeLayout layout = build_layout(6);  // 30 plaquettes
  const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
  CHECK_THROWS_AS(sector_sum(layout, coupling, 0.1, Sector::Plus), TooLargeForExact);
  CHECK_THROWS_AS(exact_curve(layout, coupling, {0.1}), TooLargeForExact);
}

TEST_CASE("negative beta rejected") {
  const CodeLayout layout = build_layout(2);
  const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
  CHECK_THROWS_AS(sector_sum(layout, coupling, -0.1, Sector::Plus), std::invalid_argument);
}

TEST_CASE("ground state sector alternates with distance parity") {
  // Recorded numerically: the unique minimum sits in Plus for even d and in
  // Minus for odd d on the nearest-neighbor model.
  for (int d = 2; d <= 4; ++d) {
    const CodeLayout layout = build_layout(d);
    const auto coupling = build_coupling(layout, CouplingModel::nearest_neighbor(1.0));
    const auto plus = sector_ground_state(layout, coupling, Sector::Plus);
    const auto minus = sector_ground_state(layout, coupling, Sector::Minus);
    CAPTURE(d);
    CHECK(plus.min_energy == doctest::Approx(oracle_min_energy(layout, coupling, Sector::Plus)));
    CHECK(minus.min_energy ==
          doctest::Approx(oracle_min_energy(layout, coupling, Sector::Minus)));
    if (d % 2 == 0) {
      CHECK(plus.min_energy < minus.min_energy);
      CHECK(plus.degeneracy == 1);
    } else {
      CHECK(minus.min_energy < plus.min_energy);
      CHECK(minus.degeneracy == 1);
    }
  }
}
