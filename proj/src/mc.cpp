#include "scthresh/mc.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "scthresh/errors.hpp"
#include "scthresh/exact.hpp"

namespace scthresh {

void McParams::validate() const {
  if (sweeps == 0) throw std::invalid_argument("mc: sweeps must be positive");
  if (resolved_burn_in() >= sweeps) {
    throw std::invalid_argument("mc: burn_in must be smaller than sweeps");
  }
  if (chains < 1) throw std::invalid_argument("mc: chains must be positive");
  if (bins < 2) throw std::invalid_argument("mc: bins must be at least 2");
  if (sweeps - resolved_burn_in() < static_cast<std::uint64_t>(bins)) {
    throw std::invalid_argument("mc: fewer post-burn-in sweeps than bins");
  }
}

double fidelity_from_ratio(double ratio) {
  if (std::isinf(ratio)) return 1.0 / std::sqrt(2.0);
  const double a = 1.0 + ratio;
  const double b = 1.0 - ratio;
  return a / std::sqrt(a * a + b * b);
}

double flip_set_delta(const Adjacency& adjacency, const std::vector<std::int8_t>& spins,
                      std::span<const int> flip_set, std::vector<std::uint8_t>& scratch) {
  for (int q : flip_set) scratch[q] = 1;
  double delta = 0.0;
  for (int q : flip_set) {
    double acc = 0.0;
    for (const auto& e : adjacency.neighbors(q)) {
      if (!scratch[e.other]) acc += e.j_re * spins[e.other];
    }
    delta -= 2.0 * spins[q] * acc;
  }
  for (int q : flip_set) scratch[q] = 0;
  return delta;
}

namespace {

// 53-bit uniform in [0, 1); bit-identical for a given seed on any platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct ChainTally {
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t plaq_attempts = 0;
  std::uint64_t plaq_accepts = 0;
  std::uint64_t sector_attempts = 0;
  std::uint64_t sector_accepts = 0;
  std::vector<std::uint64_t> bin_minus;
  std::vector<std::uint64_t> bin_total;
};

struct ReplicaState {
  std::vector<std::int8_t> spins;
  Sector sector = Sector::Plus;
  double energy = 0.0;
};

class ChainRunner {
 public:
  ChainRunner(const CodeLayout& layout, const CouplingMatrix& coupling)
      : adjacency_(coupling),
        supports_(layout.plaquettes),
        gamma_(layout.logical_z),
        scratch_(layout.num_qubits(), 0) {}

  ReplicaState initial_state(const CodeLayout& layout, const CouplingMatrix& coupling) const {
    SectorConfig base = spin_config(layout, 0, Sector::Plus);
    ReplicaState st;
    st.energy = energy(base, coupling).real();
    st.spins = std::move(base.spins);
    return st;
  }

  // One sweep: a Metropolis attempt per plaquette, then one sector-flip
  // attempt along gamma.
  void sweep(ReplicaState& st, double beta, std::mt19937_64& rng, ChainTally& tally,
             bool record) {
    for (const auto& support : supports_) {
      const double d = flip_set_delta(adjacency_, st.spins, support, scratch_);
      if (record) ++tally.plaq_attempts;
      if (accept(d, beta, rng)) {
        apply(st, support, d);
        if (record) ++tally.plaq_accepts;
      }
    }
    const double d = flip_set_delta(adjacency_, st.spins, gamma_, scratch_);
    if (record) ++tally.sector_attempts;
    if (accept(d, beta, rng)) {
      apply(st, gamma_, d);
      st.sector = (st.sector == Sector::Plus) ? Sector::Minus : Sector::Plus;
      if (record) ++tally.sector_accepts;
    }
  }

 private:
  static bool accept(double delta, double beta, std::mt19937_64& rng) {
    if (delta <= 0.0) return true;
    return uniform01(rng) < std::exp(-beta * delta);
  }

  void apply(ReplicaState& st, std::span<const int> flip_set, double delta) {
    for (int q : flip_set) st.spins[q] = -st.spins[q];
    st.energy += delta;
  }

  Adjacency adjacency_;
  std::vector<std::vector<int>> supports_;
  std::vector<int> gamma_;
  std::vector<std::uint8_t> scratch_;
};

void record_measurement(ChainTally& tally, const ReplicaState& st, std::uint64_t measured,
                        std::uint64_t total_measurements, int bins) {
  const bool is_minus = st.sector == Sector::Minus;
  if (is_minus) {
    ++tally.minus;
  } else {
    ++tally.plus;
  }
  const std::size_t bin = static_cast<std::size_t>((measured * bins) / total_measurements);
  tally.bin_minus[bin] += is_minus ? 1 : 0;
  ++tally.bin_total[bin];
}

McEstimate merge_tallies(double beta, const std::vector<ChainTally>& tallies) {
  McEstimate est;
  est.beta = beta;

  std::uint64_t plaq_att = 0, plaq_acc = 0, sect_att = 0, sect_acc = 0;
  std::vector<double> bin_fractions;
  for (const auto& t : tallies) {
    est.plus_count += t.plus;
    est.minus_count += t.minus;
    plaq_att += t.plaq_attempts;
    plaq_acc += t.plaq_accepts;
    sect_att += t.sector_attempts;
    sect_acc += t.sector_accepts;
    for (std::size_t b = 0; b < t.bin_minus.size(); ++b) {
      if (t.bin_total[b] > 0) {
        bin_fractions.push_back(static_cast<double>(t.bin_minus[b]) /
                                static_cast<double>(t.bin_total[b]));
      }
    }
  }
  est.plaquette_acceptance =
      plaq_att == 0 ? 0.0 : static_cast<double>(plaq_acc) / static_cast<double>(plaq_att);
  est.sector_acceptance =
      sect_att == 0 ? 0.0 : static_cast<double>(sect_acc) / static_cast<double>(sect_att);

  if (est.plus_count == 0) {
    est.ratio_saturated = true;
    est.ratio = std::numeric_limits<double>::infinity();
    est.ratio_stderr = std::numeric_limits<double>::infinity();
    est.fidelity = fidelity_from_ratio(est.ratio);
    est.fidelity_stderr = std::numeric_limits<double>::infinity();
    return est;
  }

  const double total = static_cast<double>(est.plus_count + est.minus_count);
  const double fraction = static_cast<double>(est.minus_count) / total;
  est.ratio = fraction / (1.0 - fraction);

  // Binned stderr of the Minus occupancy fraction, propagated to R and F.
  double mean = 0.0;
  for (double f : bin_fractions) mean += f;
  mean /= static_cast<double>(bin_fractions.size());
  double var = 0.0;
  for (double f : bin_fractions) var += (f - mean) * (f - mean);
  const auto k = static_cast<double>(bin_fractions.size());
  const double fraction_stderr = std::sqrt(var / (k * (k - 1.0)));

  const double dr_df = 1.0 / ((1.0 - fraction) * (1.0 - fraction));
  est.ratio_stderr = fraction_stderr * dr_df;

  est.fidelity = fidelity_from_ratio(est.ratio);
  const double one_plus_r2 = 2.0 * (1.0 + est.ratio * est.ratio);
  const double df_dr = 2.0 * (1.0 - est.ratio) / (one_plus_r2 * std::sqrt(one_plus_r2));
  est.fidelity_stderr = std::abs(df_dr) * est.ratio_stderr;
  return est;
}

void check_mc_inputs(const CodeLayout& layout, const CouplingMatrix& coupling, double beta,
                     const McParams& params) {
  params.validate();
  if (beta < 0.0) throw std::invalid_argument("mc: beta must be nonnegative");
  if (coupling.num_qubits != layout.num_qubits()) {
    throw std::invalid_argument("mc: coupling was built for a different layout");
  }
  if (!coupling.is_real()) {
    throw ComplexWeightsUnsupported(
        "mc: coupling has imaginary parts; the Metropolis engine samples real weights only");
  }
}

ChainTally run_single_chain(const CodeLayout& layout, const CouplingMatrix& coupling, double beta,
                            const McParams& params, std::uint64_t seed) {
  ChainRunner runner(layout, coupling);
  ReplicaState state = runner.initial_state(layout, coupling);
  std::mt19937_64 rng(seed);

  const std::uint64_t burn = params.resolved_burn_in();
  const std::uint64_t measurements = params.sweeps - burn;
  ChainTally tally;
  tally.bin_minus.assign(params.bins, 0);
  tally.bin_total.assign(params.bins, 0);

  for (std::uint64_t sweep = 0; sweep < params.sweeps; ++sweep) {
    const bool record = sweep >= burn;
    runner.sweep(state, beta, rng, tally, record);
    if (record) record_measurement(tally, state, sweep - burn, measurements, params.bins);
  }
  return tally;
}

}  // namespace

McEstimate mc_estimate(const CodeLayout& layout, const CouplingMatrix& coupling, double beta,
                       const McParams& params) {
  check_mc_inputs(layout, coupling, beta, params);

  std::vector<ChainTally> tallies(params.chains);
  std::vector<std::thread> workers;
  workers.reserve(params.chains);
  for (int c = 0; c < params.chains; ++c) {
    workers.emplace_back([&, c] {
      tallies[c] = run_single_chain(layout, coupling, beta, params, params.seed + c);
    });
  }
  for (auto& w : workers) w.join();

  return merge_tallies(beta, tallies);
}

namespace {

std::vector<McEstimate> replica_exchange_curve(const CodeLayout& layout,
                                               const CouplingMatrix& coupling,
                                               const std::vector<double>& betas,
                                               const McParams& params) {
  const std::size_t nb = betas.size();
  const std::uint64_t burn = params.resolved_burn_in();
  const std::uint64_t measurements = params.sweeps - burn;

  std::vector<std::vector<ChainTally>> all_tallies(
      params.chains, std::vector<ChainTally>(nb));

  auto run_chain = [&](int c) {
    ChainRunner runner(layout, coupling);
    std::mt19937_64 rng(params.seed + c);
    std::vector<ReplicaState> states(nb, runner.initial_state(layout, coupling));
    auto& tallies = all_tallies[c];
    for (auto& t : tallies) {
      t.bin_minus.assign(params.bins, 0);
      t.bin_total.assign(params.bins, 0);
    }

    for (std::uint64_t sweep = 0; sweep < params.sweeps; ++sweep) {
      const bool record = sweep >= burn;
      for (std::size_t i = 0; i < nb; ++i) {
        runner.sweep(states[i], betas[i], rng, tallies[i], record);
      }
      // Alternating even/odd adjacent swaps; acceptance uses the product of
      // the two Boltzmann weight changes.
      for (std::size_t i = sweep % 2; i + 1 < nb; i += 2) {
        const double log_accept =
            (betas[i + 1] - betas[i]) * (states[i + 1].energy - states[i].energy);
        if (log_accept >= 0.0 || uniform01(rng) < std::exp(log_accept)) {
          std::swap(states[i], states[i + 1]);
        }
      }
      if (record) {
        for (std::size_t i = 0; i < nb; ++i) {
          record_measurement(tallies[i], states[i], sweep - burn, measurements, params.bins);
        }
      }
    }
  };

  std::vector<std::thread> workers;
  workers.reserve(params.chains);
  for (int c = 0; c < params.chains; ++c) workers.emplace_back(run_chain, c);
  for (auto& w : workers) w.join();

  std::vector<McEstimate> curve;
  curve.reserve(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    std::vector<ChainTally> per_beta;
    per_beta.reserve(params.chains);
    for (int c = 0; c < params.chains; ++c) per_beta.push_back(all_tallies[c][i]);
    curve.push_back(merge_tallies(betas[i], per_beta));
  }
  return curve;
}

}  // namespace

std::vector<McEstimate> mc_curve(const CodeLayout& layout, const CouplingMatrix& coupling,
                                 const std::vector<double>& betas, const McParams& params) {
  for (double b : betas) check_mc_inputs(layout, coupling, b, params);

  if (params.replica_exchange && betas.size() > 1) {
    return replica_exchange_curve(layout, coupling, betas, params);
  }
  std::vector<McEstimate> curve;
  curve.reserve(betas.size());
  for (double b : betas) curve.push_back(mc_estimate(layout, coupling, b, params));
  return curve;
}

}  // namespace scthresh
