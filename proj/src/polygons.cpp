#include "scthresh/polygons.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scthresh/errors.hpp"

namespace scthresh {

std::uint64_t PolygonCensus::count_for(int len) const {
  for (const auto& [l, c] : counts) {
    if (l == len) return c;
  }
  throw std::invalid_argument("PolygonCensus: no count for perimeter " + std::to_string(len));
}

namespace {

// Depth-first enumeration of closed self-avoiding walks anchored at the
// origin. Ordering vertices by (y, x), the two polygon edges at the smallest
// vertex necessarily go to (+1,0) and (0,+1); forcing the first step to
// (+1,0) therefore counts each translation class exactly once. Walks may only
// visit vertices with y > 0, or y == 0 and x >= 0, which pins the anchor.
class PolygonCounter {
 public:
  explicit PolygonCounter(int max_len)
      : max_len_(max_len),
        width_(2 * max_len + 1),
        visited_(static_cast<std::size_t>(width_) * (max_len + 2), 0),
        counts_(max_len + 1, 0) {}

  std::vector<std::uint64_t> run() {
    visit_mark(0, 0, 1);
    extend(1, 0, 1);
    visit_mark(0, 0, 0);
    return counts_;
  }

 private:
  std::size_t cell(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + (x + max_len_);
  }
  bool visited(int x, int y) const { return visited_[cell(x, y)] != 0; }
  void visit_mark(int x, int y, char v) { visited_[cell(x, y)] = v; }

  void extend(int x, int y, int steps) {
    if (x == 0 && y == 0) {
      if (steps >= 4) ++counts_[steps];
      return;
    }
    if (visited(x, y)) return;
    // Not enough budget to walk back to the origin: prune.
    if (steps + std::abs(x) + std::abs(y) > max_len_) return;
    visit_mark(x, y, 1);
    if (y > 0 || x >= 0) extend(x + 1, y, steps + 1);
    if (y > 0 || x - 1 >= 0) extend(x - 1, y, steps + 1);
    extend(x, y + 1, steps + 1);
    if (y - 1 > 0 || (y - 1 == 0 && x >= 0)) extend(x, y - 1, steps + 1);
    visit_mark(x, y, 0);
  }

  int max_len_;
  int width_;
  std::vector<char> visited_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

PolygonCensus enumerate_polygons(int max_len) {
  if (max_len < 4 || max_len > 18 || max_len % 2 != 0) {
    throw std::invalid_argument("enumerate_polygons: max_len must be even and within [4, 18]");
  }
  PolygonCounter counter(max_len);
  const std::vector<std::uint64_t> raw = counter.run();

  PolygonCensus census;
  census.max_len = max_len;
  for (int l = 4; l <= max_len; l += 2) census.counts.emplace_back(l, raw[l]);
  return census;
}

MuEstimate estimate_mu(const PolygonCensus& census) {
  if (census.counts.size() < 3) {
    throw std::invalid_argument("estimate_mu: census needs at least three perimeter values");
  }

  MuEstimate estimate;
  for (std::size_t i = 1; i < census.counts.size(); ++i) {
    const auto& [len, count] = census.counts[i];
    estimate.ratios.emplace_back(
        len, static_cast<double>(count) / static_cast<double>(census.counts[i - 1].second));
  }

  // counts(l)/counts(l-2) approaches mu^2 with a power-law correction in 1/l;
  // extrapolate the last ratios to 1/l -> 0 through a polynomial in 1/l
  // (quadratic over the last three ratios, linear when only two exist).
  const std::size_t n = estimate.ratios.size();
  const std::size_t order = std::min<std::size_t>(3, n);
  std::vector<double> x(order), r(order);
  for (std::size_t k = 0; k < order; ++k) {
    x[k] = 1.0 / static_cast<double>(estimate.ratios[n - order + k].first);
    r[k] = estimate.ratios[n - order + k].second;
  }
  double mu_sq = 0.0;
  for (std::size_t k = 0; k < order; ++k) {
    double w = 1.0;
    for (std::size_t m = 0; m < order; ++m) {
      if (m != k) w *= x[m] / (x[m] - x[k]);
    }
    mu_sq += w * r[k];
  }
  estimate.mu_hat = std::sqrt(mu_sq);
  return estimate;
}

int neighbor_count(const CodeLayout& layout, const CouplingModel& model) {
  if (model.kind != CouplingModel::Kind::StripedOhmic) {
    throw std::invalid_argument("neighbor_count: only defined for the striped model");
  }
  const CouplingMatrix coupling = build_coupling(layout, model);
  std::vector<int> degree(layout.num_qubits(), 0);
  for (const auto& p : coupling.pairs) {
    ++degree[p.r];
    ++degree[p.s];
  }
  return degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
}

double predict_beta_c(const CouplingModel& model, double mu, int striped_neighbors) {
  if (mu <= 1.0) {
    throw std::invalid_argument("predict_beta_c: mu must exceed 1");
  }
  switch (model.kind) {
    case CouplingModel::Kind::NearestNeighbor:
      if (model.j <= 0.0) throw std::invalid_argument("predict_beta_c: J must be positive");
      return std::log(mu) / (8.0 * model.j);
    case CouplingModel::Kind::StripedOhmic:
      if (model.j <= 0.0) throw std::invalid_argument("predict_beta_c: J must be positive");
      if (striped_neighbors < 1) {
        throw std::invalid_argument(
            "predict_beta_c: striped model needs the interaction degree n >= 1");
      }
      return std::log(mu) / (static_cast<double>(striped_neighbors) * model.j);
    case CouplingModel::Kind::FullOhmic:
      throw NoPredictor(
          "predict_beta_c: no analytic threshold exists when every qubit pair interacts");
  }
  throw std::invalid_argument("predict_beta_c: unknown model kind");
}

}  // namespace scthresh
