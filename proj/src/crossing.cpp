#include "scthresh/crossing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "scthresh/errors.hpp"

namespace scthresh {

namespace {

void check_compatible(const FidelityCurve& c1, const FidelityCurve& c2) {
  if (c1.distance == c2.distance) {
    throw std::invalid_argument("find_crossing: curves must come from different distances");
  }
  if (c1.points.size() != c2.points.size() || c1.points.empty()) {
    throw std::invalid_argument("find_crossing: curves must share one beta grid");
  }
  for (std::size_t i = 0; i < c1.points.size(); ++i) {
    if (std::abs(c1.points[i].beta - c2.points[i].beta) > 1e-12) {
      throw std::invalid_argument("find_crossing: curves must share one beta grid");
    }
    if (i > 0 && c1.points[i].beta <= c1.points[i - 1].beta) {
      throw std::invalid_argument("find_crossing: betas must be strictly increasing");
    }
  }
}

struct RawCrossing {
  double beta_c;
  double low;
  double high;
  int sign_changes;
};

// Scans the difference of two fidelity sequences for sign changes,
// interpolating linearly inside the first bracketing interval. The beta = 0
// grid point is skipped (both curves are exactly 1 there by construction),
// and an exact zero of the difference counts only when bracketed by opposite
// signs, so identical or tangent curves do not report a crossing.
std::optional<RawCrossing> scan(const std::vector<CurvePoint>& p1,
                                const std::vector<CurvePoint>& p2, double shift1, double shift2) {
  auto diff = [&](std::size_t i) {
    return (p1[i].fidelity + shift1 * p1[i].fidelity_err) -
           (p2[i].fidelity + shift2 * p2[i].fidelity_err);
  };

  std::optional<RawCrossing> found;
  int sign_changes = 0;
  auto record = [&](double beta_c, double low, double high) {
    ++sign_changes;
    if (!found || beta_c < found->beta_c) {
      const int seen = found ? found->sign_changes : 0;
      found = RawCrossing{beta_c, low, high, seen};
    }
  };

  for (std::size_t i = 0; i + 1 < p1.size(); ++i) {
    if (p1[i].beta == 0.0) continue;
    const double g0 = diff(i);
    const double g1 = diff(i + 1);
    if (g0 * g1 < 0.0) {
      const double beta_c =
          p1[i].beta - g0 * (p1[i + 1].beta - p1[i].beta) / (g1 - g0);
      record(beta_c, p1[i].beta, p1[i + 1].beta);
    } else if (g0 == 0.0 && i > 0 && p1[i - 1].beta > 0.0 && diff(i - 1) * g1 < 0.0) {
      record(p1[i].beta, p1[i - 1].beta, p1[i + 1].beta);
    }
  }
  if (found) found->sign_changes = sign_changes;
  return found;
}

}  // namespace

CrossingEstimate find_crossing(const FidelityCurve& c1, const FidelityCurve& c2) {
  check_compatible(c1, c2);

  const auto base = scan(c1.points, c2.points, 0.0, 0.0);
  if (!base) {
    throw NoCrossing("find_crossing: the curves do not cross on the shared grid");
  }

  CrossingEstimate estimate;
  estimate.beta_c = base->beta_c;
  estimate.d1 = c1.distance;
  estimate.d2 = c2.distance;
  estimate.bracket_low = base->low;
  estimate.bracket_high = base->high;
  estimate.multiple = base->sign_changes > 1;

  const bool has_errors =
      std::any_of(c1.points.begin(), c1.points.end(),
                  [](const CurvePoint& p) { return p.fidelity_err > 0.0; }) ||
      std::any_of(c2.points.begin(), c2.points.end(),
                  [](const CurvePoint& p) { return p.fidelity_err > 0.0; });
  if (has_errors) {
    // Endpoint perturbation: shift each whole curve by +-1 sigma in opposite
    // directions and take the worst displacement of the crossing.
    double err = 0.0;
    bool lost = false;
    for (double sign : {+1.0, -1.0}) {
      if (const auto shifted = scan(c1.points, c2.points, sign, -sign)) {
        err = std::max(err, std::abs(shifted->beta_c - estimate.beta_c));
      } else {
        lost = true;
      }
    }
    // A shifted pair without a crossing gives no bound; fall back to the
    // bracket half-width.
    if (lost) err = std::max(err, 0.5 * (estimate.bracket_high - estimate.bracket_low));
    estimate.beta_c_err = err;
  }
  return estimate;
}

ThresholdReport threshold_report(const std::vector<FidelityCurve>& curves, double predictor) {
  if (curves.size() < 2) {
    throw std::invalid_argument("threshold_report: need at least two curves");
  }

  ThresholdReport report;
  report.predictor = predictor;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      try {
        report.crossings.push_back(find_crossing(curves[i], curves[j]));
      } catch (const NoCrossing&) {
        report.pairs_without_crossing.emplace_back(curves[i].distance, curves[j].distance);
      }
    }
  }

  if (!report.crossings.empty()) {
    double sum = 0.0;
    report.beta_c_min = std::numeric_limits<double>::infinity();
    report.beta_c_max = -std::numeric_limits<double>::infinity();
    for (const auto& c : report.crossings) {
      sum += c.beta_c;
      report.beta_c_min = std::min(report.beta_c_min, c.beta_c);
      report.beta_c_max = std::max(report.beta_c_max, c.beta_c);
    }
    report.mean_beta_c = sum / static_cast<double>(report.crossings.size());
    report.spread = report.beta_c_max - report.beta_c_min;
    if (predictor > 0.0) {
      report.mean_ratio_to_predictor = report.mean_beta_c / predictor;
    }
  }
  return report;
}

}  // namespace scthresh
