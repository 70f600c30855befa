#pragma once

#include <string>
#include <utility>
#include <vector>

namespace scthresh {

enum class CurveSource { Exact, Mc };

struct CurvePoint {
  double beta = 0.0;
  double fidelity = 0.0;
  double fidelity_err = 0.0;  // 0 for exact points
  CurveSource source = CurveSource::Exact;
};

struct FidelityCurve {
  int distance = 0;
  std::string model;
  std::vector<CurvePoint> points;  // betas strictly increasing
};

/// Finite-size crossing of two fidelity curves, located by linear
/// interpolation inside the bracketing grid interval.
struct CrossingEstimate {
  double beta_c = 0.0;
  int d1 = 0;
  int d2 = 0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
  double beta_c_err = 0.0;  // from +-1 sigma endpoint perturbation; 0 without error bars
  bool multiple = false;    // more than one sign change on the grid
};

/// Locates the first sign change of F_1(beta) - F_2(beta), excluding the
/// trivial degeneracy at beta = 0 where every curve equals 1. When error bars
/// are present, the crossing of the +-1 sigma shifted curve pair bounds
/// beta_c_err. Throws NoCrossing if the difference never changes sign and
/// std::invalid_argument for mismatched grids or d1 == d2.
CrossingEstimate find_crossing(const FidelityCurve& c1, const FidelityCurve& c2);

struct ThresholdReport {
  double predictor = 0.0;
  std::vector<CrossingEstimate> crossings;               // one per curve pair with a crossing
  std::vector<std::pair<int, int>> pairs_without_crossing;
  double beta_c_min = 0.0;
  double beta_c_max = 0.0;
  double spread = 0.0;  // beta_c_max - beta_c_min
  double mean_beta_c = 0.0;
  double mean_ratio_to_predictor = 0.0;
  std::vector<std::string> notes;
};

/// All pairwise crossings of the given curves plus the comparison against an
/// analytic predictor. Requires at least two curves.
ThresholdReport threshold_report(const std::vector<FidelityCurve>& curves, double predictor);

}  // namespace scthresh
