#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lmg/analytic.hpp"
#include "lmg/fidelity.hpp"
#include "lmg/model.hpp"

namespace lmg {

struct PeakResult {
  int n_spins = 0;
  double gamma = 0.0;
  double h_max = 0.0;
  double chi_max = 0.0;
  double refinement_width = 0.0;  // bracket width at termination
  int evaluations = 0;            // distinct chi evaluations spent
};

enum class FitQuantity { Mu, Delta, Nu };

const char* to_string(FitQuantity q);

struct ScalingFit {
  double exponent = 0.0;
  double uncertainty = 0.0;  // standard error of the fitted slope
  double residual = 0.0;     // RMS residual in log space
  int n_min = 0;
  int n_max = 0;
  FitQuantity quantity = FitQuantity::Mu;
};

struct PeakSearchOptions {
  double tol_h = 1e-6;   // terminal bracket width (h is O(1), so ~relative)
  int scan_points = 13;  // initial uniform scan of the bracket
  int max_iterations = 200;
};

// Maximizer of an expensive scalar function on [lo, hi]: uniform scan to find
// an interior maximum, golden-section shrink to tol_h, one parabolic step
// through the best cached triple. Evaluations are cached, so repeated
// abscissae are free. Throws RefusedError when the scan maximum lands on a
// bracket edge (no interior peak), quoting the sampled values.
PeakResult maximize_on_bracket(const std::function<double(double)>& f, double lo, double hi,
                               const PeakSearchOptions& opt = {});

// Default h-bracket for the susceptibility peak: it drifts toward 1 like
// c * N^(-2/3) with c between roughly 1.4 and 3.1 over |gamma| < 1, so
// [max(0.15, 1 - 40 s), 1 - 0.002 s] with s = N^(-2/3) brackets it with wide
// margins at every size from 2^4 up.
std::pair<double, double> default_peak_bracket(int n_spins);

// Susceptibility peak for one (N, gamma): chi_auto as the oracle over the
// given bracket (default_peak_bracket if lo >= hi).
PeakResult locate_peak(int n_spins, double gamma, std::pair<double, double> bracket = {0, 0},
                       double tol_h = 1e-6, const SolverOptions& opt = {});

// Least-squares slope of log(value) vs log(n): value ~ C * n^exponent.
// Needs >= 3 points with positive values. The uncertainty is the standard
// error of the slope, floored at the smallest positive double so noiseless
// synthetic data still reports a positive width.
ScalingFit fit_power_law(const std::vector<std::pair<int, double>>& points,
                         FitQuantity quantity = FitQuantity::Mu);

// Drift exponent of the peak toward the critical coupling:
// h_c - h_max ~ N^(-delta), returned with positive sign. Every peak must sit
// below h_c.
ScalingFit fit_delta(const std::vector<PeakResult>& peaks, double h_c = 1.0);

struct CollapseInput {
  FidelityCurve curve;  // sampled around the peak, ascending h
  PeakResult peak;
};

struct RescaledCurve {
  int n_spins = 0;
  std::vector<double> x;  // N^nu (h - h_max)
  std::vector<double> y;  // (chi_max - chi) / chi
};

struct CollapseResult {
  double nu = 0.0;
  double objective = 0.0;  // mean squared pairwise spread at the optimum
  std::vector<RescaledCurve> curves;
};

struct CollapseOptions {
  double nu_min = 0.3;
  double nu_max = 1.0;
  double nu_step = 0.005;
  double refine_tol = 1e-4;
  int grid_points = 200;  // common x-grid for the spread objective
};

// Collapse objective at one candidate nu: rescale every curve, interpolate
// all of them onto a uniform grid over the shared x-range, and average the
// squared pairwise differences. Exposed so local optimality is testable.
double collapse_objective(const std::vector<CollapseInput>& inputs, double nu,
                          const CollapseOptions& opt = {});

// Scan + golden refinement of the collapse objective over nu. Needs >= 3
// sizes whose samples straddle their own peaks (otherwise no shared x-range
// exists and the search is refused).
CollapseResult estimate_nu_collapse(const std::vector<CollapseInput>& inputs,
                                    const CollapseOptions& opt = {});

// Samples chi on a peak-centered grid h = h_max + t * N^(-2/3),
// t in [-span, span], `points` samples, for collapse input. N and gamma come
// from the peak record.
FidelityCurve curve_around_peak(const PeakResult& peak, int points = 15, double span = 6.0,
                                int jobs = 1, const SolverOptions& opt = {});

struct AlphaReport {
  Phase phase = Phase::Symmetric;
  double ratio = 0.0;      // mu/nu, or (mu-1)/nu in the broken convention
  double target = 0.0;     // 2, or 1/2
  double deviation = 0.0;  // |ratio - target|
  double tolerance = 0.0;
  bool pass = false;
};

// Exponent-relation check: symmetric convention compares mu/nu to 2
// (tolerance 0.1), broken convention compares (mu-1)/nu to 1/2 (tolerance
// 0.05). Pass/fail only; uncertainties travel with the inputs.
AlphaReport check_alpha_relation(const ScalingFit& mu, const ScalingFit& nu, Phase phase);

}  // namespace lmg
