#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lmg/eigensolver.hpp"
#include "lmg/model.hpp"

namespace lmg {

enum class ChiMethod { Perturbative, Overlap };

const char* to_string(ChiMethod m);

struct ChiEstimate {
  double value = 0.0;
  ChiMethod method = ChiMethod::Perturbative;
  // Step actually used by the overlap estimator; 0 for the perturbative sum.
  double delta_h = 0.0;
  // |estimate(delta) - estimate(delta/2)|, the Richardson convergence check;
  // 0 for the perturbative sum.
  double convergence_error = 0.0;
  // Full-spectrum gap fell below the degeneracy threshold (broken phase at
  // large N). Sector-resolved results stay valid; flagged for transparency.
  bool quasi_degenerate = false;
};

// 1 - |<a|b>| without forming the overlap first: for unit vectors and
// s = sign(<a|b>), 1 - s<a|b> = ||a - s b||^2 / 2 up to the norm defects,
// which the formula keeps explicitly. Accurate down to ~1e-16 where the
// naive 1 - dot loses everything below 1e-16/eps.
double one_minus_fidelity(std::span<const double> a, std::span<const double> b);

// Ground-state fidelity F(h1, h2) = |<gs(h1)|gs(h2)>|. Throws RefusedError if
// the two ground states live in different parity sectors (the overlap is then
// an exact zero by symmetry, not a perturbative quantity).
double fidelity_between(const ModelParams& p, double h1, double h2,
                        const SolverOptions& opt = {});

// chi(h) from second-order perturbation theory,
//   chi = sum_{n>0} |<n| dH/dh |0>|^2 / (E_n - E_0)^2,
// with the sum restricted to the ground state's parity sector: dH/dh = -2 Sz
// conserves parity, so cross-sector terms vanish identically and the
// quasi-degenerate partner of the broken phase never enters. Needs a full
// sector decomposition, so it is capped at opt.dense_cap matrix dimension.
ChiEstimate chi_perturbative(const ModelParams& p, const SolverOptions& opt = {});

// Single finite-difference estimate 2 (1 - F(h - d/2, h + d/2)) / d^2 with no
// extrapolation. Exposed for step-convergence studies.
double chi_overlap_raw(const ModelParams& p, double delta_h, const SolverOptions& opt = {});

// Overlap estimator with one Richardson step: evaluates at delta and delta/2,
// returns (4 est(d/2) - est(d)) / 3, convergence_error = |est(d) - est(d/2)|.
// Requires 0 < delta_h < 2h so both evaluation points stay in h > 0.
ChiEstimate chi_overlap(const ModelParams& p, double delta_h, const SolverOptions& opt = {});

// Default finite-difference step: 1e-4, tightened to 1e-5 within 0.05 of the
// critical point h = 1 where chi varies fastest.
double default_delta_h(double h);

// Method selection: perturbative when the matrix fits under the dense cap,
// otherwise overlap with default_delta_h. For weak signals (1 - F below
// ~1e-9 at the default step, typical deep in the symmetric phase) the step is
// widened toward 1 - F ~ 1e-7, capped well inside the distance to h = 1, so
// the quotient keeps ~6 significant digits.
ChiEstimate chi_auto(const ModelParams& p, const SolverOptions& opt = {});

struct CurvePoint {
  double h = 0.0;
  double chi = 0.0;
  ChiEstimate detail;
  std::string flag;  // empty = clean; otherwise the refusal/failure reason
};

struct FidelityCurve {
  int n_spins = 0;
  double gamma = 0.0;
  std::vector<CurvePoint> points;
};

// chi over an ascending grid of h values. Points that are refused or fail to
// converge are kept in place with chi = NaN and the reason in `flag`, so one
// bad point cannot discard a sweep. `jobs` threads at most; the result is
// independent of jobs because points are written by index.
FidelityCurve sweep_chi(const ModelParams& base, const std::vector<double>& h_grid,
                        int jobs = 1, const SolverOptions& opt = {});

}  // namespace lmg
