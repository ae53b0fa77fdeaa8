#pragma once

namespace lmg {

// Phase classification at the thermodynamic critical point h_c = 1. h = 1 is
// grouped with the symmetric side for labeling; both closed-form chi branches
// are singular there and reject it.
enum class Phase { Symmetric, Broken };

Phase phase_of(double h);

const char* to_string(Phase p);

// Closed-form large-N predictions from the single-boson (spin-wave) reduction
// of the model, all at lambda = 1. Validity: |gamma| < 1.

// Intensive susceptibility in the polarized phase,
//   chi(h) = (1-gamma)^2 / (32 (h-1)^2 (h-gamma)^2),  h > 1 strictly.
double chi_symmetric(double gamma, double h);

// Broken-phase prediction, leading term extensive. Kept separate on purpose:
// the sub-leading term is known to disagree with finite-size numerics and
// downstream comparisons must be able to use the leading term alone.
struct BrokenChi {
  double leading = 0.0;     // N / (4 sqrt((1-h^2)(1-gamma)))
  double subleading = 0.0;  // h^2 (h^2-gamma)^2 / (32 (1-gamma)^2 (1-h^2)^2)
};
BrokenChi chi_broken(double gamma, double h, int n_spins);

// Oscillator quantum: 2 sqrt((h-1)(h-gamma)) for h >= 1,
// 2 sqrt((1-h^2)(1-gamma)) for h < 1. Zero exactly at h = 1.
double hp_gap(double gamma, double h);

// Ground energy including the zero-point term:
//   h >= 1: -h (N+1) + (1+gamma)/2 + sqrt((h-1)(h-gamma))
//   h <  1: -N (1+h^2)/2 - (1-gamma)/2 + sqrt((1-h^2)(1-gamma))
// The branches meet at h = 1 where both give -N - (1-gamma)/2.
double hp_ground_energy(double gamma, double h, int n_spins);

// Angle of the mode-diagonalizing transformation in the polarized phase,
// tanh(angle) = (1-gamma) / (2h - 1 - gamma), h > 1 strictly. The denominator
// makes the argument reach 1 exactly at h = 1 for every gamma and keeps the
// quantum consistent: with A = 2h-1-gamma, B = 1-gamma,
// sqrt(A^2 - B^2) = 2 sqrt((h-1)(h-gamma)) = hp_gap.
double bogoliubov_angle(double gamma, double h);

// Divergence rate of chi approaching h_c from each side: 2 (symmetric),
// 1/2 (broken). Tied to the peak exponents through alpha = mu/nu.
double alpha_exponent(Phase p);

}  // namespace lmg
