#pragma once

#include <vector>

#include "lmg/model.hpp"

namespace lmg {

struct SolverOptions {
  // Residual acceptance threshold, relative to matrix_scale(): the operator
  // norm grows like N, so an absolute threshold would be meaningless at 2^16.
  double residual_tol = 1e-12;
  // Two levels within one symmetry sector closer than guard * tol * scale are
  // treated as an unresolvable degeneracy. The near-exact cross-sector
  // degeneracy of the broken phase is NOT flagged here: the driving operator
  // is parity conserving, so sector-resolved quantities stay well defined.
  double degeneracy_guard = 100.0;
  // Full decompositions fall back to dense divide and conquer only below this
  // full-matrix dimension.
  int dense_cap = 4096;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // full-basis, unit norm, sign-canonicalized
};

struct GroundState {
  EigenPair pair;
  Parity sector = Parity::Even;
  double gap_full = 0.0;       // E1 - E0 over the whole matrix
  double gap_in_sector = 0.0;  // E1 - E0 within the winning parity block
  bool quasi_degenerate = false;  // gap_full below the degeneracy threshold
};

// Lowest eigenpair of an offset-2 banded matrix, computed per parity block by
// bisection + inverse iteration (O(dim) per eigenpair, deterministic). Exact
// cross-sector ties break toward the sector containing the top index m = +S,
// the one connected to the h -> infinity limit. Throws ConvergenceError if the
// residual check fails, RefusedError if the winning sector is internally
// degenerate at the guard threshold.
GroundState solve_ground(const BandedSpinMatrix& m, const SolverOptions& opt = {});

// The k smallest eigenvalues of the full matrix, ascending, without vectors.
std::vector<double> lowest_eigenvalues(const BandedSpinMatrix& m, int k,
                                       const SolverOptions& opt = {});

// Full decomposition, ascending eigenvalues with full-basis vectors. Refuses
// dimensions above opt.dense_cap. Intended for small-N spectra and dumps.
std::vector<EigenPair> solve_full(const BandedSpinMatrix& m, const SolverOptions& opt = {});

// Tridiagonal building blocks, exposed for sector-resolved work.
// Lowest k eigenvalues, ascending.
std::vector<double> tridiag_lowest_values(const std::vector<double>& diag,
                                          const std::vector<double>& offdiag, int k);
// Lowest eigenpair (sector-local vector, unit norm).
EigenPair tridiag_ground(const std::vector<double>& diag, const std::vector<double>& offdiag);
// Full decomposition; pairs ascending, vectors sector-local.
std::vector<EigenPair> tridiag_full(const std::vector<double>& diag,
                                    const std::vector<double>& offdiag);

// Flips v if needed so its largest-magnitude entry (lowest index on ties) is
// positive. Removes the sign ambiguity before overlaps are compared.
void canonicalize_sign(std::vector<double>& v);

// ||M v - value * v||_2, the defect the residual_tol check is applied to.
double residual_norm(const BandedSpinMatrix& m, const EigenPair& pair);

}  // namespace lmg
