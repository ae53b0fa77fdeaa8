#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace lmg {

// Parameters of one instance of the uniformly connected anisotropic XY model
// in a transverse field,
//
//   H = -(lambda/N) * sum_{i<j} (sx_i sx_j + gamma * sy_i sy_j) - 2h * sum_i sz_i,
//
// restricted to the maximal-spin sector S = N/2 where the ground state lives.
// The ferromagnetic window |gamma| < 1, lambda > 0 is the supported domain;
// h may be any real for spectrum work, workflows use the canonical h >= 0.
struct ModelParams {
  int n_spins = 2;
  double gamma = 0.0;
  double h = 0.0;
  double lambda = 1.0;

  ModelParams with_h(double new_h) const {
    ModelParams p = *this;
    p.h = new_h;
    return p;
  }
};

// Throws std::invalid_argument unless n_spins >= 1, |gamma| < 1, lambda > 0
// and all fields are finite.
void validate(const ModelParams& p);

// validate() plus the canonical-domain requirement h >= 0 used by every
// workflow entry point (the h <-> -h spectral symmetry makes h < 0 redundant).
void validate_canonical(const ModelParams& p);

// Collective-spin basis |S, m> of the maximal sector, m ascending. Index i
// maps to m = -S + i, so dimension = N + 1 regardless of parity of N.
struct DickeBasis {
  int n_spins = 0;
  double total_spin = 0.0;
  int dimension = 0;

  static DickeBasis for_spins(int n_spins);

  double m_of(int index) const { return -total_spin + static_cast<double>(index); }
};

// Real symmetric matrix with nonzero entries only on the main diagonal and on
// the pair of diagonals at distance `offset`. offdiag[i] couples i and
// i + offset, so offdiag has dimension - offset entries (empty if the offset
// exceeds the dimension).
struct BandedSpinMatrix {
  int dimension = 0;
  int offset = 1;
  std::vector<double> diag;
  std::vector<double> offdiag;
};

// y = M x. Sizes must match the matrix dimension.
void matvec(const BandedSpinMatrix& m, std::span<const double> x, std::span<double> y);

// Row-major dense copy, for small-dimension cross-checks.
std::vector<double> to_dense(const BandedSpinMatrix& m);

// Infinity-norm upper bound max|diag| + 2 max|offdiag|; scale reference for
// residual and degeneracy thresholds on matrices whose norm grows with N.
double matrix_scale(const BandedSpinMatrix& m);

// Hamiltonian in the Dicke basis. Banded with offset 2: the spin-flip terms
// sx^2 - gamma^2-weighted sy^2 only connect m to m +/- 2, so the matrix splits
// into two parity-decoupled tridiagonal blocks (see split_sectors).
BandedSpinMatrix build_hamiltonian(const ModelParams& p);

// dH/dh = -2 Sz, the operator whose fluctuations the susceptibility measures.
// Diagonal, returned in the same banded container (offset 2, zero offdiag) so
// it composes with the Hamiltonian utilities.
BandedSpinMatrix build_driving(const ModelParams& p);

// Spin-flip parity label, the parity of the basis index (m - m_min).
enum class Parity { Even = 0, Odd = 1 };

inline Parity index_parity(int index) { return index % 2 == 0 ? Parity::Even : Parity::Odd; }

// Tridiagonal block acting on every offset-th basis index starting at `start`.
// `indices[t]` is the original row of slot t.
struct SectorBlock {
  Parity label = Parity::Even;
  std::vector<int> indices;
  std::vector<double> diag;
  std::vector<double> offdiag;
};

// Decouples an offset-2 banded matrix into its even and odd index chains.
// Requires offset == 2. first = even, second = odd.
std::pair<SectorBlock, SectorBlock> split_sectors(const BandedSpinMatrix& m);

// Scatter a sector-local vector back to the full basis (zeros elsewhere).
std::vector<double> embed_sector(const SectorBlock& s, std::span<const double> local, int dimension);

}  // namespace lmg
