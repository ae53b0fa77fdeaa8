#include "lmg/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>

#include "lmg/errors.hpp"

namespace lmg {

namespace {

std::string lapack_failure(const char* routine, lapack_int info) {
  return std::string(routine) + " failed with info=" + std::to_string(info);
}

// Bisection eigenvalues of a symmetric tridiagonal, indices 1..k (1-based,
// ascending). order='B' keeps the block bookkeeping dstein needs.
struct BisectionResult {
  std::vector<double> values;
  std::vector<lapack_int> iblock;
  std::vector<lapack_int> isplit;
  lapack_int nsplit = 0;
};

BisectionResult bisect_lowest(const std::vector<double>& diag, const std::vector<double>& offdiag,
                              int k) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  BisectionResult r;
  r.values.assign(n, 0.0);
  r.iblock.assign(n, 0);
  r.isplit.assign(n, 0);
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, k, abstol, diag.data(),
                                   offdiag.data(), &found, &r.nsplit, r.values.data(),
                                   r.iblock.data(), r.isplit.data());
  if (info != 0 || found < k) {
    throw ConvergenceError(lapack_failure("dstebz", info) +
                           " (found " + std::to_string(found) + " of " + std::to_string(k) +
                           " eigenvalues)");
  }
  r.values.resize(k);
  return r;
}

}  // namespace

std::vector<double> tridiag_lowest_values(const std::vector<double>& diag,
                                          const std::vector<double>& offdiag, int k) {
  const int n = static_cast<int>(diag.size());
  if (n == 0 || k < 1) throw std::invalid_argument("tridiag_lowest_values: empty input");
  k = std::min(k, n);
  if (n == 1) return {diag[0]};
  BisectionResult r = bisect_lowest(diag, offdiag, k);
  std::sort(r.values.begin(), r.values.end());
  return r.values;
}

EigenPair tridiag_ground(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  if (n == 0) throw std::invalid_argument("tridiag_ground: empty matrix");
  EigenPair p;
  if (n == 1) {
    p.value = diag[0];
    p.vector = {1.0};
    return p;
  }
  BisectionResult r = bisect_lowest(diag, offdiag, 1);
  p.value = r.values[0];
  p.vector.assign(n, 0.0);
  std::vector<lapack_int> ifail(1, 0);
  lapack_int info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, diag.data(), offdiag.data(), 1,
                                   r.values.data(), r.iblock.data(), r.isplit.data(),
                                   p.vector.data(), n, ifail.data());
  if (info != 0) throw ConvergenceError(lapack_failure("dstein", info));
  canonicalize_sign(p.vector);
  return p;
}

std::vector<EigenPair> tridiag_full(const std::vector<double>& diag,
                                    const std::vector<double>& offdiag) {
  const lapack_int n = static_cast<lapack_int>(diag.size());
  if (n == 0) throw std::invalid_argument("tridiag_full: empty matrix");
  std::vector<double> d = diag;
  std::vector<double> e = offdiag;
  std::vector<double> z(static_cast<std::size_t>(n) * n, 0.0);
  if (n == 1) {
    z[0] = 1.0;
  } else {
    lapack_int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, d.data(), e.data(), z.data(), n);
    if (info != 0) throw ConvergenceError(lapack_failure("dstevd", info));
  }
  std::vector<EigenPair> out(n);
  for (lapack_int j = 0; j < n; ++j) {
    out[j].value = d[j];
    out[j].vector.assign(z.begin() + static_cast<std::size_t>(j) * n,
                         z.begin() + static_cast<std::size_t>(j + 1) * n);
    canonicalize_sign(out[j].vector);
  }
  return out;
}

void canonicalize_sign(std::vector<double>& v) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > mag) {
      mag = a;
      best = i;
    }
  }
  if (!v.empty() && v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

double residual_norm(const BandedSpinMatrix& m, const EigenPair& pair) {
  std::vector<double> y(m.dimension, 0.0);
  matvec(m, pair.vector, y);
  double acc = 0.0;
  for (int i = 0; i < m.dimension; ++i) {
    const double r = y[i] - pair.value * pair.vector[i];
    acc += r * r;
  }
  return std::sqrt(acc);
}

GroundState solve_ground(const BandedSpinMatrix& m, const SolverOptions& opt) {
  auto [even, odd] = split_sectors(m);
  const SectorBlock* blocks[2] = {&even, &odd};

  // Preferred sector on exact ties: the one holding the top index m = +S,
  // i.e. index parity of dimension-1. It is the sector the ground state sits
  // in for all h > 0, so ties at h = 0 extend that branch continuously.
  const Parity preferred = index_parity(m.dimension - 1);

  double best_low[2];
  double gap_in[2] = {0.0, 0.0};
  for (int b = 0; b < 2; ++b) {
    if (blocks[b]->indices.empty()) {
      best_low[b] = std::numeric_limits<double>::infinity();
      continue;
    }
    const int want = blocks[b]->indices.size() > 1 ? 2 : 1;
    std::vector<double> vals =
        tridiag_lowest_values(blocks[b]->diag, blocks[b]->offdiag, want);
    best_low[b] = vals[0];
    gap_in[b] = vals.size() > 1 ? vals[1] - vals[0] : std::numeric_limits<double>::infinity();
  }

  const double scale = matrix_scale(m);
  const double guard = opt.degeneracy_guard * opt.residual_tol * scale;

  // Below the guard the computed sector minima are pure rounding noise (the
  // true doublet splitting is exponentially small in N deep in the broken
  // phase), so letting the smaller float win would flip the sector label
  // erratically along an h sweep. Resolve those ties to the preferred sector.
  int win;
  if (std::abs(best_low[0] - best_low[1]) <= guard) {
    win = preferred == Parity::Even ? 0 : 1;
  } else {
    win = best_low[0] < best_low[1] ? 0 : 1;
  }
  const SectorBlock& sector = *blocks[win];
  if (gap_in[win] < guard) {
    throw RefusedError("ground state degenerate within its symmetry sector: gap " +
                       std::to_string(gap_in[win]) + " below guard " + std::to_string(guard));
  }

  EigenPair local = tridiag_ground(sector.diag, sector.offdiag);
  GroundState gs;
  gs.pair.value = local.value;
  gs.pair.vector = embed_sector(sector, local.vector, m.dimension);
  canonicalize_sign(gs.pair.vector);
  gs.sector = sector.label;
  gs.gap_in_sector = gap_in[win];

  // The cross-sector spacing can come out slightly negative when a noise-level
  // tie was resolved to the preferred sector; it is zero to our resolution.
  const double cross = std::max(0.0, best_low[1 - win] - best_low[win]);
  gs.gap_full = std::min(gap_in[win], cross);
  gs.quasi_degenerate = gs.gap_full < guard;

  const double res = residual_norm(m, gs.pair);
  if (res > opt.residual_tol * scale) {
    throw ConvergenceError("eigenpair residual " + std::to_string(res) +
                           " exceeds tolerance " + std::to_string(opt.residual_tol * scale));
  }
  return gs;
}

std::vector<double> lowest_eigenvalues(const BandedSpinMatrix& m, int k, const SolverOptions&) {
  if (k < 1) throw std::invalid_argument("lowest_eigenvalues: k must be >= 1");
  auto [even, odd] = split_sectors(m);
  std::vector<double> all;
  for (const SectorBlock* b : {&even, &odd}) {
    if (b->indices.empty()) continue;
    const int want = std::min<int>(k, static_cast<int>(b->indices.size()));
    std::vector<double> vals = tridiag_lowest_values(b->diag, b->offdiag, want);
    all.insert(all.end(), vals.begin(), vals.end());
  }
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) > k) all.resize(k);
  return all;
}

std::vector<EigenPair> solve_full(const BandedSpinMatrix& m, const SolverOptions& opt) {
  if (m.dimension > opt.dense_cap) {
    throw std::invalid_argument("solve_full: dimension " + std::to_string(m.dimension) +
                                " exceeds dense cap " + std::to_string(opt.dense_cap));
  }
  auto [even, odd] = split_sectors(m);
  // (value, sector, column) sorted lexicographically: ascending values with a
  // deterministic order on the cross-sector ties of the broken phase.
  std::vector<std::tuple<double, int, int>> order;
  std::vector<EigenPair> local[2];
  const SectorBlock* blocks[2] = {&even, &odd};
  for (int b = 0; b < 2; ++b) {
    if (blocks[b]->indices.empty()) continue;
    local[b] = tridiag_full(blocks[b]->diag, blocks[b]->offdiag);
    for (int j = 0; j < static_cast<int>(local[b].size()); ++j) {
      order.emplace_back(local[b][j].value, b, j);
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<EigenPair> out;
  out.reserve(order.size());
  for (const auto& [value, b, j] : order) {
    EigenPair p;
    p.value = value;
    p.vector = embed_sector(*blocks[b], local[b][j].vector, m.dimension);
    canonicalize_sign(p.vector);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace lmg
