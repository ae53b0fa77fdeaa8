#include "lmg/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lmg {

namespace {

bool all_finite(const ModelParams& p) {
  return std::isfinite(p.gamma) && std::isfinite(p.h) && std::isfinite(p.lambda);
}

}  // namespace

void validate(const ModelParams& p) {
  if (p.n_spins < 1) {
    throw std::invalid_argument("n_spins must be >= 1, got " + std::to_string(p.n_spins));
  }
  if (!all_finite(p)) {
    throw std::invalid_argument("model parameters must be finite");
  }
  if (!(std::abs(p.gamma) < 1.0)) {
    throw std::invalid_argument("gamma must satisfy |gamma| < 1, got " + std::to_string(p.gamma));
  }
  if (!(p.lambda > 0.0)) {
    throw std::invalid_argument("lambda must be > 0, got " + std::to_string(p.lambda));
  }
}

void validate_canonical(const ModelParams& p) {
  validate(p);
  if (p.h < 0.0) {
    throw std::invalid_argument("h must be >= 0 in canonical workflows, got " +
                                std::to_string(p.h));
  }
}

DickeBasis DickeBasis::for_spins(int n_spins) {
  if (n_spins < 1) {
    throw std::invalid_argument("n_spins must be >= 1, got " + std::to_string(n_spins));
  }
  DickeBasis b;
  b.n_spins = n_spins;
  b.total_spin = 0.5 * n_spins;
  b.dimension = n_spins + 1;
  return b;
}

void matvec(const BandedSpinMatrix& m, std::span<const double> x, std::span<double> y) {
  const int n = m.dimension;
  const int k = m.offset;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw std::invalid_argument("matvec: vector size does not match matrix dimension");
  }
  for (int i = 0; i < n; ++i) y[i] = m.diag[i] * x[i];
  for (int i = 0; i + k < n; ++i) {
    y[i] += m.offdiag[i] * x[i + k];
    y[i + k] += m.offdiag[i] * x[i];
  }
}

std::vector<double> to_dense(const BandedSpinMatrix& m) {
  const int n = m.dimension;
  const int k = m.offset;
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + i] = m.diag[i];
  for (int i = 0; i + k < n; ++i) {
    a[static_cast<std::size_t>(i) * n + i + k] = m.offdiag[i];
    a[static_cast<std::size_t>(i + k) * n + i] = m.offdiag[i];
  }
  return a;
}

double matrix_scale(const BandedSpinMatrix& m) {
  double d = 0.0, e = 0.0;
  for (double v : m.diag) d = std::max(d, std::abs(v));
  for (double v : m.offdiag) e = std::max(e, std::abs(v));
  double s = d + 2.0 * e;
  return s > 0.0 ? s : 1.0;
}

BandedSpinMatrix build_hamiltonian(const ModelParams& p) {
  validate(p);
  const DickeBasis basis = DickeBasis::for_spins(p.n_spins);
  const double s = basis.total_spin;
  const double n = static_cast<double>(p.n_spins);

  BandedSpinMatrix m;
  m.dimension = basis.dimension;
  m.offset = 2;
  m.diag.resize(m.dimension);
  m.offdiag.assign(m.dimension > 2 ? m.dimension - 2 : 0, 0.0);

  // In ladder form H = -(lambda/2N)(1+gamma)(S+S- + S-S+ - N) - 2h Sz
  //                    -(lambda/2N)(1-gamma)(S+^2 + S-^2).
  // The isotropic part is diagonal: S+S- + S-S+ - N = 2(S^2 - Sz^2) - N
  // = 2 (S - m)(S + m) for S = N/2, computed in that factored form to keep
  // it exact at the band edges m = +/-S.
  for (int i = 0; i < m.dimension; ++i) {
    const double mm = basis.m_of(i);
    m.diag[i] = -(p.lambda / n) * (1.0 + p.gamma) * (s - mm) * (s + mm) - 2.0 * p.h * mm;
  }

  // <m+2| S+^2 |m> = sqrt[(S-m)(S+m+1)(S-m-1)(S+m+2)].
  for (int i = 0; i + 2 < m.dimension; ++i) {
    const double mm = basis.m_of(i);
    const double prod = (s - mm) * (s + mm + 1.0) * (s - mm - 1.0) * (s + mm + 2.0);
    m.offdiag[i] = -(p.lambda / (2.0 * n)) * (1.0 - p.gamma) * std::sqrt(prod);
  }
  return m;
}

BandedSpinMatrix build_driving(const ModelParams& p) {
  validate(p);
  const DickeBasis basis = DickeBasis::for_spins(p.n_spins);
  BandedSpinMatrix m;
  m.dimension = basis.dimension;
  m.offset = 2;
  m.diag.resize(m.dimension);
  m.offdiag.assign(m.dimension > 2 ? m.dimension - 2 : 0, 0.0);
  for (int i = 0; i < m.dimension; ++i) m.diag[i] = -2.0 * basis.m_of(i);
  return m;
}

std::pair<SectorBlock, SectorBlock> split_sectors(const BandedSpinMatrix& m) {
  if (m.offset != 2) {
    throw std::invalid_argument("split_sectors requires an offset-2 banded matrix");
  }
  std::pair<SectorBlock, SectorBlock> out;
  SectorBlock* blocks[2] = {&out.first, &out.second};
  out.first.label = Parity::Even;
  out.second.label = Parity::Odd;
  for (int r = 0; r < 2 && r < m.dimension; ++r) {
    SectorBlock& b = *blocks[r];
    for (int i = r; i < m.dimension; i += 2) b.indices.push_back(i);
    const int n = static_cast<int>(b.indices.size());
    b.diag.resize(n);
    b.offdiag.resize(n > 1 ? n - 1 : 0);
    for (int t = 0; t < n; ++t) b.diag[t] = m.diag[b.indices[t]];
    for (int t = 0; t + 1 < n; ++t) b.offdiag[t] = m.offdiag[b.indices[t]];
  }
  return out;
}

std::vector<double> embed_sector(const SectorBlock& s, std::span<const double> local,
                                 int dimension) {
  if (local.size() != s.indices.size()) {
    throw std::invalid_argument("embed_sector: local vector size does not match sector");
  }
  std::vector<double> full(dimension, 0.0);
  for (std::size_t t = 0; t < local.size(); ++t) full[s.indices[t]] = local[t];
  return full;
}

}  // namespace lmg
