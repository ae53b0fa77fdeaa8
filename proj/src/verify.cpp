#include "lmg/verify.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "lmg/analytic.hpp"
#include "lmg/eigensolver.hpp"
#include "lmg/errors.hpp"
#include "lmg/fidelity.hpp"
#include "lmg/model.hpp"

namespace lmg {

namespace {

// Product basis indexed by bit patterns, bit i set = spin i down.
// sz_i = (1 - 2 b_i)/2, so the field term is diagonal,
//   -2h sum_i sz_i = -h (N - 2 popcount).
// The collective quadratic part expands to -(lambda/N) sum_{i<j}
// (sigma_x sigma_x + gamma sigma_y sigma_y): the i = j terms cancel the
// normal-ordering constant of the ladder form exactly. Each pair term flips
// bits i and j with weight (1 + gamma) if the bits differ and (1 - gamma) if
// they agree (the sigma_y phases multiply to +1 and -1 respectively).
std::vector<double> pauli_dense(int n_spins, double gamma, double h, double lambda) {
  if (n_spins < 1 || n_spins > 14) {
    throw std::invalid_argument("product-basis oracle: n_spins must be in [1, 14]");
  }
  const std::size_t dim = std::size_t{1} << n_spins;
  std::vector<double> a(dim * dim, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    const int pop = __builtin_popcountll(b);
    a[b * dim + b] = -h * (n_spins - 2 * pop);
    for (int i = 0; i < n_spins; ++i) {
      for (int j = i + 1; j < n_spins; ++j) {
        const bool bi = (b >> i) & 1u;
        const bool bj = (b >> j) & 1u;
        const std::size_t flipped = b ^ (std::size_t{1} << i) ^ (std::size_t{1} << j);
        const double amp = (bi == bj) ? (1.0 - gamma) : (1.0 + gamma);
        a[flipped * dim + b] += -(lambda / n_spins) * amp;
      }
    }
  }
  return a;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

double pauli_ground_energy(int n_spins, double gamma, double h, double lambda) {
  std::vector<double> a = pauli_dense(n_spins, gamma, h, lambda);
  const std::size_t dim = std::size_t{1} << n_spins;
  std::vector<double> w(dim);
  const lapack_int n = static_cast<lapack_int>(dim);
  lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) {
    throw ConvergenceError("dsyev failed on the product-basis oracle, info=" +
                           std::to_string(info));
  }
  return w[0];
}

std::pair<double, std::vector<double>> pauli_ground_dicke(int n_spins, double gamma, double h,
                                                          double lambda) {
  std::vector<double> a = pauli_dense(n_spins, gamma, h, lambda);
  const std::size_t dim = std::size_t{1} << n_spins;
  const lapack_int n = static_cast<lapack_int>(dim);
  std::vector<double> w(dim), z(dim);
  lapack_int found = 0;
  std::vector<lapack_int> isuppz(2, 0);
  lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, 1,
                     2.0 * LAPACKE_dlamch('S'), &found, w.data(), z.data(), n, isuppz.data());
  if (info != 0 || found < 1) {
    throw ConvergenceError("dsyevr failed on the product-basis oracle, info=" +
                           std::to_string(info));
  }

  // |S, m> with m = -S + i is the equal-amplitude sum over the C(N, N-i)
  // patterns with N-i spins down (it descends from |all up> via S-, which has
  // positive coefficients throughout), so the projection is a popcount bucket
  // sum with a sqrt-binomial norm.
  std::vector<double> amp(static_cast<std::size_t>(n_spins) + 1, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    amp[n_spins - __builtin_popcountll(b)] += z[b];
  }
  for (int i = 0; i <= n_spins; ++i) {
    amp[i] /= std::sqrt(binomial(n_spins, n_spins - i));
  }
  canonicalize_sign(amp);
  return {w[0], std::move(amp)};
}

namespace {

std::string param_tag(int n, double gamma, double h) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "N=%d gamma=%g h=%g", n, gamma, h);
  return buf;
}

void add(std::vector<VerifyCheck>& out, const std::string& name, const std::string& detail,
         double measured, double threshold) {
  VerifyCheck c;
  c.name = name;
  c.detail = detail;
  c.measured = measured;
  c.threshold = threshold;
  c.pass = measured <= threshold;
  out.push_back(std::move(c));
}

// Lowest eigenvalues of the dense symmetric copy, an independent route around
// the banded/sector machinery.
std::vector<double> dense_lowest(const BandedSpinMatrix& m, int k) {
  std::vector<double> a = to_dense(m);
  const lapack_int n = m.dimension;
  std::vector<double> w(n);
  lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) throw ConvergenceError("dsyev failed, info=" + std::to_string(info));
  w.resize(std::min<std::size_t>(w.size(), k));
  return w;
}

BandedSpinMatrix maybe_mutated(const ModelParams& p, bool flip) {
  BandedSpinMatrix m = build_hamiltonian(p);
  if (flip) {
    // Whole-band sign error. No spectral quantity can see it (conjugating by
    // a +-1 diagonal absorbs any off-diagonal sign pattern of a tridiagonal
    // chain), so the amplitude comparison below is the check that must fail.
    for (double& v : m.offdiag) v = -v;
  }
  return m;
}

}  // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& opt) {
  std::vector<VerifyCheck> out;
  const double gammas[] = {-0.5, 0.0, 0.5};
  const double hs[] = {0.5, 1.5};

  // Brute-force product-basis ground states. Full parameter set at small N,
  // two spot combinations at the largest sizes to keep the 2^N solve
  // affordable. Energies and amplitudes are separate rows: the amplitude row
  // is the one sensitive to off-diagonal sign conventions.
  for (int n : {2, 3, 4, 6, 8, 10, 12, 14}) {
    if (n > opt.pauli_max_n) break;
    for (double gamma : gammas) {
      for (double h : hs) {
        if (n > 10 && !(gamma != 0.0 && ((gamma < 0) == (h > 1)))) continue;
        ModelParams p{n, gamma, h, 1.0};
        const GroundState gs = solve_ground(maybe_mutated(p, opt.inject_offdiag_sign_flip));
        const auto [brute_e, brute_amp] = pauli_ground_dicke(n, gamma, h);
        add(out, "pauli-ground-energy", param_tag(n, gamma, h), std::abs(gs.pair.value - brute_e),
            1e-10);
        double worst = 0.0;
        for (std::size_t i = 0; i < brute_amp.size(); ++i) {
          worst = std::max(worst, std::abs(gs.pair.vector[i] - brute_amp[i]));
        }
        add(out, "pauli-ground-vector", param_tag(n, gamma, h), worst, 1e-8);
      }
    }
  }

  // Dense route vs banded sector route, lowest 5 levels.
  {
    ModelParams p{64, 0.3, 0.7, 1.0};
    const BandedSpinMatrix m = build_hamiltonian(p);
    const std::vector<double> dense = dense_lowest(m, 5);
    const std::vector<double> banded = lowest_eigenvalues(m, 5);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) worst = std::max(worst, std::abs(dense[i] - banded[i]));
    add(out, "dense-vs-banded", param_tag(64, 0.3, 0.7) + " lowest 5", worst, 1e-10);
  }

  // Sector decomposition reproduces the full matrix action exactly: same
  // products in the same order, so the difference must be bitwise zero.
  {
    ModelParams p{33, -0.4, 0.9, 1.0};
    const BandedSpinMatrix m = build_hamiltonian(p);
    auto [even, odd] = split_sectors(m);
    std::vector<double> x(m.dimension);
    for (int i = 0; i < m.dimension; ++i) x[i] = std::sin(1.0 + 0.37 * i);
    std::vector<double> y_full(m.dimension);
    matvec(m, x, y_full);
    std::vector<double> y_split(m.dimension, 0.0);
    for (const SectorBlock* b : {&even, &odd}) {
      const std::size_t n = b->indices.size();
      for (std::size_t t = 0; t < n; ++t) {
        double acc = b->diag[t] * x[b->indices[t]];
        if (t > 0) acc += b->offdiag[t - 1] * x[b->indices[t - 1]];
        if (t + 1 < n) acc += b->offdiag[t] * x[b->indices[t + 1]];
        y_split[b->indices[t]] = acc;
      }
    }
    double worst = 0.0;
    for (int i = 0; i < m.dimension; ++i) worst = std::max(worst, std::abs(y_full[i] - y_split[i]));
    add(out, "sector-split-exact", param_tag(33, -0.4, 0.9), worst, 0.0);
  }

  // Spectrum symmetry under h -> -h (the driving couples only through Sz,
  // conjugate by the spin flip).
  {
    ModelParams p{12, 0.25, 0.8, 1.0};
    const std::vector<EigenPair> plus = solve_full(build_hamiltonian(p));
    const std::vector<EigenPair> minus = solve_full(build_hamiltonian(p.with_h(-p.h)));
    double worst = 0.0;
    for (std::size_t i = 0; i < plus.size(); ++i) {
      worst = std::max(worst, std::abs(plus[i].value - minus[i].value));
    }
    add(out, "h-reflection-spectrum", param_tag(12, 0.25, 0.8), worst, 1e-11);
  }

  // The two estimators against each other, far from and near the transition.
  for (double gamma : gammas) {
    for (double h : hs) {
      ModelParams p{8, gamma, h, 1.0};
      const double pert = chi_perturbative(p).value;
      const double delta = std::min({std::sqrt(2e-7 / std::max(pert, 1e-12)),
                                     0.4 * std::abs(h - 1.0), 1.8 * h});
      const double overlap = chi_overlap(p, delta).value;
      add(out, "estimator-cross-check", param_tag(8, gamma, h),
          std::abs(pert - overlap) / pert, 1e-6);
    }
  }

  // Finite-size values against the closed-form large-N limits. Bounds sit
  // well above the measured 1/N deviations at these sizes but far below any
  // wrong-formula outcome.
  {
    ModelParams p{1024, 0.5, 2.0, 1.0};
    const double ed = chi_perturbative(p).value;
    const double hp = chi_symmetric(0.5, 2.0);
    add(out, "polarized-chi-limit", param_tag(1024, 0.5, 2.0), std::abs(ed - hp) / hp, 1.5e-2);
  }
  {
    ModelParams p{1024, 0.0, 0.5, 1.0};
    const double ed = chi_perturbative(p).value;
    const double hp = chi_broken(0.0, 0.5, 1024).leading;
    add(out, "broken-chi-leading-limit", param_tag(1024, 0.0, 0.5), std::abs(ed - hp) / hp, 1e-2);
  }
  {
    const GroundState g = solve_ground(build_hamiltonian(ModelParams{4096, 0.5, 2.0, 1.0}));
    const double hp = hp_gap(0.5, 2.0);
    add(out, "polarized-gap-limit", param_tag(4096, 0.5, 2.0), std::abs(g.gap_full - hp) / hp,
        1e-2);
  }
  {
    // At gamma=0, h=0 the model is a pure Sx^2 term: within the ground
    // sector the gap is exactly 2 - 2/N.
    const int n = 4096;
    const GroundState g = solve_ground(build_hamiltonian(ModelParams{n, 0.0, 0.0, 1.0}));
    const double exact = 2.0 - 2.0 / n;
    add(out, "sector-gap-exact", param_tag(n, 0.0, 0.0), std::abs(g.gap_in_sector - exact), 1e-9);
  }

  // The driving operator is traceless: the -2m values are integers summing
  // to zero, exactly representable, so the sum must vanish exactly.
  for (int n : {9, 16}) {
    const BandedSpinMatrix d = build_driving(ModelParams{n, 0.0, 0.0, 1.0});
    double tr = 0.0;
    for (double v : d.diag) tr += v;
    add(out, "driving-traceless", "N=" + std::to_string(n), std::abs(tr), 0.0);
  }

  return out;
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

}  // namespace lmg
