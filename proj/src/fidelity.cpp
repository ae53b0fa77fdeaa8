#include "lmg/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lmg/errors.hpp"
#include "lmg/parallel.hpp"

namespace lmg {

const char* to_string(ChiMethod m) {
  return m == ChiMethod::Perturbative ? "perturbative" : "overlap";
}

double one_minus_fidelity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("one_minus_fidelity: size mismatch");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double s = dot < 0.0 ? -1.0 : 1.0;
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - s * b[i];
    d2 += t * t;
  }
  // 1 - s<a|b> = ||a - s b||^2/2 - (||a||^2 - 1)/2 - (||b||^2 - 1)/2
  const double omf = 0.5 * d2 - 0.5 * (na - 1.0) - 0.5 * (nb - 1.0);
  return std::max(omf, 0.0);
}

double fidelity_between(const ModelParams& p, double h1, double h2, const SolverOptions& opt) {
  validate_canonical(p.with_h(std::min(h1, h2)));
  const GroundState a = solve_ground(build_hamiltonian(p.with_h(h1)), opt);
  const GroundState b = solve_ground(build_hamiltonian(p.with_h(h2)), opt);
  if (a.sector != b.sector) {
    throw RefusedError("ground states at h=" + std::to_string(h1) + " and h=" +
                       std::to_string(h2) +
                       " sit in different parity sectors; their overlap is an exact zero");
  }
  return std::clamp(1.0 - one_minus_fidelity(a.pair.vector, b.pair.vector), 0.0, 1.0);
}

ChiEstimate chi_perturbative(const ModelParams& p, const SolverOptions& opt) {
  validate_canonical(p);
  const BandedSpinMatrix ham = build_hamiltonian(p);
  if (ham.dimension > opt.dense_cap) {
    throw std::invalid_argument("chi_perturbative: dimension " + std::to_string(ham.dimension) +
                                " exceeds dense cap " + std::to_string(opt.dense_cap));
  }
  auto [even, odd] = split_sectors(ham);
  const SectorBlock* blocks[2] = {&even, &odd};
  const Parity preferred = index_parity(ham.dimension - 1);

  double low[2];
  for (int b = 0; b < 2; ++b) {
    low[b] = blocks[b]->indices.empty()
                 ? std::numeric_limits<double>::infinity()
                 : tridiag_lowest_values(blocks[b]->diag, blocks[b]->offdiag, 1)[0];
  }
  int win;
  if (low[0] == low[1]) {
    win = preferred == Parity::Even ? 0 : 1;
  } else {
    win = low[0] < low[1] ? 0 : 1;
  }
  const SectorBlock& sector = *blocks[win];

  const std::vector<EigenPair> spec = tridiag_full(sector.diag, sector.offdiag);
  const double scale = matrix_scale(ham);
  const double guard = opt.degeneracy_guard * opt.residual_tol * scale;
  if (spec.size() > 1 && spec[1].value - spec[0].value < guard) {
    throw RefusedError("perturbative sum ill-defined: in-sector gap " +
                       std::to_string(spec[1].value - spec[0].value) + " below guard " +
                       std::to_string(guard));
  }

  // dH/dh restricted to the sector is diagonal: w = (dH/dh) |0> elementwise.
  const BandedSpinMatrix drive = build_driving(p);
  const std::size_t n = sector.indices.size();
  std::vector<double> w(n);
  for (std::size_t t = 0; t < n; ++t) {
    w[t] = drive.diag[sector.indices[t]] * spec[0].vector[t];
  }

  double chi = 0.0;
  for (std::size_t j = 1; j < spec.size(); ++j) {
    double amp = 0.0;
    for (std::size_t t = 0; t < n; ++t) amp += spec[j].vector[t] * w[t];
    const double q = amp / (spec[j].value - spec[0].value);
    chi += q * q;
  }

  ChiEstimate est;
  est.value = chi;
  est.method = ChiMethod::Perturbative;
  est.quasi_degenerate = low[1 - win] - low[win] < guard;
  return est;
}

double chi_overlap_raw(const ModelParams& p, double delta_h, const SolverOptions& opt) {
  validate_canonical(p);
  if (!(delta_h > 0.0) || !(delta_h < 2.0 * p.h)) {
    throw std::invalid_argument("chi_overlap: need 0 < delta_h < 2h so h -/+ delta_h/2 > 0");
  }
  const GroundState a = solve_ground(build_hamiltonian(p.with_h(p.h - 0.5 * delta_h)), opt);
  const GroundState b = solve_ground(build_hamiltonian(p.with_h(p.h + 0.5 * delta_h)), opt);
  if (a.sector != b.sector) {
    throw RefusedError("overlap estimator straddles a parity-sector change at h=" +
                       std::to_string(p.h));
  }
  return 2.0 * one_minus_fidelity(a.pair.vector, b.pair.vector) / (delta_h * delta_h);
}

ChiEstimate chi_overlap(const ModelParams& p, double delta_h, const SolverOptions& opt) {
  const double coarse = chi_overlap_raw(p, delta_h, opt);
  const double fine = chi_overlap_raw(p, 0.5 * delta_h, opt);
  ChiEstimate est;
  // Step error of the symmetric second difference is O(delta^2), so one
  // Richardson level: (4 fine - coarse) / 3.
  est.value = (4.0 * fine - coarse) / 3.0;
  est.method = ChiMethod::Overlap;
  est.delta_h = delta_h;
  est.convergence_error = std::abs(coarse - fine);
  const GroundState g = solve_ground(build_hamiltonian(p), opt);
  est.quasi_degenerate = g.quasi_degenerate;
  return est;
}

double default_delta_h(double h) { return std::abs(h - 1.0) < 0.05 ? 1e-5 : 1e-4; }

ChiEstimate chi_auto(const ModelParams& p, const SolverOptions& opt) {
  validate_canonical(p);
  if (p.n_spins + 1 <= opt.dense_cap) return chi_perturbative(p, opt);

  double delta = default_delta_h(p.h);
  ChiEstimate est = chi_overlap(p, delta, opt);
  // 1 - F at the finer step is ~ chi (delta/4)^2 / 2. If that sits near
  // roundoff the quotient has few good digits; widen toward 1 - F ~ 1e-7
  // while staying far from h = 1 (where chi climbs fast) and inside h > 0.
  const double signal = est.value * 0.25 * delta * delta * 0.5;
  if (est.value > 0.0 && signal < 1e-9) {
    const double want = delta * std::sqrt(1e-7 / std::max(signal, 1e-300));
    const double cap = std::min(0.4 * std::abs(p.h - 1.0), 1.8 * p.h);
    const double widened = std::min(want, cap);
    if (widened > delta) est = chi_overlap(p, widened, opt);
  }
  return est;
}

FidelityCurve sweep_chi(const ModelParams& base, const std::vector<double>& h_grid, int jobs,
                        const SolverOptions& opt) {
  validate(base);
  if (h_grid.empty()) throw std::invalid_argument("sweep_chi: empty h grid");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (h_grid[i] < 0.0 || !std::isfinite(h_grid[i])) {
      throw std::invalid_argument("sweep_chi: h grid values must be finite and >= 0");
    }
    if (i > 0 && !(h_grid[i] > h_grid[i - 1])) {
      throw std::invalid_argument("sweep_chi: h grid must be strictly increasing");
    }
  }

  FidelityCurve curve;
  curve.n_spins = base.n_spins;
  curve.gamma = base.gamma;
  curve.points.resize(h_grid.size());
  parallel_for(h_grid.size(), jobs, [&](std::size_t i) {
    CurvePoint& pt = curve.points[i];
    pt.h = h_grid[i];
    try {
      pt.detail = chi_auto(base.with_h(h_grid[i]), opt);
      pt.chi = pt.detail.value;
    } catch (const RefusedError& e) {
      pt.chi = std::numeric_limits<double>::quiet_NaN();
      pt.flag = std::string("refused: ") + e.what();
    } catch (const ConvergenceError& e) {
      pt.chi = std::numeric_limits<double>::quiet_NaN();
      pt.flag = std::string("convergence: ") + e.what();
    } catch (const std::invalid_argument& e) {
      pt.chi = std::numeric_limits<double>::quiet_NaN();
      pt.flag = std::string("invalid: ") + e.what();
    }
  });
  return curve;
}

}  // namespace lmg
