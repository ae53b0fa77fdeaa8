#include "lmg/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lmg/errors.hpp"

namespace lmg {

const char* to_string(FitQuantity q) {
  switch (q) {
    case FitQuantity::Mu: return "mu";
    case FitQuantity::Delta: return "delta";
    default: return "nu";
  }
}

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5) - 1) / 2

// Evaluation cache keyed on the abscissa; golden section revisits points and
// the parabolic step may land on one already seen.
class CachedFunction {
 public:
  explicit CachedFunction(const std::function<double(double)>& f) : f_(f) {}

  double operator()(double x) {
    auto it = cache_.find(x);
    if (it != cache_.end()) return it->second;
    const double y = f_(x);
    cache_.emplace(x, y);
    return y;
  }

  const std::map<double, double>& cache() const { return cache_; }
  int evaluations() const { return static_cast<int>(cache_.size()); }

 private:
  const std::function<double(double)>& f_;
  std::map<double, double> cache_;
};

}  // namespace

PeakResult maximize_on_bracket(const std::function<double(double)>& f, double lo, double hi,
                               const PeakSearchOptions& opt) {
  if (!(lo < hi)) throw std::invalid_argument("maximize_on_bracket: need lo < hi");
  if (!(opt.tol_h > 0.0)) throw std::invalid_argument("maximize_on_bracket: tol_h must be > 0");
  const int scan = std::max(opt.scan_points, 5);
  CachedFunction eval(f);

  // Uniform scan. The peak must be strictly interior; a maximum on the edge
  // means the bracket missed it and refinement would only polish the wrong
  // endpoint.
  std::vector<double> xs(scan), ys(scan);
  int best = 0;
  for (int i = 0; i < scan; ++i) {
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / (scan - 1);
    ys[i] = eval(xs[i]);
    if (ys[i] > ys[best]) best = i;
  }
  if (best == 0 || best == scan - 1) {
    std::ostringstream msg;
    msg << "no interior maximum in bracket [" << lo << ", " << hi << "]; samples:";
    for (int i = 0; i < scan; ++i) msg << " f(" << xs[i] << ")=" << ys[i];
    throw RefusedError(msg.str());
  }

  // Golden-section shrink of [a, b] around the scan winner.
  double a = xs[best - 1], b = xs[best + 1];
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  int it = 0;
  while (b - a > opt.tol_h && it++ < opt.max_iterations) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = eval(x1);
    }
  }

  // One parabolic step through the best cached triple, kept only if it lands
  // between the neighbors and actually improves.
  const auto& cache = eval.cache();
  auto top = std::max_element(cache.begin(), cache.end(),
                              [](const auto& p, const auto& q) { return p.second < q.second; });
  if (top != cache.begin() && std::next(top) != cache.end()) {
    const auto left = std::prev(top);
    const auto right = std::next(top);
    const double xl = left->first, yl = left->second;
    const double xm = top->first, ym = top->second;
    const double xr = right->first, yr = right->second;
    const double denom = (xm - xl) * (ym - yr) - (xm - xr) * (ym - yl);
    if (denom != 0.0) {
      const double vertex =
          xm - 0.5 *
                   ((xm - xl) * (xm - xl) * (ym - yr) - (xm - xr) * (xm - xr) * (ym - yl)) /
                   denom;
      if (vertex > xl && vertex < xr && vertex != xm) eval(vertex);
    }
  }

  auto winner = std::max_element(eval.cache().begin(), eval.cache().end(),
                                 [](const auto& p, const auto& q) { return p.second < q.second; });
  PeakResult r;
  r.h_max = winner->first;
  r.chi_max = winner->second;
  r.refinement_width = b - a;
  r.evaluations = eval.evaluations();
  return r;
}

std::pair<double, double> default_peak_bracket(int n_spins) {
  if (n_spins < 4) throw std::invalid_argument("default_peak_bracket: need n_spins >= 4");
  const double s = std::pow(static_cast<double>(n_spins), -2.0 / 3.0);
  return {std::max(0.15, 1.0 - 40.0 * s), 1.0 - 0.002 * s};
}

PeakResult locate_peak(int n_spins, double gamma, std::pair<double, double> bracket, double tol_h,
                       const SolverOptions& opt) {
  ModelParams base;
  base.n_spins = n_spins;
  base.gamma = gamma;
  validate(base);
  if (!(bracket.first < bracket.second)) bracket = default_peak_bracket(n_spins);
  PeakSearchOptions popt;
  popt.tol_h = tol_h;
  auto chi = [&](double h) { return chi_auto(base.with_h(h), opt).value; };
  PeakResult r = maximize_on_bracket(chi, bracket.first, bracket.second, popt);
  r.n_spins = n_spins;
  r.gamma = gamma;
  return r;
}

ScalingFit fit_power_law(const std::vector<std::pair<int, double>>& points,
                         FitQuantity quantity) {
  const std::size_t n = points.size();
  if (n < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [size, value] : points) {
    if (size < 1 || !(value > 0.0)) {
      throw std::invalid_argument("fit_power_law: sizes must be >= 1 and values > 0");
    }
    sx += std::log(static_cast<double>(size));
    sy += std::log(value);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [size, value] : points) {
    const double dx = std::log(static_cast<double>(size)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(value) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_power_law: all sizes identical");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;

  double ss = 0;
  for (const auto& [size, value] : points) {
    const double r = std::log(value) - (intercept + slope * std::log(static_cast<double>(size)));
    ss += r * r;
  }
  ScalingFit fit;
  fit.exponent = slope;
  fit.residual = std::sqrt(ss / n);
  fit.uncertainty =
      std::max(std::sqrt(ss / (static_cast<double>(n) - 2.0) / sxx),
               std::numeric_limits<double>::denorm_min());
  auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  fit.n_min = lo->first;
  fit.n_max = hi->first;
  fit.quantity = quantity;
  return fit;
}

ScalingFit fit_delta(const std::vector<PeakResult>& peaks, double h_c) {
  if (peaks.size() < 3) throw std::invalid_argument("fit_delta: need at least 3 peaks");
  std::vector<std::pair<int, double>> pts;
  pts.reserve(peaks.size());
  for (const PeakResult& p : peaks) {
    if (!(p.h_max < h_c)) {
      throw std::invalid_argument("fit_delta: peak at h_max=" + std::to_string(p.h_max) +
                                  " does not sit below h_c=" + std::to_string(h_c));
    }
    pts.emplace_back(p.n_spins, h_c - p.h_max);
  }
  ScalingFit fit = fit_power_law(pts, FitQuantity::Delta);
  fit.exponent = -fit.exponent;  // h_c - h_max shrinks with N; report delta > 0
  return fit;
}

namespace {

struct CleanCurve {
  int n_spins = 0;
  std::vector<double> h;
  std::vector<double> chi;
  double h_max = 0.0;
  double chi_max = 0.0;
};

std::vector<CleanCurve> clean_inputs(const std::vector<CollapseInput>& inputs) {
  if (inputs.size() < 3) {
    throw std::invalid_argument("collapse: need at least 3 system sizes");
  }
  std::vector<CleanCurve> out;
  for (const CollapseInput& in : inputs) {
    CleanCurve c;
    c.n_spins = in.curve.n_spins;
    c.h_max = in.peak.h_max;
    c.chi_max = in.peak.chi_max;
    for (const CurvePoint& p : in.curve.points) {
      if (!p.flag.empty() || !(p.chi > 0.0) || !std::isfinite(p.chi)) continue;
      c.h.push_back(p.h);
      c.chi.push_back(p.chi);
    }
    bool below = false, above = false;
    for (double h : c.h) {
      below = below || h < c.h_max;
      above = above || h > c.h_max;
    }
    if (c.h.size() < 4 || !below || !above) {
      throw RefusedError("collapse: curve at N=" + std::to_string(c.n_spins) +
                         " does not straddle its peak; no overlapping x-range after rescaling");
    }
    out.push_back(std::move(c));
  }
  return out;
}

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin() || it == xs.end()) {
    throw std::logic_error("collapse interpolation outside the shared range");
  }
  const std::size_t j = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

double objective_on(const std::vector<CleanCurve>& curves, double nu,
                    const CollapseOptions& opt) {
  const std::size_t k = curves.size();
  std::vector<std::vector<double>> xs(k), ys(k);
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    const double scale = std::pow(static_cast<double>(curves[c].n_spins), nu);
    for (std::size_t i = 0; i < curves[c].h.size(); ++i) {
      xs[c].push_back(scale * (curves[c].h[i] - curves[c].h_max));
      ys[c].push_back((curves[c].chi_max - curves[c].chi[i]) / curves[c].chi[i]);
    }
    lo = std::max(lo, xs[c].front());
    hi = std::min(hi, xs[c].back());
  }
  if (!(lo < hi)) {
    throw RefusedError("collapse: no overlapping x-range after rescaling at nu=" +
                       std::to_string(nu));
  }
  const int g = std::max(opt.grid_points, 10);
  double acc = 0.0;
  for (int i = 0; i < g; ++i) {
    // Interior nodes only: the shared endpoints belong to some curve's last
    // sample and upper_bound would fall off the end there.
    const double x = lo + (hi - lo) * (i + 0.5) / g;
    double spread = 0.0;
    int pairs = 0;
    std::vector<double> vals(k);
    for (std::size_t c = 0; c < k; ++c) vals[c] = interpolate(xs[c], ys[c], x);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        const double d = vals[a] - vals[b];
        spread += d * d;
        ++pairs;
      }
    }
    acc += spread / pairs;
  }
  return acc / g;
}

}  // namespace

double collapse_objective(const std::vector<CollapseInput>& inputs, double nu,
                          const CollapseOptions& opt) {
  return objective_on(clean_inputs(inputs), nu, opt);
}

CollapseResult estimate_nu_collapse(const std::vector<CollapseInput>& inputs,
                                    const CollapseOptions& opt) {
  const std::vector<CleanCurve> curves = clean_inputs(inputs);
  if (!(opt.nu_min < opt.nu_max) || !(opt.nu_step > 0.0)) {
    throw std::invalid_argument("collapse: bad nu scan parameters");
  }

  double best_nu = opt.nu_min;
  double best_obj = std::numeric_limits<double>::infinity();
  for (double nu = opt.nu_min; nu <= opt.nu_max + 0.5 * opt.nu_step; nu += opt.nu_step) {
    const double obj = objective_on(curves, nu, opt);
    if (obj < best_obj) {
      best_obj = obj;
      best_nu = nu;
    }
  }

  // Golden-section refinement (minimization) inside one scan step around the
  // coarse winner.
  double a = std::max(opt.nu_min, best_nu - opt.nu_step);
  double b = std::min(opt.nu_max, best_nu + opt.nu_step);
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = objective_on(curves, x1, opt);
  double f2 = objective_on(curves, x2, opt);
  while (b - a > opt.refine_tol) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = objective_on(curves, x2, opt);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = objective_on(curves, x1, opt);
    }
  }
  const double nu = 0.5 * (a + b);

  CollapseResult result;
  result.nu = nu;
  result.objective = objective_on(curves, nu, opt);
  for (const CleanCurve& c : curves) {
    RescaledCurve rc;
    rc.n_spins = c.n_spins;
    const double scale = std::pow(static_cast<double>(c.n_spins), nu);
    for (std::size_t i = 0; i < c.h.size(); ++i) {
      rc.x.push_back(scale * (c.h[i] - c.h_max));
      rc.y.push_back((c.chi_max - c.chi[i]) / c.chi[i]);
    }
    result.curves.push_back(std::move(rc));
  }
  return result;
}

FidelityCurve curve_around_peak(const PeakResult& peak, int points, double span, int jobs,
                                const SolverOptions& opt) {
  if (points < 5) throw std::invalid_argument("curve_around_peak: need at least 5 points");
  if (!(span > 0.0)) throw std::invalid_argument("curve_around_peak: span must be > 0");
  const double s = std::pow(static_cast<double>(peak.n_spins), -2.0 / 3.0);
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    const double t = -span + 2.0 * span * static_cast<double>(i) / (points - 1);
    grid[i] = peak.h_max + t * s;
  }
  if (grid.front() <= 0.0) {
    throw std::invalid_argument("curve_around_peak: span reaches h <= 0 at this size");
  }
  ModelParams base;
  base.n_spins = peak.n_spins;
  base.gamma = peak.gamma;
  return sweep_chi(base, grid, jobs, opt);
}

AlphaReport check_alpha_relation(const ScalingFit& mu, const ScalingFit& nu, Phase phase) {
  AlphaReport rep;
  rep.phase = phase;
  if (!(nu.exponent > 0.0)) throw std::invalid_argument("check_alpha_relation: nu must be > 0");
  if (phase == Phase::Symmetric) {
    rep.ratio = mu.exponent / nu.exponent;
    rep.target = 2.0;
    rep.tolerance = 0.1;
  } else {
    rep.ratio = (mu.exponent - 1.0) / nu.exponent;
    rep.target = 0.5;
    rep.tolerance = 0.05;
  }
  rep.deviation = std::abs(rep.ratio - rep.target);
  rep.pass = rep.deviation <= rep.tolerance;
  return rep;
}

}  // namespace lmg
