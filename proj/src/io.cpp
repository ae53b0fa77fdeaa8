#include "lmg/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lmg/analytic.hpp"
#include "lmg/errors.hpp"
#include "lmg/fidelity.hpp"
#include "lmg/parallel.hpp"
#include "lmg/scaling.hpp"
#include "lmg/svg.hpp"

namespace lmg {

namespace {

using nlohmann::json;

void require_config(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("config: " + msg);
}

SolverOptions solver_options(const RunConfig& c) {
  SolverOptions o;
  o.residual_tol = c.residual_tol;
  o.dense_cap = c.dense_cap;
  return o;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int find_column(const ResultTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double cell_number(const std::string& cell) {
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    return used == cell.size() ? v : std::numeric_limits<double>::quiet_NaN();
  } catch (...) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::string gamma_tag(double gamma) { return "g=" + format_double(gamma); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const RunConfig& c) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config_json(c))));
  return buf;
}

std::string canonical_config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["sizes"] = c.sizes;
  j["gammas"] = c.gammas;
  j["h_grid"] = {{"min", c.h_grid.min},
                 {"max", c.h_grid.max},
                 {"points", c.h_grid.points},
                 {"values", c.h_grid.values}};
  j["delta_h"] = c.delta_h;
  j["tol_h"] = c.tol_h;
  j["dense_cap"] = c.dense_cap;
  j["residual_tol"] = c.residual_tol;
  j["jobs"] = c.jobs;
  j["seed"] = c.seed;
  j["inset"] = c.inset;
  j["large_window_min"] = c.large_window_min;
  j["nu_min"] = c.nu_min;
  j["nu_max"] = c.nu_max;
  j["nu_step"] = c.nu_step;
  j["collapse_points"] = c.collapse_points;
  j["collapse_span"] = c.collapse_span;
  j["synthetic_mu"] = c.synthetic_mu;
  j["synthetic_delta"] = c.synthetic_delta;
  j["out"] = c.out;
  j["svg"] = c.svg;
  j["pauli_max_n"] = c.pauli_max_n;
  j["inject_offdiag_sign_flip"] = c.inject_offdiag_sign_flip;
  return j.dump();  // nlohmann::json orders keys, so this is canonical
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  require_config(j.is_object(), "top level must be an object");

  static const std::set<std::string> known = {
      "command",         "sizes",        "gammas",          "h_grid",
      "delta_h",         "tol_h",        "dense_cap",       "residual_tol",
      "jobs",            "seed",         "inset",           "large_window_min",
      "nu_min",          "nu_max",       "nu_step",         "collapse_points",
      "collapse_span",   "synthetic_mu", "synthetic_delta", "out",
      "svg",             "pauli_max_n",  "inject_offdiag_sign_flip"};
  for (const auto& [key, value] : j.items()) {
    require_config(known.count(key) > 0, "unknown key '" + key + "'");
  }

  RunConfig c;
  try {
    if (j.contains("command")) c.command = j["command"].get<std::string>();
    if (j.contains("sizes")) c.sizes = j["sizes"].get<std::vector<int>>();
    if (j.contains("gammas")) c.gammas = j["gammas"].get<std::vector<double>>();
    if (j.contains("h_grid")) {
      const json& g = j["h_grid"];
      require_config(g.is_object(), "h_grid must be an object");
      static const std::set<std::string> grid_keys = {"min", "max", "points", "values"};
      for (const auto& [key, value] : g.items()) {
        require_config(grid_keys.count(key) > 0, "unknown h_grid key '" + key + "'");
      }
      if (g.contains("min")) c.h_grid.min = g["min"].get<double>();
      if (g.contains("max")) c.h_grid.max = g["max"].get<double>();
      if (g.contains("points")) c.h_grid.points = g["points"].get<int>();
      if (g.contains("values")) c.h_grid.values = g["values"].get<std::vector<double>>();
    }
    if (j.contains("delta_h")) c.delta_h = j["delta_h"].get<double>();
    if (j.contains("tol_h")) c.tol_h = j["tol_h"].get<double>();
    if (j.contains("dense_cap")) c.dense_cap = j["dense_cap"].get<int>();
    if (j.contains("residual_tol")) c.residual_tol = j["residual_tol"].get<double>();
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("inset")) c.inset = j["inset"].get<bool>();
    if (j.contains("large_window_min")) c.large_window_min = j["large_window_min"].get<int>();
    if (j.contains("nu_min")) c.nu_min = j["nu_min"].get<double>();
    if (j.contains("nu_max")) c.nu_max = j["nu_max"].get<double>();
    if (j.contains("nu_step")) c.nu_step = j["nu_step"].get<double>();
    if (j.contains("collapse_points")) c.collapse_points = j["collapse_points"].get<int>();
    if (j.contains("collapse_span")) c.collapse_span = j["collapse_span"].get<double>();
    if (j.contains("synthetic_mu")) c.synthetic_mu = j["synthetic_mu"].get<double>();
    if (j.contains("synthetic_delta")) c.synthetic_delta = j["synthetic_delta"].get<double>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("svg")) c.svg = j["svg"].get<bool>();
    if (j.contains("pauli_max_n")) c.pauli_max_n = j["pauli_max_n"].get<int>();
    if (j.contains("inject_offdiag_sign_flip")) {
      c.inject_offdiag_sign_flip = j["inject_offdiag_sign_flip"].get<bool>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: wrong value type: ") + e.what());
  }

  require_config(!c.sizes.empty(), "sizes must not be empty");
  for (int n : c.sizes) require_config(n >= 1, "sizes entries must be >= 1");
  require_config(!c.gammas.empty(), "gammas must not be empty");
  for (double g : c.gammas) require_config(std::abs(g) < 1.0, "gammas entries need |gamma| < 1");
  require_config(c.jobs >= 1, "jobs must be >= 1");
  require_config(c.tol_h > 0.0, "tol_h must be > 0");
  require_config(c.dense_cap >= 8, "dense_cap must be >= 8");
  require_config(c.residual_tol > 0.0, "residual_tol must be > 0");
  require_config(c.delta_h >= 0.0, "delta_h must be >= 0");
  require_config(c.pauli_max_n >= 2 && c.pauli_max_n <= 14, "pauli_max_n must be in [2, 14]");
  require_config(c.collapse_points >= 5, "collapse_points must be >= 5");
  require_config(c.collapse_span > 0.0, "collapse_span must be > 0");
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> make_h_grid(const HGridSpec& spec) {
  std::vector<double> grid;
  if (!spec.values.empty()) {
    grid = spec.values;
  } else {
    require_config(spec.points >= 2, "h_grid.points must be >= 2");
    require_config(spec.min < spec.max, "h_grid needs min < max");
    grid.resize(spec.points);
    for (int i = 0; i < spec.points; ++i) {
      grid[i] = spec.min + (spec.max - spec.min) * static_cast<double>(i) / (spec.points - 1);
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_config(std::isfinite(grid[i]) && grid[i] >= 0.0, "h grid values must be >= 0");
    require_config(i == 0 || grid[i] > grid[i - 1], "h grid must be strictly increasing");
  }
  return grid;
}

std::string render_csv(const ResultTable& table, const RunConfig& config) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << "\n";
  out << "# command: " << config.command << "\n";
  out << "# config-hash: " << config_hash(config) << "\n";
  out << "# config: " << canonical_config_json(config) << "\n";
  out << "# generated: " << utc_timestamp() << "\n";
  for (const std::string& line : table.metadata) out << "# " << line << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ",";
    out << csv_escape(table.columns[i]);
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      out << csv_escape(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ResultTable cmd_sweep(const RunConfig& c) {
  const std::vector<double> grid = make_h_grid(c.h_grid);
  const SolverOptions sopt = solver_options(c);

  ResultTable t;
  t.columns = {"N", "gamma", "h", "chi", "chi_per_spin", "method", "delta_h",
               "convergence_error"};
  if (c.inset) {
    t.columns.push_back("chi_minus_leading");
    t.columns.push_back("chi_hp_subleading");
  }
  t.columns.push_back("flags");

  for (double gamma : c.gammas) {
    for (int n : c.sizes) {
      ModelParams base;
      base.n_spins = n;
      base.gamma = gamma;
      const FidelityCurve curve = sweep_chi(base, grid, c.jobs, sopt);
      for (const CurvePoint& p : curve.points) {
        const bool ok = p.flag.empty();
        std::vector<std::string> row;
        row.push_back(std::to_string(n));
        row.push_back(format_double(gamma));
        row.push_back(format_double(p.h));
        row.push_back(ok ? format_double(p.chi) : "nan");
        row.push_back(ok ? format_double(p.chi / n) : "nan");
        row.push_back(ok ? to_string(p.detail.method) : "");
        row.push_back(ok ? format_double(p.detail.delta_h) : "");
        row.push_back(ok ? format_double(p.detail.convergence_error) : "");
        if (c.inset) {
          if (ok && p.h < 1.0) {
            const BrokenChi bc = chi_broken(gamma, p.h, n);
            row.push_back(format_double(p.chi - bc.leading));
            row.push_back(format_double(bc.subleading));
          } else {
            row.push_back("");
            row.push_back("");
          }
        }
        row.push_back(ok ? (p.detail.quasi_degenerate ? "quasi-degenerate" : "") : p.flag);
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

namespace {

std::vector<PeakResult> peaks_for(const RunConfig& c) {
  const SolverOptions sopt = solver_options(c);
  std::vector<PeakResult> peaks(c.gammas.size() * c.sizes.size());
  if (c.synthetic_mu != 0.0) {
    // Plumbing mode: exact power laws in place of the eigensolver data.
    const double delta = c.synthetic_delta > 0.0 ? c.synthetic_delta : 2.0 / 3.0;
    for (std::size_t g = 0; g < c.gammas.size(); ++g) {
      for (std::size_t s = 0; s < c.sizes.size(); ++s) {
        PeakResult& p = peaks[g * c.sizes.size() + s];
        p.n_spins = c.sizes[s];
        p.gamma = c.gammas[g];
        p.chi_max = std::pow(static_cast<double>(p.n_spins), c.synthetic_mu);
        p.h_max = 1.0 - std::pow(static_cast<double>(p.n_spins), -delta);
      }
    }
    return peaks;
  }
  parallel_for(peaks.size(), c.jobs, [&](std::size_t i) {
    const double gamma = c.gammas[i / c.sizes.size()];
    const int n = c.sizes[i % c.sizes.size()];
    peaks[i] = locate_peak(n, gamma, {0, 0}, c.tol_h, sopt);
  });
  return peaks;
}

}  // namespace

ResultTable cmd_peak(const RunConfig& c) {
  const std::vector<PeakResult> peaks = peaks_for(c);
  ResultTable t;
  t.columns = {"N", "gamma", "h_max", "chi_max", "refinement_width", "evaluations"};
  for (const PeakResult& p : peaks) {
    t.rows.push_back({std::to_string(p.n_spins), format_double(p.gamma),
                      format_double(p.h_max), format_double(p.chi_max),
                      format_double(p.refinement_width), std::to_string(p.evaluations)});
  }
  return t;
}

ResultTable cmd_scale(const RunConfig& c) {
  require_config(c.sizes.size() >= 3, "scale needs at least 3 sizes");
  const std::vector<PeakResult> peaks = peaks_for(c);

  ResultTable t;
  t.columns = {"gamma",   "n_min",        "n_max",    "mu",
               "mu_err",  "mu_residual",  "large_n_min", "mu_large",
               "mu_large_err", "mu_large_residual", "delta", "delta_err",
               "delta_residual"};
  if (c.synthetic_mu != 0.0) {
    t.metadata.push_back("synthetic-oracle: mu=" + format_double(c.synthetic_mu) +
                         " delta=" + format_double(c.synthetic_delta));
  }

  for (std::size_t g = 0; g < c.gammas.size(); ++g) {
    std::vector<PeakResult> mine(peaks.begin() + g * c.sizes.size(),
                                 peaks.begin() + (g + 1) * c.sizes.size());
    std::vector<std::pair<int, double>> chi_points, chi_large;
    for (const PeakResult& p : mine) {
      chi_points.emplace_back(p.n_spins, p.chi_max);
      if (p.n_spins >= c.large_window_min) chi_large.emplace_back(p.n_spins, p.chi_max);
    }
    require_config(chi_large.size() >= 3,
                   "large window [" + std::to_string(c.large_window_min) +
                       ", max] needs at least 3 sizes");
    const ScalingFit mu = fit_power_law(chi_points, FitQuantity::Mu);
    const ScalingFit mu_large = fit_power_law(chi_large, FitQuantity::Mu);
    const ScalingFit delta = fit_delta(mine, 1.0);
    t.rows.push_back({format_double(c.gammas[g]), std::to_string(mu.n_min),
                      std::to_string(mu.n_max), format_double(mu.exponent),
                      format_double(mu.uncertainty), format_double(mu.residual),
                      std::to_string(mu_large.n_min), format_double(mu_large.exponent),
                      format_double(mu_large.uncertainty), format_double(mu_large.residual),
                      format_double(delta.exponent), format_double(delta.uncertainty),
                      format_double(delta.residual)});
  }
  return t;
}

ResultTable cmd_collapse(const RunConfig& c) {
  require_config(c.sizes.size() >= 3, "collapse needs at least 3 sizes");
  const SolverOptions sopt = solver_options(c);
  const std::vector<PeakResult> peaks = peaks_for(c);

  CollapseOptions copt;
  copt.nu_min = c.nu_min;
  copt.nu_max = c.nu_max;
  copt.nu_step = c.nu_step;

  ResultTable t;
  t.columns = {"gamma", "N", "nu", "x", "y"};
  for (std::size_t g = 0; g < c.gammas.size(); ++g) {
    std::vector<CollapseInput> inputs;
    for (std::size_t s = 0; s < c.sizes.size(); ++s) {
      CollapseInput in;
      in.peak = peaks[g * c.sizes.size() + s];
      in.curve = curve_around_peak(in.peak, c.collapse_points, c.collapse_span, c.jobs, sopt);
      inputs.push_back(std::move(in));
    }
    const CollapseResult res = estimate_nu_collapse(inputs, copt);
    const std::string tag = gamma_tag(c.gammas[g]);
    t.metadata.push_back("nu[" + tag + "]: " + format_double(res.nu));
    t.metadata.push_back("objective[" + tag + "]: " + format_double(res.objective));
    for (const RescaledCurve& rc : res.curves) {
      for (std::size_t i = 0; i < rc.x.size(); ++i) {
        t.rows.push_back({format_double(c.gammas[g]), std::to_string(rc.n_spins),
                          format_double(res.nu), format_double(rc.x[i]),
                          format_double(rc.y[i])});
      }
    }
  }
  return t;
}

ResultTable cmd_analytic(const RunConfig& c) {
  const std::vector<double> grid = make_h_grid(c.h_grid);
  const SolverOptions sopt = solver_options(c);

  ResultTable t;
  t.columns = {"N",      "gamma",  "h",          "chi_ed",      "chi_hp_leading",
               "chi_hp_subleading", "gap_ed",    "gap_hp",      "e0_ed",
               "e0_hp",  "chi_rel_err", "gap_rel_err", "e0_rel_err", "flags"};

  struct Slot {
    std::vector<std::string> cells;
  };
  std::vector<Slot> slots(c.gammas.size() * c.sizes.size() * grid.size());

  parallel_for(slots.size(), c.jobs, [&](std::size_t idx) {
    const std::size_t per_gamma = c.sizes.size() * grid.size();
    const double gamma = c.gammas[idx / per_gamma];
    const int n = c.sizes[(idx % per_gamma) / grid.size()];
    const double h = grid[idx % grid.size()];

    ModelParams p;
    p.n_spins = n;
    p.gamma = gamma;
    p.h = h;

    std::string chi_ed, gap_ed, e0_ed, chi_hp_l, chi_hp_s, gap_hp_cell, e0_hp_cell;
    std::string chi_err, gap_err, e0_err, flags;

    double chi_ed_v = std::numeric_limits<double>::quiet_NaN();
    try {
      chi_ed_v = chi_auto(p, sopt).value;
      chi_ed = format_double(chi_ed_v);
    } catch (const std::exception& e) {
      flags = std::string("chi: ") + e.what();
    }

    double gap_ed_v = std::numeric_limits<double>::quiet_NaN();
    try {
      const GroundState gs = solve_ground(build_hamiltonian(p), sopt);
      // The oscillator quantum sits across sectors in the polarized phase and
      // within the ground sector in the broken phase (where the cross-sector
      // splitting is exponentially small, not a mode energy).
      gap_ed_v = h >= 1.0 ? gs.gap_full : gs.gap_in_sector;
      gap_ed = format_double(gap_ed_v);
      e0_ed = format_double(gs.pair.value);
      const double e0_hp_v = hp_ground_energy(gamma, h, n);
      e0_hp_cell = format_double(e0_hp_v);
      e0_err = format_double(std::abs(gs.pair.value - e0_hp_v) / std::abs(e0_hp_v));
      const double gap_hp_v = hp_gap(gamma, h);
      gap_hp_cell = format_double(gap_hp_v);
      if (gap_hp_v > 0.0) {
        gap_err = format_double(std::abs(gap_ed_v - gap_hp_v) / gap_hp_v);
      }
    } catch (const std::exception& e) {
      if (!flags.empty()) flags += "; ";
      flags += std::string("gap: ") + e.what();
    }

    if (h == 1.0) {
      if (!flags.empty()) flags += "; ";
      flags += "hp-singular at h=1";
    } else if (h > 1.0) {
      const double pred = chi_symmetric(gamma, h);
      chi_hp_l = format_double(pred);
      if (!std::isnan(chi_ed_v)) chi_err = format_double(std::abs(chi_ed_v - pred) / pred);
    } else {
      const BrokenChi bc = chi_broken(gamma, h, n);
      chi_hp_l = format_double(bc.leading);
      chi_hp_s = format_double(bc.subleading);
      if (!std::isnan(chi_ed_v)) {
        chi_err = format_double(std::abs(chi_ed_v - bc.leading) / bc.leading);
      }
    }

    slots[idx].cells = {std::to_string(n), format_double(gamma), format_double(h),
                        chi_ed,  chi_hp_l, chi_hp_s, gap_ed, gap_hp_cell,
                        e0_ed,   e0_hp_cell, chi_err, gap_err, e0_err, flags};
  });

  for (Slot& s : slots) t.rows.push_back(std::move(s.cells));
  return t;
}

ResultTable cmd_verify(const RunConfig& c) {
  VerifyOptions v;
  v.pauli_max_n = c.pauli_max_n;
  v.inject_offdiag_sign_flip = c.inject_offdiag_sign_flip;
  const std::vector<VerifyCheck> checks = run_verification(v);

  ResultTable t;
  t.columns = {"check", "detail", "measured", "threshold", "status"};
  int passed = 0;
  for (const VerifyCheck& ck : checks) {
    if (ck.pass) ++passed;
    t.rows.push_back({ck.name, ck.detail, format_double(ck.measured),
                      format_double(ck.threshold), ck.pass ? "pass" : "FAIL"});
  }
  t.metadata.push_back("checks: total=" + std::to_string(checks.size()) +
                       " passed=" + std::to_string(passed));
  return t;
}

bool verify_table_passed(const ResultTable& table) {
  const int status = find_column(table, "status");
  if (status < 0) return false;
  for (const auto& row : table.rows) {
    if (row[status] != "pass") return false;
  }
  return true;
}

namespace {

// Series builder: group rows by label columns, take (x, y) from value columns.
std::vector<SvgSeries> group_series(const ResultTable& t, const std::vector<std::string>& by,
                                    const std::string& xcol, const std::string& ycol) {
  std::vector<int> key_idx;
  for (const std::string& k : by) key_idx.push_back(find_column(t, k));
  const int xi = find_column(t, xcol);
  const int yi = find_column(t, ycol);
  std::vector<SvgSeries> series;
  std::map<std::string, std::size_t> index;
  if (xi < 0 || yi < 0) return series;
  for (const auto& row : t.rows) {
    std::string label;
    for (std::size_t k = 0; k < by.size(); ++k) {
      if (key_idx[k] < 0) continue;
      if (!label.empty()) label += " ";
      label += (by[k] == "gamma" ? "g" : by[k]) + "=" + row[key_idx[k]];
    }
    auto [it, fresh] = index.try_emplace(label, series.size());
    if (fresh) {
      series.emplace_back();
      series.back().label = label;
    }
    const double x = cell_number(row[xi]);
    const double y = cell_number(row[yi]);
    series[it->second].x.push_back(x);
    series[it->second].y.push_back(y);
  }
  return series;
}

}  // namespace

std::string render_svg_for(const std::string& command, const ResultTable& table) {
  SvgOptions opt;
  std::vector<SvgSeries> series;
  if (command == "sweep") {
    series = group_series(table, {"N", "gamma"}, "h", "chi");
    opt.title = "fidelity susceptibility";
    opt.x_label = "h";
    opt.y_label = "chi";
    opt.log_y = true;
  } else if (command == "peak") {
    series = group_series(table, {"gamma"}, "N", "chi_max");
    opt.title = "peak height vs system size";
    opt.x_label = "N";
    opt.y_label = "chi_max";
    opt.log_x = true;
    opt.log_y = true;
  } else if (command == "scale") {
    series = group_series(table, {}, "gamma", "mu");
    for (SvgSeries& s : series) {
      s.label = "mu (full window)";
      s.points_only = true;
    }
    std::vector<SvgSeries> more = group_series(table, {}, "gamma", "mu_large");
    for (SvgSeries& s : more) {
      s.label = "mu (large window)";
      s.points_only = true;
      series.push_back(std::move(s));
    }
    std::vector<SvgSeries> del = group_series(table, {}, "gamma", "delta");
    for (SvgSeries& s : del) {
      s.label = "delta";
      s.points_only = true;
      series.push_back(std::move(s));
    }
    opt.title = "fitted exponents";
    opt.x_label = "gamma";
    opt.y_label = "exponent";
  } else if (command == "collapse") {
    series = group_series(table, {"gamma", "N"}, "x", "y");
    opt.title = "finite-size data collapse";
    opt.x_label = "N^nu (h - h_max)";
    opt.y_label = "(chi_max - chi)/chi";
  } else if (command == "analytic") {
    series = group_series(table, {"N", "gamma"}, "h", "chi_ed");
    std::vector<SvgSeries> hp = group_series(table, {"N", "gamma"}, "h", "chi_hp_leading");
    for (SvgSeries& s : hp) {
      s.label += " (closed form)";
      series.push_back(std::move(s));
    }
    opt.title = "susceptibility vs closed form";
    opt.x_label = "h";
    opt.y_label = "chi";
    opt.log_y = true;
  } else {
    return "";
  }
  return render_svg_plot(series, opt);
}

}  // namespace lmg
