#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lmg/verify.hpp"

namespace lmg {

inline constexpr const char* kToolName = "lmgfs";
inline constexpr const char* kToolVersion = "1.0.0";

// Grid of h values: explicit `values` win; otherwise `points` uniform samples
// on [min, max].
struct HGridSpec {
  double min = 0.0;
  double max = 2.0;
  int points = 81;
  std::vector<double> values;
};

// One flat bag of settings for every command; commands read what they need.
// Fully serializable: canonical_config_json() round-trips every field, so a
// run is reproducible from its config alone.
struct RunConfig {
  std::string command;      // optional in files; must match the CLI verb if set
  std::vector<int> sizes = {256, 1024, 4096, 16384, 65536};
  std::vector<double> gammas = {0.5};
  HGridSpec h_grid;
  double delta_h = 0.0;     // overlap-estimator step; 0 = automatic
  double tol_h = 1e-6;      // peak bracket width at termination
  int dense_cap = 4096;     // largest matrix dimension solved densely
  double residual_tol = 1e-12;
  int jobs = 1;
  std::uint64_t seed = 12345;  // synthetic-data generators only
  bool inset = false;          // sweep: add chi minus the extensive leading term
  int large_window_min = 4096; // scale: lower edge of the second fit window
  double nu_min = 0.3;
  double nu_max = 1.0;
  double nu_step = 0.005;
  int collapse_points = 15;
  double collapse_span = 6.0;
  // Replace the eigensolver peak data by an exact power law (plumbing tests).
  double synthetic_mu = 0.0;    // 0 = off
  double synthetic_delta = 0.0;
  std::string out;
  bool svg = false;
  int pauli_max_n = 10;
  bool inject_offdiag_sign_flip = false;
};

// Strict JSON parsing: unknown keys are rejected so config typos fail loudly
// (exit code 2 at the CLI). Throws std::invalid_argument on any problem.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Key-sorted single-line JSON of every effective field. This string, not the
// file the user wrote, is what gets hashed and embedded in outputs.
std::string canonical_config_json(const RunConfig& c);

std::uint64_t fnv1a64(std::string_view s);
std::string config_hash(const RunConfig& c);

// Materialized h grid (ascending, validated).
std::vector<double> make_h_grid(const HGridSpec& spec);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> metadata;  // extra "key: value" header lines
};

// CSV with a '#'-prefixed header: tool version, command, config hash,
// canonical config, timestamp, then any table metadata. Identical configs
// give identical bytes except for the "generated:" line.
std::string render_csv(const ResultTable& table, const RunConfig& config);

void write_text_file(const std::string& path, const std::string& content);

// Shared %.12g formatting so CSV cells and SVG inputs agree.
std::string format_double(double v);

// Command cores. They compute and build tables; the CLI owns argv parsing,
// file writing, and exit codes.

// chi over the h grid for every (N, gamma).
ResultTable cmd_sweep(const RunConfig& c);
// Peak location for every (N, gamma).
ResultTable cmd_peak(const RunConfig& c);
// Per gamma: mu over the full and large size windows, and delta.
ResultTable cmd_scale(const RunConfig& c);
// Per gamma: fitted collapse exponent nu plus the rescaled curves.
ResultTable cmd_collapse(const RunConfig& c);
// Finite-size observables against the closed-form predictions on the h grid.
ResultTable cmd_analytic(const RunConfig& c);
// Self-check suite; pass/fail rows.
ResultTable cmd_verify(const RunConfig& c);

// True when a verify table (from cmd_verify) contains no failing row.
bool verify_table_passed(const ResultTable& table);

// Companion SVG for a rendered table. Returns empty when the command has no
// plot. Reads the table (the serialized artifact), never solver state.
std::string render_svg_for(const std::string& command, const ResultTable& table);

}  // namespace lmg
