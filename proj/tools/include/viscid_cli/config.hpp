#pragma once

// Experiment configuration: plain "key = value" text, one setting per line,
// '#' starts a comment. Unknown and duplicate keys are rejected with the line
// number. Defaults depend on the experiment, so `experiment` is required.

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace viscid::cli {

enum class Experiment { rate, holder, universal, residual, cross_term, audit };

[[nodiscard]] const char* to_string(Experiment e) noexcept;
/// Throws ConfigError for unknown names.
[[nodiscard]] Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::rate;
  std::string system = "burgers";
  double b_cross = 1.0;
  std::vector<double> nu_list;

  double t0 = -1.0;
  double t_end = 0.0;
  double x_min = -2.0;
  double x_max = 2.0;
  /// dx = dx_factor * nu^dx_power (upper bound; the grid divides the domain evenly).
  double dx_factor = 0.2;
  double dx_power = 0.75;
  double cfl_adv = 0.4;
  double cfl_diff = 0.4;
  /// Uniform snapshots on [t0, t_end] plus log-spaced ones at
  /// t = -10^k, k from 0 down to log10(log_snapshot_min).
  int snapshots = 41;
  int log_snapshots = 60;
  double log_snapshot_min = 1e-3;

  // matched solution
  bool matched = true;
  int K = 1;
  int L = 0;
  double beta = 0.47;
  double cutoff_scale = 8.0;

  // Hoelder seminorms at t_end
  std::vector<double> alpha_list{0.25, 1.0 / 3.0};
  double holder_window = 0.5;

  // inner profile U
  double inner_T_min = -1000.0;
  double inner_X_box = 1000.0;
  double inner_dX = 0.2;
  /// U is stored on [-inner_T_store, 0] with step inner_dT.
  double inner_T_store = 12.0;
  double inner_dT = 0.02;

  // universal comparison box
  double box_T_lo = -1.0;
  double box_T_hi = 0.0;
  double box_X_half = 3.0;
  int box_nx = 241;

  // pointwise residual
  double point_t = -0.5;
  double point_x = 0.3;
  double fd_h = 3e-5;

  // cross-diffusion: grid refinement of the b_cross = 0 run at the first
  // zero_cross_runs viscosities (0 disables)
  int zero_cross_runs = 2;
  int refine_factor = 3;
};

/// Defaults for the given experiment (nu sweep, domain, grid rule, system).
[[nodiscard]] ExperimentConfig default_config(Experiment e);

/// Parses key = value text. Throws ConfigError ("line N: ...") on syntax
/// errors, unknown or duplicate keys and bad values, and ConfigError naming
/// the violated invariant when validation fails.
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);

/// Reads a key = value file, or a manifest.json written by a previous run
/// (its "config" object is replayed).
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

/// Builds a config from (key, value) pairs; `where` labels each entry in errors.
[[nodiscard]] ExperimentConfig config_from_entries(
    const std::vector<std::pair<std::string, std::string>>& entries,
    const std::vector<std::string>& where);

/// Normalized echo: every key in fixed order, numbers with 17 significant digits.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& cfg);
[[nodiscard]] std::string to_text(const ExperimentConfig& cfg);

/// Checks every invariant, including the solver resolution rules for each nu,
/// before anything is computed. Throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Grid used for the run at viscosity nu.
struct GridChoice {
  double x_min = 0.0;
  double x_max = 0.0;
  double max_dx = 0.0;
};
[[nodiscard]] GridChoice grid_for(const ExperimentConfig& cfg, double nu);

/// Snapshot times for the outer runs (sorted, unique, inside [t0, t_end]).
[[nodiscard]] std::vector<double> snapshot_times(const ExperimentConfig& cfg, double nu);

/// Times at which U is stored.
[[nodiscard]] std::vector<double> inner_store_times(const ExperimentConfig& cfg);

/// Experiments that need the inner profile U.
[[nodiscard]] bool needs_inner_profile(const ExperimentConfig& cfg);

}  // namespace viscid::cli
