#pragma once

// Experiment drivers. Each sweep returns typed rows (used by the acceptance
// binary) and run_experiment turns them into tables, fits and a plot.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "viscid/analysis.hpp"
#include "viscid/grid.hpp"
#include "viscid/parabolic.hpp"
#include "viscid_cli/audit.hpp"
#include "viscid_cli/config.hpp"
#include "viscid_cli/output.hpp"

namespace viscid::cli {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[nodiscard]] const char* version_string() noexcept;

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Exceptions are
/// collected and the one with the smallest index is rethrown.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct RunRecord {
  std::string label;
  double nu = 0.0;
  Grid1D grid{};
  std::size_t steps = 0;
  double dt_min = 0.0;
  double dt_max = 0.0;
  double seconds = 0.0;
  std::vector<double> requested_times;
  std::vector<double> actual_times;
};

struct InnerProfileRecord {
  double T_min = 0.0;
  double X_box = 0.0;
  double dX = 0.0;
  RunRecord run;
};

[[nodiscard]] InnerProfile build_inner_profile(const ExperimentConfig& cfg,
                                               InnerProfileRecord* record = nullptr);

struct SweepOptions {
  bool matched = false;
  bool holder = false;
  bool universal = false;
};

struct SweepRow {
  double nu = 0.0;
  /// sup over stored times and cells of |sigma^(nu) - u|.
  double sup_diff = 0.0;
  /// Same against the glued approximation (NaN unless requested).
  double matched_sup_diff = kNaN;
  /// Seminorms of sigma^(nu) - u at t_end, one per alpha in alpha_list.
  std::vector<HolderEstimate> holder;
  double universal = kNaN;
  RunRecord run;
};

/// Viscous Burgers runs over nu_list with self-similar data. U is required
/// when matched or universal diagnostics are requested.
[[nodiscard]] std::vector<SweepRow> burgers_sweep(const ExperimentConfig& cfg, const SweepOptions& opt,
                                                  const InnerProfile* U, int workers);

struct ResidualRow {
  double nu = 0.0;
  double residual_psi0 = 0.0;
  double residual_psi01 = 0.0;
  /// nu |d_x^2 u| at the point.
  double closed_form_psi0 = 0.0;
};

[[nodiscard]] std::vector<ResidualRow> residual_sweep(const ExperimentConfig& cfg);

struct CrossTermRow {
  double nu = 0.0;
  double b_cross = 0.0;
  /// sup over cells at t_end of |w^(nu) - w^(0)|.
  double sup_w_diff = 0.0;
  RunRecord run;
};

struct ZeroCrossRow {
  double nu = 0.0;
  double sup_coarse = 0.0;
  double sup_fine = 0.0;
  /// Richardson estimate of the coarse-grid error from the refined run,
  /// max |w_coarse - w_fine| / (1 - r^-2) over coincident centres.
  double refinement_bound = 0.0;
  RunRecord coarse;
  RunRecord fine;
};

struct CrossTermResult {
  std::vector<CrossTermRow> rows;
  std::vector<ZeroCrossRow> zero;
};

[[nodiscard]] CrossTermResult cross_term_sweep(const ExperimentConfig& cfg, int workers);

struct FitRecord {
  std::string quantity;
  RateFit fit;
};

struct ExperimentOutput {
  Table results;
  /// Extra tables written next to results.csv, by file name.
  std::vector<std::pair<std::string, Table>> extra;
  std::vector<FitRecord> fits;
  std::optional<PlotSpec> plot;
  std::vector<RunRecord> runs;
  std::optional<InnerProfileRecord> inner;
  double contour_speed = 0.0;
  double fit_radius = 0.0;
  double seconds = 0.0;
  /// Audit only: some check missed its band.
  bool failed = false;
};

[[nodiscard]] ExperimentOutput run_experiment(const ExperimentConfig& cfg, int workers);

/// fits.csv table: quantity, slope, intercept, r_squared, points.
[[nodiscard]] Table fits_table(const std::vector<FitRecord>& fits);

[[nodiscard]] nlohmann::json manifest_json(const ExperimentConfig& cfg, const ExperimentOutput& out,
                                           int workers);

/// results.csv, fits.csv (when there are fits), extra tables, manifest.json and
/// optionally plot.svg into dir (created if needed).
void write_artifacts(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                     const ExperimentOutput& out, int workers, bool plot);

}  // namespace viscid::cli
