// viscid <experiment> --config <path> [--out <dir>] [--workers N] [--plot]
//
// exit codes: 0 success, 1 error, 2 audit failure

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "viscid/errors.hpp"
#include "viscid_cli/config.hpp"
#include "viscid_cli/experiments.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitAudit = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing-viscosity experiments near a cubic preshock"};
  app.set_version_flag("--version", viscid::cli::version_string());

  std::string experiment;
  std::string config_path;
  std::string out_dir = ".";
  int workers = 1;
  bool plot = false;
  app.add_option("experiment", experiment, "rate | holder | universal | residual | cross_term | audit")
      ->required();
  app.add_option("--config", config_path, "key = value config file, or a manifest.json to replay")
      ->required();
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", workers, "concurrent runs in a viscosity sweep")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  app.add_flag("--plot", plot, "also write plot.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    const auto requested = viscid::cli::parse_experiment(experiment);
    const viscid::cli::ExperimentConfig cfg = viscid::cli::load_config(config_path);
    if (cfg.experiment != requested) {
      std::cerr << "error: command line asks for '" << experiment << "' but " << config_path
                << " configures '" << viscid::cli::to_string(cfg.experiment) << "'\n";
      return kExitError;
    }
    const viscid::cli::ExperimentOutput out = viscid::cli::run_experiment(cfg, workers);
    viscid::cli::write_artifacts(out_dir, cfg, out, workers, plot);
    for (const auto& f : out.fits) {
      std::printf("%-24s slope %.4f  R^2 %.4f  (%zu points)\n", f.quantity.c_str(), f.fit.slope,
                  f.fit.r_squared, f.fit.points.size());
    }
    if (cfg.experiment == viscid::cli::Experiment::audit) {
      for (const auto& row : out.results.rows) {
        if (row.back() == "false") std::cerr << "FAIL " << row[0] << ": " << row[1] << " = " << row[2] << '\n';
      }
      std::printf("audit: %zu checks, %s\n", out.results.rows.size(), out.failed ? "FAILED" : "all passed");
      if (out.failed) return kExitAudit;
    }
    std::printf("wrote %s\n", out_dir.c_str());
    return 0;
  } catch (const viscid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
