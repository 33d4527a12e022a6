#include "viscid_cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "viscid/assembly.hpp"
#include "viscid/errors.hpp"
#include "viscid/hyperbolic.hpp"

namespace viscid::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string nu_label(double nu) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "nu = %.6g", nu);
  return buf;
}

InviscidSolution solution_of(const ExperimentConfig& cfg) {
  InviscidSolution sol;
  sol.system = make_system(cfg.system, cfg.b_cross);
  sol.t0 = cfg.t0;
  return sol;
}

ViscousRunConfig run_config(const ExperimentConfig& cfg, const InviscidSolution& sol, double nu,
                            const Grid1D& grid) {
  ViscousRunConfig run;
  run.system = sol.system;
  run.nu = nu;
  run.t0 = cfg.t0;
  run.t_end = cfg.t_end;
  run.grid = grid;
  run.cfl_adv = cfg.cfl_adv;
  run.cfl_diff = cfg.cfl_diff;
  run.store_times = snapshot_times(cfg, nu);
  run.measure_undiffused = sol.system.n_components() > 1;
  run.data = [sol](SpacetimePoint p) { return inviscid_eval(sol, p); };
  return run;
}

Grid1D outer_grid(const ExperimentConfig& cfg, double nu) {
  const GridChoice g = grid_for(cfg, nu);
  return Grid1D::with_max_spacing(g.x_min, g.x_max, g.max_dx);
}

RunRecord record_of(std::string label, double nu, const FieldSlab& slab, double secs) {
  RunRecord r;
  r.label = std::move(label);
  r.nu = nu;
  r.grid = slab.grid;
  r.steps = slab.stats.steps;
  r.dt_min = slab.stats.dt_min;
  r.dt_max = slab.stats.dt_max;
  r.seconds = secs;
  r.requested_times = slab.requested_times;
  r.actual_times = slab.times;
  return r;
}

template <class F>
auto with_context(const std::string& ctx, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + ": " + e.what());
  } catch (const InstabilityError& e) {
    throw InstabilityError(ctx + ": " + e.what());
  } catch (const CoverageError& e) {
    throw CoverageError(ctx + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(ctx + ": " + e.what());
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(ctx + ": " + e.what());
  }
}

std::vector<std::pair<double, double>> pairs_of(const std::vector<double>& nu,
                                                const std::vector<double>& y) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < nu.size(); ++i) out.emplace_back(nu[i], y[i]);
  return out;
}

/// Fit when the data allow one (>= 3 points, all positive).
void maybe_fit(std::vector<FitRecord>& fits, std::string quantity,
               const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3) return;
  for (const auto& p : pts) {
    if (!(p.second > 0.0)) return;
  }
  fits.push_back({std::move(quantity), fit_rate(pts)});
}

PlotSeries series_of(std::string label, const std::vector<std::pair<double, double>>& pts,
                     const std::vector<FitRecord>& fits) {
  PlotSeries s;
  s.label = label;
  s.points = pts;
  for (const FitRecord& f : fits) {
    if (f.quantity == label) {
      s.has_fit = true;
      s.slope = f.fit.slope;
      s.intercept = f.fit.intercept;
    }
  }
  return s;
}

nlohmann::json run_json(const RunRecord& r) {
  return {{"label", r.label},
          {"nu", r.nu},
          {"x_min", r.grid.x_min},
          {"dx", r.grid.dx},
          {"n_cells", r.grid.n_cells},
          {"steps", r.steps},
          {"dt_min", r.dt_min},
          {"dt_max", r.dt_max},
          {"seconds", r.seconds},
          {"requested_times", r.requested_times},
          {"actual_times", r.actual_times}};
}

}  // namespace

const char* version_string() noexcept { return "viscid 0.1.0"; }

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    loop();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(loop);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

InnerProfile build_inner_profile(const ExperimentConfig& cfg, InnerProfileRecord* record) {
  const auto start = Clock::now();
  const Grid1D grid = Grid1D::with_max_spacing(-cfg.inner_X_box, cfg.inner_X_box, cfg.inner_dX);
  const std::vector<double> times = inner_store_times(cfg);
  InnerProfile U = with_context("inner profile", [&] {
    return inner_profile_U(cfg.inner_T_min, cfg.inner_X_box, grid, make_system(cfg.system).cubic(), times,
                           cfg.cfl_adv, cfg.cfl_diff);
  });
  if (record) {
    record->T_min = cfg.inner_T_min;
    record->X_box = cfg.inner_X_box;
    record->dX = grid.dx;
    record->run = record_of("inner profile", 1.0, U.slab(), seconds_since(start));
  }
  return U;
}

std::vector<SweepRow> burgers_sweep(const ExperimentConfig& cfg, const SweepOptions& opt,
                                    const InnerProfile* U, int workers) {
  if ((opt.matched || opt.universal) && !U) {
    throw ConfigError("burgers_sweep: matched and universal diagnostics need the inner profile");
  }
  const InviscidSolution sol = solution_of(cfg);
  const CubicParams cubic = sol.system.cubic();
  std::vector<SweepRow> rows(cfg.nu_list.size());

  parallel_for(rows.size(), workers, [&](std::size_t k) {
    const double nu = cfg.nu_list[k];
    with_context(nu_label(nu), [&] {
      const auto start = Clock::now();
      const FieldSlab slab = run_viscous(run_config(cfg, sol, nu, outer_grid(cfg, nu)));
      SweepRow& row = rows[k];
      row.nu = nu;
      row.run = record_of(nu_label(nu), nu, slab, seconds_since(start));
      row.sup_diff = sup_diff(slab, [&](SpacetimePoint p) { return cubic_root(p, cubic); }, 0);

      if (opt.matched) {
        const MatchedConfig mc =
            make_matched_config(sol.system, nu, cfg.K, cfg.L, cfg.beta, cfg.cutoff_scale);
        row.matched_sup_diff = sup_diff(
            slab, [&](SpacetimePoint p) { return matched_solution(mc, p, *U, sol)[0]; }, 0);
      }
      if (opt.holder) {
        const std::size_t kt = slab.nearest_time(cfg.t_end);
        const std::vector<double> x = slab.grid.centers();
        std::vector<double> f(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          f[i] = slab.value(kt, 0, i) - cubic_root({slab.times[kt], x[i]}, cubic);
        }
        for (double a : cfg.alpha_list) {
          row.holder.push_back(holder_seminorm(x, f, a, -cfg.holder_window, cfg.holder_window));
        }
      }
      if (opt.universal) {
        const InnerBoxBounds box{cfg.box_T_lo, cfg.box_T_hi, -cfg.box_X_half, cfg.box_X_half};
        row.universal = universal_compare(slab, *U, nu, box, static_cast<std::size_t>(cfg.box_nx));
      }
      row.run.seconds = seconds_since(start);
      return 0;
    });
  });
  return rows;
}

std::vector<ResidualRow> residual_sweep(const ExperimentConfig& cfg) {
  const InviscidSolution sol = solution_of(cfg);
  const SpacetimePoint p{cfg.point_t, cfg.point_x};
  std::vector<ResidualRow> rows;
  for (double nu : cfg.nu_list) {
    const VectorField psi0 = [&](SpacetimePoint q) { return inviscid_eval(sol, q); };
    const VectorField psi01 = [&](SpacetimePoint q) {
      StateVector v = inviscid_eval(sol, q);
      v[0] += nu * outer_corrector_psi1(sol, q);
      return v;
    };
    ResidualRow r;
    r.nu = nu;
    r.residual_psi0 = std::abs(pde_residual(psi0, sol.system, nu, p, cfg.fd_h)[0]);
    r.residual_psi01 = std::abs(pde_residual(psi01, sol.system, nu, p, cfg.fd_h)[0]);
    r.closed_form_psi0 = nu * sol.system.cubic().b_diff * std::abs(profile_d2u_dx2(p, sol.system.cubic()));
    rows.push_back(r);
  }
  return rows;
}

CrossTermResult cross_term_sweep(const ExperimentConfig& cfg, int workers) {
  const InviscidSolution sol = solution_of(cfg);
  InviscidSolution sol0 = sol;
  sol0.system = make_burgers_transport(0.0);

  auto w_exact = [](const InviscidSolution& s) {
    return [&s](SpacetimePoint q) { return inviscid_eval(s, q)[1]; };
  };

  CrossTermResult out;
  out.rows.resize(cfg.nu_list.size());
  out.zero.resize(static_cast<std::size_t>(cfg.zero_cross_runs));
  const std::size_t n_main = out.rows.size();
  const std::size_t r = static_cast<std::size_t>(cfg.refine_factor);

  // main runs first, then coarse/fine pairs for b_cross = 0
  struct Task {
    std::size_t index;
    int kind;  // 0 main, 1 zero coarse, 2 zero fine
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < n_main; ++k) tasks.push_back({k, 0});
  for (std::size_t k = 0; k < out.zero.size(); ++k) {
    tasks.push_back({k, 1});
    tasks.push_back({k, 2});
  }
  std::vector<FieldSlab> coarse(out.zero.size()), fine(out.zero.size());
  std::mutex m;

  parallel_for(tasks.size(), workers, [&](std::size_t j) {
    const Task t = tasks[j];
    const double nu = cfg.nu_list[t.index];
    const auto start = Clock::now();
    if (t.kind == 0) {
      with_context(nu_label(nu), [&] {
        const FieldSlab slab = run_viscous(run_config(cfg, sol, nu, outer_grid(cfg, nu)));
        CrossTermRow& row = out.rows[t.index];
        row.nu = nu;
        row.b_cross = cfg.b_cross;
        const std::size_t kt = slab.nearest_time(cfg.t_end);
        double sup = 0.0;
        const auto ref = w_exact(sol);
        for (std::size_t i = 0; i < slab.grid.n_cells; ++i) {
          sup = std::max(sup, std::abs(slab.value(kt, 1, i) - ref({slab.times[kt], slab.grid.center(i)})));
        }
        row.sup_w_diff = sup;
        row.run = record_of(nu_label(nu) + ", b_cross = " + format_number(cfg.b_cross), nu, slab,
                            seconds_since(start));
        return 0;
      });
      return;
    }
    const Grid1D g = outer_grid(cfg, nu);
    const Grid1D grid = t.kind == 1 ? g : Grid1D::covering(g.x_min, g.x_max(), g.n_cells * r);
    with_context(nu_label(nu) + ", b_cross = 0", [&] {
      FieldSlab slab = run_viscous(run_config(cfg, sol0, nu, grid));
      RunRecord rec = record_of(nu_label(nu) + (t.kind == 1 ? ", b_cross = 0" : ", b_cross = 0, refined"),
                                nu, slab, seconds_since(start));
      std::lock_guard lock(m);
      if (t.kind == 1) {
        out.zero[t.index].coarse = std::move(rec);
        coarse[t.index] = std::move(slab);
      } else {
        out.zero[t.index].fine = std::move(rec);
        fine[t.index] = std::move(slab);
      }
      return 0;
    });
  });

  const auto ref0 = w_exact(sol0);
  for (std::size_t k = 0; k < out.zero.size(); ++k) {
    ZeroCrossRow& z = out.zero[k];
    z.nu = cfg.nu_list[k];
    const FieldSlab& c = coarse[k];
    const FieldSlab& f = fine[k];
    const std::size_t kc = c.nearest_time(cfg.t_end);
    const std::size_t kf = f.nearest_time(cfg.t_end);
    double diff = 0.0;
    for (std::size_t i = 0; i < c.grid.n_cells; ++i) {
      const std::size_t fi = r * i + (r - 1) / 2;
      const double wc = c.value(kc, 1, i);
      diff = std::max(diff, std::abs(wc - f.value(kf, 1, fi)));
      z.sup_coarse = std::max(z.sup_coarse, std::abs(wc - ref0({c.times[kc], c.grid.center(i)})));
    }
    for (std::size_t i = 0; i < f.grid.n_cells; ++i) {
      z.sup_fine = std::max(z.sup_fine, std::abs(f.value(kf, 1, i) - ref0({f.times[kf], f.grid.center(i)})));
    }
    const double rr = static_cast<double>(r);
    z.refinement_bound = diff / (1.0 - 1.0 / (rr * rr));
  }
  return out;
}

Table fits_table(const std::vector<FitRecord>& fits) {
  Table t;
  t.header = {"quantity", "slope", "intercept", "r_squared", "points"};
  for (const FitRecord& f : fits) {
    t.add_row({f.quantity, format_number(f.fit.slope), format_number(f.fit.intercept),
               format_number(f.fit.r_squared), std::to_string(f.fit.points.size())});
  }
  return t;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, int workers) {
  validate(cfg);
  const auto start = Clock::now();
  ExperimentOutput out;
  const SystemSpec sys = make_system(cfg.system, cfg.b_cross);
  out.contour_speed = contour_speed(sys);
  out.fit_radius = fit_radius(sys);

  std::optional<InnerProfile> U;
  if (needs_inner_profile(cfg)) {
    InnerProfileRecord rec;
    U = build_inner_profile(cfg, &rec);
    out.inner = rec;
  }

  const std::vector<double>& nus = cfg.nu_list;
  switch (cfg.experiment) {
    case Experiment::rate:
    case Experiment::holder:
    case Experiment::universal: {
      SweepOptions opt;
      opt.matched = cfg.experiment == Experiment::rate && cfg.matched;
      opt.holder = cfg.experiment == Experiment::holder;
      opt.universal = cfg.experiment == Experiment::universal;
      const std::vector<SweepRow> rows = burgers_sweep(cfg, opt, U ? &*U : nullptr, workers);
      for (const SweepRow& r : rows) out.runs.push_back(r.run);
      std::vector<double> y;

      if (cfg.experiment == Experiment::rate) {
        out.results.header = {"nu", "dx", "sup_diff"};
        if (opt.matched) out.results.header.push_back("matched_sup_diff");
        std::vector<double> ym;
        for (const SweepRow& r : rows) {
          std::vector<std::string> line{format_number(r.nu), format_number(r.run.grid.dx),
                                        format_number(r.sup_diff)};
          if (opt.matched) line.push_back(format_number(r.matched_sup_diff));
          out.results.add_row(std::move(line));
          y.push_back(r.sup_diff);
          ym.push_back(r.matched_sup_diff);
        }
        maybe_fit(out.fits, "sup_diff", pairs_of(nus, y));
        if (opt.matched) maybe_fit(out.fits, "matched_sup_diff", pairs_of(nus, ym));
        PlotSpec p{"sup-norm distance to the inviscid solution", "nu", "sup |sigma - reference|", {}};
        p.series.push_back(series_of("sup_diff", pairs_of(nus, y), out.fits));
        if (opt.matched) p.series.push_back(series_of("matched_sup_diff", pairs_of(nus, ym), out.fits));
        out.plot = p;
      } else if (cfg.experiment == Experiment::holder) {
        out.results.header = {"nu", "alpha", "seminorm", "pairs"};
        PlotSpec p{"Hoelder seminorm of sigma - u at t_end", "nu", "seminorm", {}};
        for (std::size_t a = 0; a < cfg.alpha_list.size(); ++a) {
          std::vector<double> s;
          for (const SweepRow& r : rows) s.push_back(r.holder[a].seminorm);
          char name[48];
          std::snprintf(name, sizeof name, "seminorm_alpha_%.6g", cfg.alpha_list[a]);
          const std::string q = name;
          maybe_fit(out.fits, q, pairs_of(nus, s));
          p.series.push_back(series_of(q, pairs_of(nus, s), out.fits));
        }
        for (const SweepRow& r : rows) {
          for (const HolderEstimate& h : r.holder) {
            out.results.add_row({format_number(r.nu), format_number(h.alpha), format_number(h.seminorm),
                                 std::to_string(h.pairs)});
          }
        }
        out.plot = p;
      } else {
        out.results.header = {"nu", "sup_universal_err"};
        for (const SweepRow& r : rows) {
          out.results.add_row({format_number(r.nu), format_number(r.universal)});
          y.push_back(r.universal);
        }
        maybe_fit(out.fits, "sup_universal_err", pairs_of(nus, y));
        PlotSpec p{"distance to the inner profile in blow-up coordinates", "nu", "sup |Sigma - U|", {}};
        p.series.push_back(series_of("sup_universal_err", pairs_of(nus, y), out.fits));
        out.plot = p;
      }
      break;
    }
    case Experiment::residual: {
      const std::vector<ResidualRow> rows = residual_sweep(cfg);
      out.results.header = {"nu", "residual_psi0", "residual_psi0_psi1", "closed_form_psi0"};
      std::vector<double> r0, r1;
      for (const ResidualRow& r : rows) {
        out.results.add_row({format_number(r.nu), format_number(r.residual_psi0),
                             format_number(r.residual_psi01), format_number(r.closed_form_psi0)});
        r0.push_back(r.residual_psi0);
        r1.push_back(r.residual_psi01);
      }
      maybe_fit(out.fits, "residual_psi0", pairs_of(nus, r0));
      maybe_fit(out.fits, "residual_psi0_psi1", pairs_of(nus, r1));
      PlotSpec p{"pointwise PDE residual of the outer expansion", "nu", "|residual|", {}};
      p.series.push_back(series_of("residual_psi0", pairs_of(nus, r0), out.fits));
      p.series.push_back(series_of("residual_psi0_psi1", pairs_of(nus, r1), out.fits));
      out.plot = p;
      break;
    }
    case Experiment::cross_term: {
      const CrossTermResult res = cross_term_sweep(cfg, workers);
      out.results.header = {"nu", "b_cross", "dx", "sup_w_diff"};
      std::vector<double> y;
      for (const CrossTermRow& r : res.rows) {
        out.results.add_row({format_number(r.nu), format_number(r.b_cross), format_number(r.run.grid.dx),
                             format_number(r.sup_w_diff)});
        y.push_back(r.sup_w_diff);
        out.runs.push_back(r.run);
      }
      if (!res.zero.empty()) {
        Table z;
        z.header = {"nu", "dx_coarse", "dx_fine", "sup_w_diff_coarse", "sup_w_diff_fine", "refinement_bound"};
        for (const ZeroCrossRow& r : res.zero) {
          z.add_row({format_number(r.nu), format_number(r.coarse.grid.dx), format_number(r.fine.grid.dx),
                     format_number(r.sup_coarse), format_number(r.sup_fine),
                     format_number(r.refinement_bound)});
          out.runs.push_back(r.coarse);
          out.runs.push_back(r.fine);
        }
        out.extra.emplace_back("zero_cross.csv", std::move(z));
      }
      maybe_fit(out.fits, "sup_w_diff", pairs_of(nus, y));
      PlotSpec p{"cross-diffusion effect on the transported component", "nu", "sup |w - w0| at t_end", {}};
      p.series.push_back(series_of("sup_w_diff", pairs_of(nus, y), out.fits));
      out.plot = p;
      break;
    }
    case Experiment::audit: {
      out.results.header = {"module", "check", "value", "relation", "bound", "pass"};
      for (const AuditCheck& c : run_audit()) {
        out.results.add_row({c.module, c.name, format_number(c.value), c.upper ? "<=" : ">=",
                             format_number(c.bound), c.pass ? "true" : "false"});
        if (!c.pass) out.failed = true;
      }
      break;
    }
  }
  out.seconds = seconds_since(start);
  return out;
}

nlohmann::json manifest_json(const ExperimentConfig& cfg, const ExperimentOutput& out, int workers) {
  nlohmann::json j;
  j["version"] = version_string();
  j["experiment"] = to_string(cfg.experiment);
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [k, v] : config_entries(cfg)) c[k] = v;
  j["config"] = c;
  j["workers"] = workers;
  j["derived"] = {{"contour_speed_S", out.contour_speed}, {"fit_radius_R", out.fit_radius}};
  if (cfg.experiment == Experiment::rate && cfg.matched) {
    j["derived"]["cutoff_R"] = cfg.cutoff_scale * out.fit_radius;
  }
  nlohmann::json runs = nlohmann::json::array();
  for (const RunRecord& r : out.runs) runs.push_back(run_json(r));
  j["runs"] = runs;
  if (out.inner) {
    j["inner_profile"] = {{"T_min", out.inner->T_min},
                          {"X_box", out.inner->X_box},
                          {"dX", out.inner->dX},
                          {"steps", out.inner->run.steps},
                          {"dt_min", out.inner->run.dt_min},
                          {"dt_max", out.inner->run.dt_max},
                          {"seconds", out.inner->run.seconds}};
  }
  nlohmann::json fits = nlohmann::json::array();
  for (const FitRecord& f : out.fits) {
    fits.push_back({{"quantity", f.quantity},
                    {"slope", f.fit.slope},
                    {"intercept", f.fit.intercept},
                    {"r_squared", f.fit.r_squared}});
  }
  j["fits"] = fits;
  j["seconds"] = out.seconds;
  if (cfg.experiment == Experiment::audit) j["audit_passed"] = !out.failed;
  return j;
}

void write_artifacts(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                     const ExperimentOutput& out, int workers, bool plot) {
  std::filesystem::create_directories(dir);
  write_csv(dir / "results.csv", out.results);
  if (!out.fits.empty()) write_csv(dir / "fits.csv", fits_table(out.fits));
  for (const auto& [name, table] : out.extra) write_csv(dir / name, table);
  write_text(dir / "manifest.json", manifest_json(cfg, out, workers).dump(2) + "\n");
  if (plot && out.plot) write_svg(dir / "plot.svg", *out.plot);
}

}  // namespace viscid::cli
