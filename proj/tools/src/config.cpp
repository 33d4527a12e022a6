#include "viscid_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "viscid/assembly.hpp"
#include "viscid/errors.hpp"
#include "viscid/parabolic.hpp"

namespace viscid::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_real(const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("expected a real number, got '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& v) {
  int out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw ConfigError("empty entry in list '" + v + "'");
    out.push_back(parse_real(t));
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt(v[i]);
  }
  return out;
}

struct Key {
  const char* name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define REAL_KEY(field)                                                               \
  Key {                                                                               \
    #field, [](ExperimentConfig& c, const std::string& v) { c.field = parse_real(v); }, \
        [](const ExperimentConfig& c) { return fmt(c.field); }                        \
  }
#define INT_KEY(field)                                                               \
  Key {                                                                              \
    #field, [](ExperimentConfig& c, const std::string& v) { c.field = parse_int(v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.field); }            \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"experiment", [](ExperimentConfig& c, const std::string& v) { c.experiment = parse_experiment(v); },
       [](const ExperimentConfig& c) { return std::string(to_string(c.experiment)); }},
      {"system", [](ExperimentConfig& c, const std::string& v) { c.system = v; },
       [](const ExperimentConfig& c) { return c.system; }},
      REAL_KEY(b_cross),
      {"nu_list", [](ExperimentConfig& c, const std::string& v) { c.nu_list = parse_list(v); },
       [](const ExperimentConfig& c) { return fmt_list(c.nu_list); }},
      REAL_KEY(t0),
      REAL_KEY(t_end),
      REAL_KEY(x_min),
      REAL_KEY(x_max),
      REAL_KEY(dx_factor),
      REAL_KEY(dx_power),
      REAL_KEY(cfl_adv),
      REAL_KEY(cfl_diff),
      INT_KEY(snapshots),
      INT_KEY(log_snapshots),
      REAL_KEY(log_snapshot_min),
      {"matched", [](ExperimentConfig& c, const std::string& v) { c.matched = parse_bool(v); },
       [](const ExperimentConfig& c) { return std::string(c.matched ? "true" : "false"); }},
      INT_KEY(K),
      INT_KEY(L),
      REAL_KEY(beta),
      REAL_KEY(cutoff_scale),
      {"alpha_list", [](ExperimentConfig& c, const std::string& v) { c.alpha_list = parse_list(v); },
       [](const ExperimentConfig& c) { return fmt_list(c.alpha_list); }},
      REAL_KEY(holder_window),
      REAL_KEY(inner_T_min),
      REAL_KEY(inner_X_box),
      REAL_KEY(inner_dX),
      REAL_KEY(inner_T_store),
      REAL_KEY(inner_dT),
      REAL_KEY(box_T_lo),
      REAL_KEY(box_T_hi),
      REAL_KEY(box_X_half),
      INT_KEY(box_nx),
      REAL_KEY(point_t),
      REAL_KEY(point_x),
      REAL_KEY(fd_h),
      INT_KEY(zero_cross_runs),
      INT_KEY(refine_factor),
  };
  return table;
}

#undef REAL_KEY
#undef INT_KEY

const Key* find_key(const std::string& name) {
  for (const Key& k : keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

std::vector<double> sweep(std::initializer_list<double> exps) {
  std::vector<double> out;
  for (double e : exps) out.push_back(std::pow(10.0, -e));
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

SystemSpec system_of(const ExperimentConfig& cfg) { return make_system(cfg.system, cfg.b_cross); }

}  // namespace

const char* to_string(Experiment e) noexcept {
  switch (e) {
    case Experiment::rate:
      return "rate";
    case Experiment::holder:
      return "holder";
    case Experiment::universal:
      return "universal";
    case Experiment::residual:
      return "residual";
    case Experiment::cross_term:
      return "cross_term";
    case Experiment::audit:
      return "audit";
  }
  return "?";
}

Experiment parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::rate, Experiment::holder, Experiment::universal,
                       Experiment::residual, Experiment::cross_term, Experiment::audit}) {
    if (name == to_string(e)) return e;
  }
  throw ConfigError("unknown experiment '" + std::string(name) +
                    "' (rate, holder, universal, residual, cross_term, audit)");
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::rate:
      c.nu_list = sweep({2.0, 2.5, 3.0, 3.5, 4.0});
      break;
    case Experiment::holder:
      c.nu_list = sweep({2.0, 2.5, 3.0, 3.5, 4.0});
      c.matched = false;
      break;
    case Experiment::universal:
      c.nu_list = sweep({2.0, 3.0, 4.0});
      c.matched = false;
      break;
    case Experiment::residual:
      c.nu_list = sweep({2.0, 3.0, 4.0});
      c.matched = false;
      break;
    case Experiment::cross_term:
      c.system = "burgers-transport";
      c.nu_list = {3e-2, 1e-2, 3e-3, 1e-3};
      c.x_min = -1.0;
      c.x_max = 1.0;
      c.dx_factor = 0.1;
      c.dx_power = 1.0;
      c.snapshots = 1;
      c.log_snapshots = 0;
      c.matched = false;
      break;
    case Experiment::audit:
      c.matched = false;
      break;
  }
  return c;
}

ExperimentConfig config_from_entries(const std::vector<std::pair<std::string, std::string>>& entries,
                                     const std::vector<std::string>& where) {
  std::set<std::string> seen;
  const std::string* experiment = nullptr;
  std::string experiment_where;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [k, v] = entries[i];
    if (!find_key(k)) throw ConfigError(where[i] + ": unknown key '" + k + "'");
    if (!seen.insert(k).second) throw ConfigError(where[i] + ": duplicate key '" + k + "'");
    if (k == "experiment") {
      experiment = &v;
      experiment_where = where[i];
    }
  }
  if (!experiment) throw ConfigError("missing key: experiment");

  ExperimentConfig cfg;
  try {
    cfg = default_config(parse_experiment(*experiment));
  } catch (const ConfigError& e) {
    throw ConfigError(experiment_where + ": " + e.what());
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [k, v] = entries[i];
    try {
      find_key(k)->set(cfg, v);
    } catch (const ConfigError& e) {
      throw ConfigError(where[i] + ": " + k + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<std::string> where;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    const std::string loc = "line " + std::to_string(n);
    if (eq == std::string::npos) throw ConfigError(loc + ": expected 'key = value'");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = unquote(trim(std::string_view(t).substr(eq + 1)));
    if (key.empty()) throw ConfigError(loc + ": empty key");
    if (value.empty()) throw ConfigError(loc + ": empty value for '" + key + "'");
    entries.emplace_back(std::move(key), std::move(value));
    where.push_back(loc);
  }
  return config_from_entries(entries, where);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("manifest '" + path.string() + "': " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) {
      throw ConfigError("manifest '" + path.string() + "': no \"config\" object");
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<std::string> where;
    for (const auto& [k, v] : j["config"].items()) {
      if (!v.is_string()) throw ConfigError("manifest key '" + k + "': expected a string value");
      entries.emplace_back(k, v.get<std::string>());
      where.push_back("manifest key '" + k + "'");
    }
    return config_from_entries(entries, where);
  }
  return parse_config(text);
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& k : keys()) {
    // an empty list is the unset default (audit has no sweep) and has no text form
    std::string v = k.get(cfg);
    if (!v.empty()) out.emplace_back(k.name, std::move(v));
  }
  return out;
}

std::string to_text(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : config_entries(cfg)) out += k + " = " + v + "\n";
  return out;
}

GridChoice grid_for(const ExperimentConfig& cfg, double nu) {
  return {cfg.x_min, cfg.x_max, cfg.dx_factor * std::pow(nu, cfg.dx_power)};
}

std::vector<double> snapshot_times(const ExperimentConfig& cfg, double nu) {
  std::vector<double> t;
  if (cfg.snapshots == 1) {
    t.push_back(cfg.t_end);
  } else {
    for (int i = 0; i < cfg.snapshots; ++i) {
      t.push_back(cfg.t0 + (cfg.t_end - cfg.t0) * i / (cfg.snapshots - 1));
    }
  }
  if (cfg.log_snapshots > 0) {
    const double kmin = std::log10(cfg.log_snapshot_min);
    for (int i = 1; i <= cfg.log_snapshots; ++i) {
      t.push_back(cfg.t_end - std::pow(10.0, kmin * i / cfg.log_snapshots));
    }
  }
  if (cfg.experiment == Experiment::universal) {
    for (int i = 0; i <= 8; ++i) {
      const double T = cfg.box_T_lo + (cfg.box_T_hi - cfg.box_T_lo) * i / 8.0;
      t.push_back(std::sqrt(nu) * T);
    }
  }
  std::erase_if(t, [&](double s) { return s < cfg.t0 || s > cfg.t_end; });
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

std::vector<double> inner_store_times(const ExperimentConfig& cfg) {
  std::vector<double> t;
  const int n = static_cast<int>(std::lround(cfg.inner_T_store / cfg.inner_dT));
  for (int i = n; i >= 0; --i) t.push_back(-cfg.inner_dT * i);
  return t;
}

bool needs_inner_profile(const ExperimentConfig& cfg) {
  return cfg.experiment == Experiment::universal ||
         (cfg.experiment == Experiment::rate && cfg.matched);
}

void validate(const ExperimentConfig& cfg) {
  const SystemSpec s = system_of(cfg);
  const bool burgers_only = cfg.experiment == Experiment::rate ||
                            cfg.experiment == Experiment::holder ||
                            cfg.experiment == Experiment::universal ||
                            cfg.experiment == Experiment::residual;
  if (burgers_only) {
    require(s.kind() == SystemKind::burgers,
            std::string(to_string(cfg.experiment)) + " requires system = burgers");
  }
  if (cfg.experiment == Experiment::cross_term) {
    require(s.kind() == SystemKind::burgers_transport, "cross_term requires system = burgers-transport");
  }
  if (cfg.experiment == Experiment::audit) return;

  require(!cfg.nu_list.empty(), "nu_list must not be empty");
  for (std::size_t i = 0; i < cfg.nu_list.size(); ++i) {
    require(cfg.nu_list[i] > 0.0, "nu_list entries must be positive");
    if (i) require(cfg.nu_list[i] < cfg.nu_list[i - 1], "nu_list must be strictly decreasing");
  }
  const bool fitted = cfg.experiment == Experiment::rate || cfg.experiment == Experiment::residual ||
                      cfg.experiment == Experiment::cross_term;
  if (fitted) require(cfg.nu_list.size() >= 3, "a rate fit needs at least 3 viscosities");

  require(cfg.t0 < cfg.t_end && cfg.t_end <= 0.0, "need t0 < t_end <= 0");

  if (cfg.experiment == Experiment::residual) {
    require(cfg.fd_h > 0.0, "fd_h must be positive");
    require(cfg.point_t - cfg.fd_h >= cfg.t0 && cfg.point_t + cfg.fd_h <= 0.0,
            "point_t stencil must stay inside [t0, 0]");
    require(cfg.point_x != 0.0 || cfg.point_t != 0.0, "residual point must not be the origin");
    return;
  }

  require(cfg.x_min < cfg.x_max, "need x_min < x_max");
  require(cfg.dx_factor > 0.0, "dx_factor must be positive");
  require(cfg.snapshots >= 1, "snapshots must be >= 1");
  require(cfg.log_snapshots >= 0, "log_snapshots must be >= 0");
  require(cfg.log_snapshot_min > 0.0 && cfg.log_snapshot_min < 1.0,
          "log_snapshot_min must lie in (0, 1)");

  // Resolution rules are the solver's own; build each run's config and let
  // it object before anything is computed.
  InviscidSolution sol;
  sol.system = s;
  sol.t0 = cfg.t0;
  for (double nu : cfg.nu_list) {
    const GridChoice g = grid_for(cfg, nu);
    ViscousRunConfig run;
    run.system = s;
    run.nu = nu;
    run.t0 = cfg.t0;
    run.t_end = cfg.t_end;
    run.grid = Grid1D::with_max_spacing(g.x_min, g.x_max, g.max_dx);
    run.cfl_adv = cfg.cfl_adv;
    run.cfl_diff = cfg.cfl_diff;
    run.measure_undiffused = cfg.experiment == Experiment::cross_term;
    run.store_times = snapshot_times(cfg, nu);
    run.data = [&sol](SpacetimePoint p) { return inviscid_eval(sol, p); };
    try {
      run.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("nu = " + fmt(nu) + ": " + e.what());
    }
  }

  if (cfg.experiment == Experiment::holder) {
    require(!cfg.alpha_list.empty(), "alpha_list must not be empty");
    for (double a : cfg.alpha_list) require(a > 0.0 && a <= 1.0, "alpha_list entries must lie in (0, 1]");
    require(cfg.holder_window > 0.0 && -cfg.holder_window >= cfg.x_min &&
                cfg.holder_window <= cfg.x_max,
            "holder_window must lie inside [x_min, x_max]");
  }

  if (cfg.experiment == Experiment::cross_term) {
    require(cfg.zero_cross_runs >= 0 &&
                cfg.zero_cross_runs <= static_cast<int>(cfg.nu_list.size()),
            "zero_cross_runs must lie in [0, size of nu_list]");
    require(cfg.refine_factor >= 2 && cfg.refine_factor % 2 == 1,
            "refine_factor must be an odd integer >= 3 so coarse centres stay on the fine grid");
  }

  if (needs_inner_profile(cfg)) {
    require(cfg.inner_T_min <= -4.0 && cfg.inner_X_box >= 4.0, "need inner_T_min <= -4, inner_X_box >= 4");
    require(cfg.inner_dX > 0.0 && cfg.inner_dX <= 0.25, "inner_dX must lie in (0, 0.25]");
    require(cfg.inner_dT > 0.0 && cfg.inner_T_store > 0.0 && cfg.inner_T_store <= -cfg.inner_T_min,
            "need inner_dT > 0 and 0 < inner_T_store <= -inner_T_min");
    auto covered = [&](double T_lo, double X) {
      return T_lo >= -cfg.inner_T_store && X <= cfg.inner_X_box;
    };
    if (cfg.experiment == Experiment::rate) {
      for (double nu : cfg.nu_list) {
        const MatchedConfig mc = make_matched_config(s, nu, cfg.K, cfg.L, cfg.beta, cfg.cutoff_scale);
        const InnerBox box = required_inner_box(mc);
        require(covered(box.T_lo, box.X_max),
                "nu = " + fmt(nu) + ": inner profile box too small for the matching region (need T >= " +
                    fmt(box.T_lo) + ", |X| <= " + fmt(box.X_max) + ")");
      }
    } else {
      require(cfg.box_T_lo < cfg.box_T_hi && cfg.box_T_hi <= 0.0 && cfg.box_X_half > 0.0,
              "need box_T_lo < box_T_hi <= 0 and box_X_half > 0");
      require(cfg.box_nx >= 2, "box_nx must be >= 2");
      require(covered(cfg.box_T_lo, cfg.box_X_half), "inner profile does not cover the comparison box");
      for (double nu : cfg.nu_list) {
        require(std::sqrt(nu) * cfg.box_T_lo >= cfg.t0 &&
                    std::pow(nu, 0.75) * cfg.box_X_half <= std::min(-cfg.x_min, cfg.x_max),
                "nu = " + fmt(nu) + ": comparison box leaves the outer grid");
      }
    }
  }
}

}  // namespace viscid::cli
