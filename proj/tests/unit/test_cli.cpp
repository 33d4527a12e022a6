#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "viscid/errors.hpp"
#include "viscid_cli/config.hpp"
#include "viscid_cli/experiments.hpp"
#include "viscid_cli/output.hpp"

using namespace viscid;
using namespace viscid::cli;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("viscid_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(VISCID_EXE) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSmallRate =
    "experiment = rate\n"
    "nu_list = 1e-1, 5e-2, 2e-2\n"
    "matched = false\n"
    "log_snapshots = 10\n";

}  // namespace

TEST(Config, MissingExperiment) {
  EXPECT_EQ(error_of(""), "missing key: experiment");
  EXPECT_EQ(error_of("# only a comment\n\nnu_list = 1e-2, 1e-3, 1e-4\n"), "missing key: experiment");
}

TEST(Config, UnknownKeyCarriesLineNumber) {
  const std::string e = error_of("experiment = rate\n\nnux = 3\n");
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
  EXPECT_NE(e.find("unknown key 'nux'"), std::string::npos) << e;
  EXPECT_NE(error_of("experiment = rate\nbeta = 0.47\nbeta = 0.48\n").find("line 3: duplicate key"),
            std::string::npos);
  EXPECT_NE(error_of("experiment = rate\nt0 = minus one\n").find("line 2: t0"), std::string::npos);
  EXPECT_NE(error_of("experiment = rate\nsnapshots\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("experiment = shock\n").find("line 1"), std::string::npos);
}

TEST(Config, CoarseGridRejectedBeforeCompute) {
  const std::string e = error_of("experiment = rate\nnu_list = 1e-2, 1e-3\ndx_factor = 1\n");
  EXPECT_FALSE(e.empty());
  const std::string f = error_of("experiment = rate\nnu_list = 1e-2, 1e-3, 1e-4\ndx_factor = 1\n");
  EXPECT_NE(f.find("nu = "), std::string::npos) << f;
  EXPECT_NE(f.find("0.25 nu^{3/4}"), std::string::npos) << f;
}

TEST(Config, AdversarialValues) {
  for (const char* bad : {"experiment = rate\nnu_list = 1e-3, 1e-2, 1e-4\n",
                          "experiment = rate\nnu_list = 1e-2, -1e-3, 1e-4\n",
                          "experiment = rate\nt_end = 0.5\n",
                          "experiment = rate\nt0 = 0\n",
                          "experiment = rate\ncfl_adv = 1.5\n",
                          "experiment = rate\nbeta = 0.5\n",
                          "experiment = rate\nsystem = burgers-transport\n",
                          "experiment = cross_term\ndx_factor = 0.5\n",
                          "experiment = cross_term\nrefine_factor = 2\n",
                          "experiment = universal\nbox_X_half = 2000\n",
                          "experiment = rate\ninner_T_min = -5\n",
                          "experiment = holder\nholder_window = 3\n"}) {
    EXPECT_FALSE(error_of(bad).empty()) << bad;
  }
}

TEST(Config, DefaultsAndEcho) {
  const ExperimentConfig c = parse_config("experiment = universal  # comment\n");
  EXPECT_EQ(c.experiment, Experiment::universal);
  EXPECT_EQ(c.nu_list.size(), 3u);
  EXPECT_EQ(c.t0, -1.0);
  EXPECT_EQ(c.beta, 0.47);
  EXPECT_EQ(c.cfl_adv, 0.4);

  for (Experiment e : {Experiment::rate, Experiment::holder, Experiment::universal, Experiment::residual,
                       Experiment::cross_term, Experiment::audit}) {
    const std::string text = to_text(default_config(e));
    EXPECT_EQ(to_text(parse_config(text)), text);
  }
  const std::string custom = "experiment = \"rate\"\nnu_list = 1e-2,3e-3 , 1e-3\nbeta=0.48\n";
  const std::string once = to_text(parse_config(custom));
  EXPECT_EQ(to_text(parse_config(once)), once);
  EXPECT_EQ(parse_config(once).beta, 0.48);
}

TEST(Output, CsvRoundTrip) {
  Table t;
  t.header = {"nu", "value"};
  t.add_row({format_number(1e-3), format_number(0.1 + 0.2)});
  const std::string text = to_csv(t);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const Table back = parse_csv(text);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(std::stod(back.rows[0][1]), 0.1 + 0.2);
  EXPECT_EQ(format_number(std::nan("")), "nan");

  const fs::path dir = scratch("csv");
  write_csv(dir / "t.csv", t);
  EXPECT_EQ(read_csv(dir / "t.csv").rows, t.rows);
  Table ragged = t;
  ragged.rows.push_back({"1"});
  EXPECT_THROW(write_csv(dir / "r.csv", ragged), std::runtime_error);
}

TEST(Output, FitLinePassesThroughPowerLaw) {
  PlotSpec spec;
  spec.y_label = "y";
  PlotSeries s;
  s.label = "y";
  for (double nu : {1e-2, 1e-3, 1e-4}) s.points.emplace_back(nu, 2.0 * std::pow(nu, 0.25));
  s.has_fit = true;
  s.slope = 0.25;
  s.intercept = std::log(2.0);
  spec.series.push_back(s);
  const std::string svg = render_svg(spec);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  // the line is straight in the projected frame: all points are collinear
  const auto p0 = svg_project(spec, 1e-2, 2.0 * std::pow(1e-2, 0.25));
  const auto p1 = svg_project(spec, 1e-3, 2.0 * std::pow(1e-3, 0.25));
  const auto p2 = svg_project(spec, 1e-4, 2.0 * std::pow(1e-4, 0.25));
  const double cross = (p1.first - p0.first) * (p2.second - p0.second) - (p1.second - p0.second) * (p2.first - p0.first);
  EXPECT_NEAR(cross, 0.0, 1e-6);
}

TEST(Experiments, ParallelForRethrowsLowestIndex) {
  std::vector<int> hit(50, 0);
  parallel_for(hit.size(), 4, [&](std::size_t i) { hit[i] = 1; });
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), 50);
  try {
    parallel_for(10, 3, [](std::size_t i) {
      if (i == 4 || i == 7) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "4");
  }
}

TEST(EndToEnd, ExitCodes) {
  const fs::path dir = scratch("exit");
  write_text(dir / "audit.cfg", "experiment = audit\n");
  write_text(dir / "bad.cfg", "experiment = rate\nbogus = 1\n");
  EXPECT_EQ(run_cli("audit --config " + (dir / "audit.cfg").string() + " --out " + (dir / "a").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "a" / "results.csv"));
  EXPECT_TRUE(fs::exists(dir / "a" / "manifest.json"));
  EXPECT_EQ(run_cli("rate --config " + (dir / "bad.cfg").string() + " --out " + (dir / "b").string()), 1);
  EXPECT_FALSE(fs::exists(dir / "b" / "results.csv"));
  EXPECT_EQ(run_cli("rate --config " + (dir / "audit.cfg").string() + " --out " + (dir / "c").string()), 1);
  EXPECT_EQ(run_cli("rate --config " + (dir / "missing.cfg").string()), 1);
  EXPECT_EQ(run_cli("rate"), 1);
}

TEST(EndToEnd, DeterministicAcrossRunsWorkersAndReplay) {
  const fs::path dir = scratch("det");
  write_text(dir / "rate.cfg", kSmallRate);
  const std::string cfg = (dir / "rate.cfg").string();
  ASSERT_EQ(run_cli("rate --config " + cfg + " --out " + (dir / "one").string() + " --plot"), 0);
  ASSERT_EQ(run_cli("rate --config " + cfg + " --out " + (dir / "two").string()), 0);
  ASSERT_EQ(run_cli("rate --config " + cfg + " --out " + (dir / "par").string() + " --workers 3"), 0);
  ASSERT_EQ(run_cli("rate --config " + (dir / "one" / "manifest.json").string() + " --out " + (dir / "replay").string()),
            0);
  const std::string ref = slurp(dir / "one" / "results.csv");
  ASSERT_FALSE(ref.empty());
  EXPECT_EQ(ref.rfind("nu,dx,sup_diff\n", 0), 0u);
  for (const char* other : {"two", "par", "replay"}) {
    EXPECT_EQ(slurp(dir / other / "results.csv"), ref) << other;
    EXPECT_EQ(slurp(dir / other / "fits.csv"), slurp(dir / "one" / "fits.csv")) << other;
  }
  EXPECT_TRUE(fs::exists(dir / "one" / "plot.svg"));
  EXPECT_FALSE(fs::exists(dir / "two" / "plot.svg"));
}
