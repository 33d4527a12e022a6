#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace viscid::cli {

/// Numbers in CSV and manifests: scientific, 17 significant digits (round-trips).
[[nodiscard]] std::string format_number(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Header line plus one LF-terminated line per row. Throws std::runtime_error
/// on I/O failure or ragged rows.
void write_csv(const std::filesystem::path& path, const Table& t);
[[nodiscard]] std::string to_csv(const Table& t);
[[nodiscard]] Table parse_csv(const std::string& text);
[[nodiscard]] Table read_csv(const std::filesystem::path& path);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  /// Fitted log-log line y = exp(intercept) x^slope, drawn when has_fit.
  bool has_fit = false;
  double slope = 0.0;
  double intercept = 0.0;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "nu";
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Self-contained log-log scatter. Points with nonpositive coordinates are skipped.
[[nodiscard]] std::string render_svg(const PlotSpec& spec);
void write_svg(const std::filesystem::path& path, const PlotSpec& spec);

/// Pixel position of (x, y) in render_svg's frame, exposed for tests.
[[nodiscard]] std::pair<double, double> svg_project(const PlotSpec& spec, double x, double y);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace viscid::cli
