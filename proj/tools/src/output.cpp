#include "viscid_cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace viscid::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Frame {
  double lx0, lx1, ly0, ly1;
};

Frame frame_of(const PlotSpec& spec) {
  double lx0 = std::numeric_limits<double>::infinity(), lx1 = -lx0, ly0 = lx0, ly1 = -lx0;
  for (const PlotSeries& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      lx0 = std::min(lx0, std::log10(x));
      lx1 = std::max(lx1, std::log10(x));
      ly0 = std::min(ly0, std::log10(y));
      ly1 = std::max(ly1, std::log10(y));
    }
  }
  if (!std::isfinite(lx0)) return {0.0, 1.0, 0.0, 1.0};
  auto pad = [](double& lo, double& hi) {
    const double span = std::max(hi - lo, 0.2);
    const double mid = 0.5 * (lo + hi);
    lo = mid - 0.55 * span;
    hi = mid + 0.55 * span;
  };
  pad(lx0, lx1);
  pad(ly0, ly1);
  return {lx0, lx1, ly0, ly1};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::runtime_error("csv: row width does not match header");
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw std::runtime_error("csv: ragged row");
    line(r);
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void write_csv(const std::filesystem::path& path, const Table& t) { write_text(path, to_csv(t)); }

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.add_row(std::move(cells));
    }
  }
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

std::pair<double, double> svg_project(const PlotSpec& spec, double x, double y) {
  const Frame fr = frame_of(spec);
  const double w = kWidth - kLeft - kRight;
  const double h = kHeight - kTop - kBottom;
  return {kLeft + (std::log10(x) - fr.lx0) / (fr.lx1 - fr.lx0) * w,
          kTop + (fr.ly1 - std::log10(y)) / (fr.ly1 - fr.ly0) * h};
}

std::string render_svg(const PlotSpec& spec) {
  const Frame fr = frame_of(spec);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kTop, y1 = kHeight - kBottom;
  o << "<clipPath id=\"plot\"><rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(x1 - x0)
    << "\" height=\"" << px(y1 - y0) << "\"/></clipPath>\n";

  // decade ticks
  for (int k = static_cast<int>(std::ceil(fr.lx0)); k <= static_cast<int>(std::floor(fr.lx1)); ++k) {
    const double x = svg_project(spec, std::pow(10.0, k), 1.0).first;
    o << "<line x1=\"" << px(x) << "\" y1=\"" << px(y0) << "\" x2=\"" << px(x) << "\" y2=\"" << px(y1)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << px(x) << "\" y=\"" << px(y1 + 18) << "\" text-anchor=\"middle\">1e" << k << "</text>\n";
  }
  for (int k = static_cast<int>(std::ceil(fr.ly0)); k <= static_cast<int>(std::floor(fr.ly1)); ++k) {
    const double y = svg_project(spec, 1.0, std::pow(10.0, k)).second;
    o << "<line x1=\"" << px(x0) << "\" y1=\"" << px(y) << "\" x2=\"" << px(x1) << "\" y2=\"" << px(y)
      << "\" stroke=\"#ddd\"/>\n";
    o << "<text x=\"" << px(x0 - 6) << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">1e" << k << "</text>\n";
  }
  o << "<rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(x1 - x0) << "\" height=\""
    << px(y1 - y0) << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << px(0.5 * (x0 + x1)) << "\" y=\"" << px(kHeight - 15)
    << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << px(0.5 * (y0 + y1)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << px(0.5 * (y0 + y1)) << ")\">" << escape(spec.y_label) << "</text>\n";
  o << "<text x=\"" << px(0.5 * (x0 + x1)) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(spec.title) << "</text>\n";

  for (std::size_t s = 0; s < spec.series.size(); ++s) {
    const PlotSeries& ser = spec.series[s];
    const char* colour = kColours[s % std::size(kColours)];
    if (ser.has_fit) {
      const double xa = std::pow(10.0, fr.lx0), xb = std::pow(10.0, fr.lx1);
      const auto [ax, ay] = svg_project(spec, xa, std::exp(ser.intercept) * std::pow(xa, ser.slope));
      const auto [bx, by] = svg_project(spec, xb, std::exp(ser.intercept) * std::pow(xb, ser.slope));
      o << "<line clip-path=\"url(#plot)\" x1=\"" << px(ax) << "\" y1=\"" << px(ay) << "\" x2=\"" << px(bx)
        << "\" y2=\"" << px(by) << "\" stroke=\"" << colour << "\" stroke-dasharray=\"5,3\"/>\n";
    }
    for (const auto& [x, y] : ser.points) {
      if (!(x > 0.0) || !(y > 0.0)) continue;
      const auto [cx, cy] = svg_project(spec, x, y);
      o << "<circle cx=\"" << px(cx) << "\" cy=\"" << px(cy) << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
    }
    const double ly = y0 + 10 + 18.0 * static_cast<double>(s);
    o << "<circle cx=\"" << px(x1 + 14) << "\" cy=\"" << px(ly) << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
    std::string label = ser.label;
    if (ser.has_fit) {
      char buf[48];
      std::snprintf(buf, sizeof buf, " (slope %.3f)", ser.slope);
      label += buf;
    }
    o << "<text x=\"" << px(x1 + 24) << "\" y=\"" << px(ly + 4) << "\">" << escape(label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const std::filesystem::path& path, const PlotSpec& spec) {
  write_text(path, render_svg(spec));
}

}  // namespace viscid::cli
