#include "nhssh/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string_view>

namespace nhssh::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                         "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::string_view kCellPalette[] = {"#ffffff", "#87ceeb", "#ee82ee",
                                             "#f4a460", "#90ee90", "#ffd700"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

std::string escape(std::string_view s) {
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

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

void pad(double& lo, double& hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = -1.0;
    hi = 1.0;
  } else if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
}

std::string text(double x, double y, std::string_view s,
                 std::string_view anchor = "middle", double rotate = 0.0) {
  std::string out = "<text x=\"" + num(x) + "\" y=\"" + num(y) +
                    "\" text-anchor=\"" + std::string(anchor) + "\"";
  if (rotate != 0.0) {
    out += " transform=\"rotate(" + num(rotate) + ' ' + num(x) + ' ' + num(y) + ")\"";
  }
  return out + '>' + escape(s) + "</text>\n";
}

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" font-family=\"sans-serif\" " +
         "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Frame& f, const std::string& title,
                 const std::string& x_label, const std::string& y_label) {
  std::string out;
  const double l = f.px(f.x0), r = f.px(f.x1), b = f.py(f.y0), t = f.py(f.y1);
  out += "<rect x=\"" + num(l) + "\" y=\"" + num(t) + "\" width=\"" + num(r - l) +
         "\" height=\"" + num(b - t) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double yv = f.y0 + (f.y1 - f.y0) * i / 4.0;
    out += text(f.px(xv), b + 16, num(xv));
    out += text(l - 6, f.py(yv) + 4, num(yv), "end");
  }
  out += text((l + r) / 2, kHeight - 18, x_label);
  out += text(18, (t + b) / 2, y_label, "middle", -90);
  out += text((l + r) / 2, 24, title);
  return out;
}

std::string legend_entry(int i, std::string_view colour, std::string_view label) {
  const double x = kWidth - kRight + 12, y = kTop + 10 + 18.0 * i;
  return "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) +
         "\" width=\"12\" height=\"12\" fill=\"" + std::string(colour) +
         "\" stroke=\"black\"/>\n" + text(x + 18, y + 1, label, "start");
}

}  // namespace

std::string render(const Figure& figure) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : figure.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  pad(x0, x1);
  pad(y0, y1);
  const Frame f{x0, x1, y0, y1};

  std::string out = header() + axes(f, figure.title, figure.x_label, figure.y_label);
  int idx = 0;
  for (const auto& s : figure.series) {
    const auto colour = kPalette[idx % std::size(kPalette)];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.mark == Mark::Dots) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        out += "<circle cx=\"" + num(f.px(s.x[i])) + "\" cy=\"" + num(f.py(s.y[i])) +
               "\" r=\"2\" fill=\"" + std::string(colour) + "\"/>\n";
      }
    } else {
      std::string path;
      bool pen = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          pen = false;
          continue;
        }
        path += pen ? " L" : " M";
        path += num(f.px(s.x[i])) + ' ' + num(f.py(s.y[i]));
        pen = true;
      }
      if (!path.empty()) {
        out += "<path d=\"" + path.substr(1) + "\" fill=\"none\" stroke=\"" +
               std::string(colour) + "\" stroke-width=\"1.5\"/>\n";
      }
    }
    if (!s.label.empty()) out += legend_entry(idx, colour, s.label);
    ++idx;
  }
  return out + "</svg>\n";
}

std::string heatmap(const PhaseGrid& grid, const std::string& title) {
  const double dx = grid.x_axis.n > 1 ? grid.x_axis.step() : 1.0;
  const double dy = grid.y_axis.n > 1 ? grid.y_axis.step() : 1.0;
  const Frame f{grid.x_axis.min - dx / 2, grid.x_axis.max + dx / 2,
                grid.y_axis.min - dy / 2, grid.y_axis.max + dy / 2};

  // Integer levels (half-integers for nu) keep one colour across figures;
  // anything else is coloured by rank.
  const double scale = grid.observable == Observable::Nu ? 2.0 : 1.0;
  std::map<double, std::size_t> colour_of;
  bool levels = true;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    if (grid.indeterminate[i]) continue;
    const double key = grid.values[i] * scale;
    levels = levels && key >= 0 && key == std::floor(key);
    colour_of.emplace(grid.values[i], 0);
  }
  std::size_t next = 0;
  for (auto& [value, c] : colour_of) {
    c = (levels ? static_cast<std::size_t>(value * scale) : next++) % std::size(kCellPalette);
  }

  std::string out = header();
  const double w = f.px(f.x0 + dx) - f.px(f.x0);
  const double h = f.py(f.y0) - f.py(f.y0 + dy);
  for (std::size_t iy = 0; iy < grid.y_axis.n; ++iy) {
    for (std::size_t ix = 0; ix < grid.x_axis.n; ++ix) {
      const std::string colour =
          grid.is_indeterminate(ix, iy)
              ? "#808080"
              : std::string(kCellPalette[colour_of.at(grid.at(ix, iy))]);
      out += "<rect x=\"" + num(f.px(grid.x_axis.value(ix) - dx / 2)) + "\" y=\"" +
             num(f.py(grid.y_axis.value(iy) + dy / 2)) + "\" width=\"" + num(w) +
             "\" height=\"" + num(h) + "\" fill=\"" + colour +
             "\" shape-rendering=\"crispEdges\"/>\n";
    }
  }
  out += axes(f, title, grid.x_axis.name, grid.y_axis.name);
  int row = 0;
  for (const auto& [value, c] : colour_of) {
    if (row == 12) break;
    out += legend_entry(row++, kCellPalette[c], num(value));
  }
  return out + "</svg>\n";
}

}  // namespace nhssh::plot
