#pragma once

#include <string>
#include <vector>

#include "nhssh/sweep.hpp"

namespace nhssh::plot {

enum class Mark { Line, Dots };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Mark mark = Mark::Line;
};

struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Static SVG; NaN samples break a line.
std::string render(const Figure& figure);

// One colour per distinct value, grey for indeterminate cells.
std::string heatmap(const PhaseGrid& grid, const std::string& title);

}  // namespace nhssh::plot
