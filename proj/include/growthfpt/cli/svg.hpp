#pragma once

// Self-contained SVG line charts. Output depends only on the data.

#include <string>
#include <vector>

namespace growthfpt::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool legend = true;
  double opacity = 1.0;
};

std::string render_svg(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                       const std::vector<Series>& series);

}  // namespace growthfpt::cli
