#pragma once

// Minimal self-contained SVG charts: axes, ticks, legend.

#include <string>
#include <vector>

namespace gridlab::charts {

struct Series {
  std::string name;
  std::vector<double> y;  // one value per x label; NaN or <= 0 points are skipped on log axes
};

/// Line chart over categorical x positions with a log10 y axis.
std::string line_chart_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<std::string>& x_ticks, const std::vector<Series>& series);

struct Bar {
  std::string label;
  double value;
  double error;  // whisker half-length
};

/// Bars with +/- error whiskers; the lower whisker stops at zero.
std::string bar_chart_svg(const std::string& title, const std::string& y_label, const std::vector<Bar>& bars);

/// Lower end of a whisker as drawn: max(0, value - error).
inline double whisker_low(const Bar& b) { return b.value - b.error > 0.0 ? b.value - b.error : 0.0; }

}  // namespace gridlab::charts
