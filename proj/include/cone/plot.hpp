#pragma once

#include <string>
#include <vector>

namespace cone {

/// One aggregated learning curve: checkpoint stages and mean values.
struct CurveSeries {
  std::string label;
  std::vector<double> stages;
  std::vector<double> values;
};

/// Renders the series as a self-contained SVG line chart (axes, ticks,
/// legend); x is the observation count, y the correct-selection rate.
void emit_plot(const std::vector<CurveSeries>& series, const std::string& path);

}  // namespace cone
