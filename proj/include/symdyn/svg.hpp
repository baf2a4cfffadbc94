#pragma once

// Static SVG output: step charts of observable series and class-colored
// partition grids.  Every plotted point carries its exact value in
// data-x / data-y attributes so a chart can be checked against its CSV.

#include "symdyn/equality_patterns.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symdyn {

struct ChartSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), x increasing
};

std::string render_step_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<ChartSeries>& series);

/// Interval partitions draw one row of cells; square partitions put the
/// left (stack) axis horizontally and the right (input) axis vertically.
std::string render_partition_svg(const PatternClassMap& map, const std::string& title);

/// Distinct, deterministic fill color for a class id.
std::string class_color(int class_id);

}  // namespace symdyn
