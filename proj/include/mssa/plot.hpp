#pragma once

#include "mssa/spectrum.hpp"

#include <string>
#include <vector>

namespace mssa {

struct PlotSeries {
    std::string label;
    Vec y;
};

/// Minimal SVG line chart: shared x axis, one polyline per series, legend, zero line.
void write_line_plot(const std::string& path, const std::string& title, const Vec& x,
                     const std::vector<PlotSeries>& series);

}  // namespace mssa
