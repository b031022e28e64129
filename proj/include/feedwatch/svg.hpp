#pragma once

#include <string>
#include <vector>

namespace feedwatch {

/// Minimal line-plot SVG writer for the ROC and sweep reports.
struct SvgSeries {
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f77b4";
    bool dashed = false;
};

struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    std::vector<SvgSeries> series;
    std::vector<std::pair<double, double>> error_bars;  // (x, half-height) on series 0
};

std::string render_svg(const SvgPlot& plot);

}  // namespace feedwatch
