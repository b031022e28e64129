#include "feedwatch/svg.hpp"

#include <algorithm>
#include <cmath>

#include "feedwatch/io_util.hpp"

namespace feedwatch {

namespace {
constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
}  // namespace

std::string render_svg(const SvgPlot& plot) {
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const double x_span = plot.x_max > plot.x_min ? plot.x_max - plot.x_min : 1.0;
    const double y_span = plot.y_max > plot.y_min ? plot.y_max - plot.y_min : 1.0;
    auto px = [&](double x) { return kLeft + (x - plot.x_min) / x_span * plot_w; };
    auto py = [&](double y) { return kTop + plot_h - (y - plot.y_min) / y_span * plot_h; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
    s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
         "font-family=\"sans-serif\">" +
         plot.title + "</text>\n";

    // Axes with 5 ticks per side.
    s += "<g stroke=\"#333\" stroke-width=\"1\" font-size=\"11\" font-family=\"sans-serif\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = plot.x_min + x_span * i / 5.0;
        const double fy = plot.y_min + y_span * i / 5.0;
        s += "<line x1=\"" + format_g4(px(fx)) + "\" y1=\"" + format_g4(kTop + plot_h) +
             "\" x2=\"" + format_g4(px(fx)) + "\" y2=\"" + format_g4(kTop + plot_h + 5) + "\"/>\n";
        s += "<text x=\"" + format_g4(px(fx)) + "\" y=\"" + format_g4(kTop + plot_h + 18) +
             "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">" + format_g4(fx) +
             "</text>\n";
        s += "<line x1=\"" + format_g4(kLeft - 5) + "\" y1=\"" + format_g4(py(fy)) + "\" x2=\"" +
             format_g4(kLeft) + "\" y2=\"" + format_g4(py(fy)) + "\"/>\n";
        s += "<text x=\"" + format_g4(kLeft - 8) + "\" y=\"" + format_g4(py(fy) + 4) +
             "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333\">" + format_g4(fy) +
             "</text>\n";
    }
    s += "<line x1=\"" + format_g4(kLeft) + "\" y1=\"" + format_g4(kTop) + "\" x2=\"" +
         format_g4(kLeft) + "\" y2=\"" + format_g4(kTop + plot_h) + "\"/>\n";
    s += "<line x1=\"" + format_g4(kLeft) + "\" y1=\"" + format_g4(kTop + plot_h) + "\" x2=\"" +
         format_g4(kLeft + plot_w) + "\" y2=\"" + format_g4(kTop + plot_h) + "\"/>\n";
    s += "</g>\n";

    s += "<text x=\"" + format_g4(kLeft + plot_w / 2) + "\" y=\"470\" text-anchor=\"middle\" "
         "font-size=\"13\" font-family=\"sans-serif\">" +
         plot.x_label + "</text>\n";
    s += "<text x=\"16\" y=\"" + format_g4(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 16 " +
         format_g4(kTop + plot_h / 2) + ")\">" + plot.y_label + "</text>\n";

    for (const auto& [x, half] : plot.error_bars) {
        if (plot.series.empty()) break;
        const auto& pts = plot.series[0].points;
        auto it = std::find_if(pts.begin(), pts.end(),
                               [x](const auto& p) { return p.first == x; });
        if (it == pts.end()) continue;
        s += "<line stroke=\"#888\" x1=\"" + format_g4(px(x)) + "\" y1=\"" +
             format_g4(py(it->second - half)) + "\" x2=\"" + format_g4(px(x)) + "\" y2=\"" +
             format_g4(py(it->second + half)) + "\"/>\n";
    }

    for (const auto& series : plot.series) {
        if (series.points.empty()) continue;
        s += "<polyline fill=\"none\" stroke=\"" + series.color + "\" stroke-width=\"2\"";
        if (series.dashed) s += " stroke-dasharray=\"6 4\"";
        s += " points=\"";
        for (const auto& [x, y] : series.points)
            s += format_g4(px(x)) + "," + format_g4(py(y)) + " ";
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace feedwatch
