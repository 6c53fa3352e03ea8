#pragma once

/**
 * @file
 * Minimal static SVG 1.1 charts: multi-series line plots and a filled contour
 * view of a gridded surface. No scripting, no external resources.
 */

#include <string>
#include <string_view>
#include <vector>

namespace sqd::svg {

enum class Stroke { Solid, Dashed, Dotted };

struct Series {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::string color = "#1f77b4";
    Stroke stroke = Stroke::Solid;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

std::string render_line_chart(const LineChart &chart);

struct Surface {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string value_label;
    std::vector<double> xs;
    std::vector<double> ys;
    /// values[iy][ix]
    std::vector<std::vector<double>> values;
    int contour_levels = 10;
};

std::string render_contour(const Surface &surface);

std::string escape(std::string_view text);

/// Tick positions at 1/2/5 x 10^k spacing covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target);

} // namespace sqd::svg
