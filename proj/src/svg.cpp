#include "sqd/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "sqd/linalg.hpp"

namespace sqd::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12) {
        v = 0.0;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;
    double right = kRight;

    [[nodiscard]] double px(double x) const { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - right); }
    [[nodiscard]] double py(double y) const {
        return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
    }
};

void open_document(std::ostringstream &out, const std::string &title) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << escape(title) << "</text>\n";
}

void draw_axes(std::ostringstream &out, const Frame &f, const std::vector<double> &xt, const std::vector<double> &yt,
               const std::string &x_label, const std::string &y_label) {
    const double x0 = f.px(f.x_lo), x1 = f.px(f.x_hi), y0 = f.py(f.y_lo), y1 = f.py(f.y_hi);
    out << "<g font-family=\"sans-serif\" font-size=\"11\" stroke-width=\"1\">\n";
    out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0) << "\" height=\""
        << num(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double t : xt) {
        const double x = f.px(t);
        out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x) << "\" y2=\"" << num(y0 + 5)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x) << "\" y=\"" << num(y0 + 18) << "\" text-anchor=\"middle\">" << tick_label(t)
            << "</text>\n";
    }
    for (double t : yt) {
        const double y = f.py(t);
        out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
            << "</text>\n";
    }
    out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 14)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label) << "</text>\n";
    out << "<text x=\"18\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << num((y0 + y1) / 2) << ")\">" << escape(y_label) << "</text>\n";
    out << "</g>\n";
}

const char *dash_attr(Stroke s) {
    switch (s) {
    case Stroke::Dashed:
        return " stroke-dasharray=\"8 5\"";
    case Stroke::Dotted:
        return " stroke-dasharray=\"2 4\"";
    case Stroke::Solid:
        break;
    }
    return "";
}

// Piecewise-linear blue -> green -> yellow ramp over t in [0, 1].
std::string ramp(double t) {
    static constexpr std::array<std::array<double, 3>, 4> stops{{
        {68, 1, 84},
        {59, 82, 139},
        {33, 145, 140},
        {253, 231, 37},
    }};
    t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
    const double u = t - k;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(stops[k][0] + u * (stops[k + 1][0] - stops[k][0]))),
                  static_cast<int>(std::lround(stops[k][1] + u * (stops[k + 1][1] - stops[k][1]))),
                  static_cast<int>(std::lround(stops[k][2] + u * (stops[k + 1][2] - stops[k][2]))));
    return buf;
}

} // namespace

std::string escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
    if (!(hi > lo) || target < 1) {
        return {lo};
    }
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) {
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + step * 1e-9; t += step) {
        ticks.push_back(t);
    }
    return ticks;
}

std::string render_line_chart(const LineChart &chart) {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
    for (const auto &s : chart.series) {
        if (s.xs.size() != s.ys.size()) {
            throw DomainError("svg: series '" + s.label + "' has mismatched x/y lengths");
        }
        for (double v : s.xs) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.ys) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    }
    if (x_hi == x_lo) {
        x_hi = x_lo + 1.0;
    }
    const double pad = y_hi > y_lo ? 0.05 * (y_hi - y_lo) : 0.5;
    y_lo = std::min(0.0, y_lo - pad);
    y_hi += pad;
    const Frame f{x_lo, x_hi, y_lo, y_hi};

    std::ostringstream out;
    open_document(out, chart.title);
    draw_axes(out, f, nice_ticks(x_lo, x_hi, 6), nice_ticks(y_lo, y_hi, 6), chart.x_label, chart.y_label);
    for (const auto &s : chart.series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << dash_attr(s.stroke)
            << " points=\"";
        for (std::size_t k = 0; k < s.xs.size(); ++k) {
            out << (k == 0 ? "" : " ") << num(f.px(s.xs[k])) << "," << num(f.py(s.ys[k]));
        }
        out << "\"/>\n";
    }
    // legend, top right
    double ly = kTop + 18;
    const double lx = kWidth - kRight - 190;
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (const auto &s : chart.series) {
        out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(lx + 28) << "\" y2=\""
            << num(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << dash_attr(s.stroke) << "/>\n";
        out << "<text x=\"" << num(lx + 34) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
        ly += 18;
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string render_contour(const Surface &s) {
    const std::size_t nx = s.xs.size(), ny = s.ys.size();
    if (nx < 2 || ny < 2 || s.values.size() != ny) {
        throw DomainError("svg: contour surface needs at least a 2x2 grid with values[iy][ix]");
    }
    double v_lo = std::numeric_limits<double>::infinity(), v_hi = -v_lo;
    for (const auto &row : s.values) {
        if (row.size() != nx) {
            throw DomainError("svg: contour surface row has the wrong length");
        }
        for (double v : row) {
            v_lo = std::min(v_lo, v);
            v_hi = std::max(v_hi, v);
        }
    }
    const double span = v_hi > v_lo ? v_hi - v_lo : 1.0;
    const Frame f{s.xs.front(), s.xs.back(), s.ys.front(), s.ys.back(), 84.0};

    std::ostringstream out;
    open_document(out, s.title);

    // Filled cells, coloured by the mean of their corners.
    out << "<g stroke=\"none\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const double mean =
                (s.values[j][i] + s.values[j][i + 1] + s.values[j + 1][i] + s.values[j + 1][i + 1]) / 4.0;
            const double x0 = f.px(s.xs[i]), x1 = f.px(s.xs[i + 1]);
            const double y0 = f.py(s.ys[j + 1]), y1 = f.py(s.ys[j]);
            out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0 + 0.3)
                << "\" height=\"" << num(y1 - y0 + 0.3) << "\" fill=\"" << ramp((mean - v_lo) / span) << "\"/>\n";
        }
    }
    out << "</g>\n";

    // Iso-lines by marching squares.
    out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"0.8\">\n";
    for (int level = 1; level <= s.contour_levels; ++level) {
        const double iso = v_lo + span * level / (s.contour_levels + 1);
        std::ostringstream path;
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            for (std::size_t i = 0; i + 1 < nx; ++i) {
                // corners counter-clockwise from (i, j)
                const std::array<double, 4> v{s.values[j][i], s.values[j][i + 1], s.values[j + 1][i + 1],
                                              s.values[j + 1][i]};
                const std::array<std::array<double, 2>, 4> c{{{s.xs[i], s.ys[j]},
                                                              {s.xs[i + 1], s.ys[j]},
                                                              {s.xs[i + 1], s.ys[j + 1]},
                                                              {s.xs[i], s.ys[j + 1]}}};
                std::vector<std::array<double, 2>> hits;
                for (int e = 0; e < 4; ++e) {
                    const int a = e, b = (e + 1) % 4;
                    if ((v[a] < iso) != (v[b] < iso)) {
                        const double t = (iso - v[a]) / (v[b] - v[a]);
                        hits.push_back({c[a][0] + t * (c[b][0] - c[a][0]), c[a][1] + t * (c[b][1] - c[a][1])});
                    }
                }
                for (std::size_t h = 0; h + 1 < hits.size(); h += 2) {
                    path << "M" << num(f.px(hits[h][0])) << "," << num(f.py(hits[h][1])) << "L"
                         << num(f.px(hits[h + 1][0])) << "," << num(f.py(hits[h + 1][1]));
                }
            }
        }
        const std::string d = path.str();
        if (!d.empty()) {
            out << "<path d=\"" << d << "\"/>\n";
        }
    }
    out << "</g>\n";

    draw_axes(out, f, nice_ticks(f.x_lo, f.x_hi, 6), nice_ticks(f.y_lo, f.y_hi, 6), s.x_label, s.y_label);

    // colour bar
    const double bx = kWidth - 40, by0 = kTop, by1 = kHeight - kBottom;
    out << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    constexpr int kBarSteps = 40;
    for (int k = 0; k < kBarSteps; ++k) {
        const double t0 = static_cast<double>(k) / kBarSteps;
        const double y = by1 - (by1 - by0) * (k + 1) / kBarSteps;
        out << "<rect x=\"" << num(bx) << "\" y=\"" << num(y) << "\" width=\"10\" height=\""
            << num((by1 - by0) / kBarSteps + 0.3) << "\" fill=\"" << ramp(t0 + 0.5 / kBarSteps) << "\"/>\n";
    }
    out << "<text x=\"" << num(bx + 5) << "\" y=\"" << num(by0 - 6) << "\" text-anchor=\"middle\">"
        << tick_label(std::round(v_hi * 1e4) / 1e4) << "</text>\n";
    out << "<text x=\"" << num(bx + 5) << "\" y=\"" << num(by1 + 14) << "\" text-anchor=\"middle\">"
        << tick_label(std::round(v_lo * 1e4) / 1e4) << "</text>\n";
    out << "<text x=\"" << num(bx - 4) << "\" y=\"" << num((by0 + by1) / 2) << "\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 " << num(bx - 4) << " " << num((by0 + by1) / 2) << ")\">"
        << escape(s.value_label) << "</text>\n";
    out << "</g>\n</svg>\n";
    return out.str();
}

} // namespace sqd::svg
