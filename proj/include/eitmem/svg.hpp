#pragma once

// Minimal static SVG line plots: axes, ticks, polylines, markers. CSV files
// stay the canonical output; these are quick-look figures only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace eitmem::svg {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f6fb2";
    bool line = true;
    bool markers = false;
};

namespace detail {

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace detail

inline std::string line_plot(const std::string& title, const std::string& xlabel,
                             const std::string& ylabel,
                             const std::vector<Series>& series) {
    const double width = 720, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 55;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    auto py = [&](double y) {
        return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           detail::num(width) + "\" height=\"" + detail::num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + detail::num(width / 2) + "\" y=\"24\" font-size=\"16\" "
           "text-anchor=\"middle\">" + title + "</text>\n";

    // frame
    out += "<rect x=\"" + detail::num(ml) + "\" y=\"" + detail::num(mt) +
           "\" width=\"" + detail::num(width - ml - mr) + "\" height=\"" +
           detail::num(height - mt - mb) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (int k = 0; k <= 5; ++k) {
        const double x = xmin + (xmax - xmin) * k / 5.0;
        const double y = ymin + (ymax - ymin) * k / 5.0;
        out += "<line x1=\"" + detail::num(px(x)) + "\" y1=\"" +
               detail::num(height - mb) + "\" x2=\"" + detail::num(px(x)) +
               "\" y2=\"" + detail::num(height - mb + 5) +
               "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + detail::num(px(x)) + "\" y=\"" +
               detail::num(height - mb + 20) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + detail::num(x) +
               "</text>\n";
        out += "<line x1=\"" + detail::num(ml - 5) + "\" y1=\"" +
               detail::num(py(y)) + "\" x2=\"" + detail::num(ml) + "\" y2=\"" +
               detail::num(py(y)) + "\" stroke=\"#444\"/>\n";
        out += "<text x=\"" + detail::num(ml - 8) + "\" y=\"" +
               detail::num(py(y) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + detail::num(y) +
               "</text>\n";
    }
    out += "<text x=\"" + detail::num((ml + width - mr) / 2) + "\" y=\"" +
           detail::num(height - 12) + "\" font-size=\"13\" "
           "text-anchor=\"middle\">" + xlabel + "</text>\n";
    out += "<text x=\"16\" y=\"" + detail::num((mt + height - mb) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           detail::num((mt + height - mb) / 2) + ")\">" + ylabel + "</text>\n";

    double legend_y = mt + 14;
    for (const auto& s : series) {
        std::string path;
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            path += (path.empty() ? "M" : " L") + detail::num(px(x)) + " " +
                    detail::num(py(y));
        }
        if (s.line && !path.empty())
            out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.6\"/>\n";
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                out += "<circle cx=\"" + detail::num(px(x)) + "\" cy=\"" +
                       detail::num(py(y)) + "\" r=\"2.5\" fill=\"" + s.color +
                       "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            out += "<rect x=\"" + detail::num(width - mr - 150) + "\" y=\"" +
                   detail::num(legend_y - 8) + "\" width=\"14\" height=\"3\" fill=\"" +
                   s.color + "\"/>\n";
            out += "<text x=\"" + detail::num(width - mr - 130) + "\" y=\"" +
                   detail::num(legend_y - 2) + "\" font-size=\"11\">" + s.label +
                   "</text>\n";
            legend_y += 16;
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace eitmem::svg
