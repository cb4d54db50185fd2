// Minimal self-contained SVG line plots for the diagnostic time series.
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "inls/common.hpp"

namespace inls {

struct PlotSeries {
    std::string label;
    std::vector<real> x;
    std::vector<real> y;
};

// One SVG document with axes, tick labels and a polyline per series.
inline std::string svg_line_plot(const std::vector<PlotSeries>& series, const std::string& title,
                                 bool log_y = false) {
    const int W = 760, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    real xmin = infinity, xmax = -infinity, ymin = infinity, ymax = -infinity;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            real y = s.y[i];
            if (log_y) {
                if (!(y > 0.0)) continue;
                y = std::log10(y);
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](real x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](real y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream o;
    o << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    o << "<rect width='100%' height='100%' fill='white'/>\n";
    o << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
      << (log_y ? " (log10 y)" : "") << "</text>\n";
    o << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
      << "' stroke='black'/>\n";
    o << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
      << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const real xv = xmin + (xmax - xmin) * i / 5.0;
        const real yv = ymin + (ymax - ymin) * i / 5.0;
        o << "<text x='" << px(xv) << "' y='" << H - mb + 18
          << "' text-anchor='middle' font-size='11'>" << std::round(xv * 1e3) / 1e3 << "</text>\n";
        o << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
          << "' text-anchor='end' font-size='11'>" << std::round(yv * 1e3) / 1e3 << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        o << "<polyline fill='none' stroke='" << colors[ci % 5] << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            real y = s.y[i];
            if (log_y) {
                if (!(y > 0.0)) continue;
                y = std::log10(y);
            }
            o << px(s.x[i]) << "," << py(y) << " ";
        }
        o << "'/>\n";
        o << "<text x='" << W - mr - 8 << "' y='" << mt + 16 + 16 * ci
          << "' text-anchor='end' font-size='12' fill='" << colors[ci % 5] << "'>" << s.label
          << "</text>\n";
        ++ci;
    }
    o << "</svg>\n";
    return o.str();
}

} // namespace inls
