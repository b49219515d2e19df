#include "mssa/plot.hpp"

#include "mssa/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mssa {

namespace {

constexpr std::array<const char*, 6> kColours{"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad",
                                              "#17a2b8", "#444444"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void write_line_plot(const std::string& path, const std::string& title, const Vec& x,
                     const std::vector<PlotSeries>& series) {
    if (x.size() < 2 || series.empty()) {
        throw InvalidDimension("plot needs at least two points and one series");
    }
    double ymin = 0.0;
    double ymax = 0.0;
    for (const auto& s : series) {
        if (s.y.size() != x.size()) {
            throw InvalidDimension("plot series '" + s.label + "' has the wrong length");
        }
        ymin = std::min(ymin, s.y.minCoeff());
        ymax = std::max(ymax, s.y.maxCoeff());
    }
    if (ymax - ymin < 1e-300) {
        ymax = ymin + 1.0;
    }
    const double width = 800.0;
    const double height = 420.0;
    const double left = 60.0;
    const double right = 20.0;
    const double top = 40.0;
    const double bottom = 40.0;
    const double xmin = x.minCoeff();
    const double xmax = x.maxCoeff();
    auto px = [&](double v) { return left + (v - xmin) / (xmax - xmin) * (width - left - right); };
    auto py = [&](double v) { return top + (ymax - v) / (ymax - ymin) * (height - top - bottom); };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(title) << "</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right
        << "\" height=\"" << height - top - bottom << "\" fill=\"none\" stroke=\"#999\"/>\n";
    svg << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << py(0.0)
        << "\" y2=\"" << py(0.0) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
    for (double v : {ymin, ymax}) {
        svg << "<text x=\"" << left - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">" << v
            << "</text>\n";
    }
    for (double v : {xmin, xmax}) {
        svg << "<text x=\"" << px(v) << "\" y=\"" << height - bottom + 16
            << "\" text-anchor=\"middle\">" << v << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* colour = kColours[s % kColours.size()];
        svg << "<polyline fill=\"none\" stroke-width=\"1.3\" stroke=\"" << colour << "\" points=\"";
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            svg << px(x(i)) << "," << py(series[s].y(i)) << " ";
        }
        svg << "\"/>\n";
        const double ly = top + 16.0 + 16.0 * static_cast<double>(s);
        svg << "<line x1=\"" << width - right - 150 << "\" x2=\"" << width - right - 130 << "\" y1=\""
            << ly - 4 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << width - right - 125 << "\" y=\"" << ly << "\">"
            << escape(series[s].label) << "</text>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << svg.str();
}

}  // namespace mssa
