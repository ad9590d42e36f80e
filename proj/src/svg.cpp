#include "hopfdde/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hopfdde {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// tick spacing at a round number (1, 2 or 5 times a power of ten)
double nice_step(double span, int target_ticks) {
    const double raw = span / std::max(1, target_ticks);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    if (r < 1.5) return mag;
    if (r < 3.5) return 2.0 * mag;
    if (r < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

}  // namespace

std::string line_plot_svg(const std::vector<double>& x,
                          const std::vector<std::vector<double>>& series,
                          const std::vector<std::string>& labels,
                          const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label) {
    if (series.empty() || x.size() < 2)
        throw std::invalid_argument("line_plot_svg: need at least one series and two points");
    for (const auto& s : series)
        if (s.size() != x.size())
            throw std::invalid_argument("line_plot_svg: series length mismatch");
    if (labels.size() != series.size())
        throw std::invalid_argument("line_plot_svg: one label per series required");

    const double W = 800.0, H = 500.0;
    const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 55.0;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = x.front(), xmax = x.back();
    double ymin = series[0][0], ymax = ymin;
    for (const auto& s : series)
        for (double v : s) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return mt + (1.0 - (v - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fmt(W / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">"
        << xml_escape(title) << "</text>\n";

    // axes frame
    svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(mt) << "\" width=\""
        << fmt(pw) << "\" height=\"" << fmt(ph)
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = nice_step(xmax - xmin, 8);
    for (double tx = std::ceil(xmin / xs) * xs; tx <= xmax + 1e-12 * xs; tx += xs) {
        svg << "<line x1=\"" << fmt(px(tx)) << "\" y1=\"" << fmt(mt + ph)
            << "\" x2=\"" << fmt(px(tx)) << "\" y2=\"" << fmt(mt + ph + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(px(tx)) << "\" y=\"" << fmt(mt + ph + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt(tx) << "</text>\n";
    }
    const double ys = nice_step(ymax - ymin, 6);
    for (double ty = std::ceil(ymin / ys) * ys; ty <= ymax + 1e-12 * ys; ty += ys) {
        svg << "<line x1=\"" << fmt(ml - 5) << "\" y1=\"" << fmt(py(ty))
            << "\" x2=\"" << fmt(ml) << "\" y2=\"" << fmt(py(ty))
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt(ml - 9) << "\" y=\"" << fmt(py(ty) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
               "font-size=\"11\">"
            << fmt(ty) << "</text>\n";
    }

    svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(H - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << fmt(mt + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << fmt(mt + ph / 2) << ")\">" << xml_escape(y_label) << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        svg << "<polyline fill=\"none\" stroke=\"" << kSeriesColors[k % 4]
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) svg << ' ';
            svg << fmt(px(x[i])) << ',' << fmt(py(series[k][i]));
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << fmt(ml + 10) << "\" y=\""
            << fmt(mt + 16 + 16 * static_cast<double>(k)) << "\" fill=\""
            << kSeriesColors[k % 4]
            << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << xml_escape(labels[k]) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace hopfdde
