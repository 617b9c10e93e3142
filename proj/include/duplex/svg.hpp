// svg.hpp — Static SVG views of rate regions and band summaries. Boundary
// segments are colored by protocol label; the time-shared unidirectional
// reference line is dashed.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "duplex/bandwidth.hpp"
#include "duplex/region.hpp"
#include "duplex/serialize.hpp"

namespace duplex {

namespace detail {

inline const char* label_color(ProtocolLabel l) {
    switch (l) {
        case ProtocolLabel::reflectionless: return "#d62728";
        case ProtocolLabel::low_rank_jacobian: return "#2ca02c";
        case ProtocolLabel::axis_capacity: return "#1f77b4";
        case ProtocolLabel::time_sharing: return "#9e9e9e";
    }
    return "#9e9e9e";
}

struct SvgCanvas {
    double width = 480.0, height = 480.0;
    double margin = 56.0;
    double x_max = 1.0, y_max = 1.0;
    std::string body;

    double px(double x) const { return margin + (width - 2 * margin) * x / x_max; }
    double py(double y) const { return height - margin - (height - 2 * margin) * y / y_max; }

    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        body += "<line x1=\"" + format_number(px(x1)) + "\" y1=\"" + format_number(py(y1)) +
                "\" x2=\"" + format_number(px(x2)) + "\" y2=\"" + format_number(py(y2)) + "\" " +
                style + "/>\n";
    }
    void text(double x, double y, const std::string& s, const std::string& extra = "") {
        body += "<text x=\"" + format_number(x) + "\" y=\"" + format_number(y) +
                "\" font-size=\"12\" font-family=\"sans-serif\" " + extra + ">" + s + "</text>\n";
    }

    std::string finish() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" "
               "width=\"" + format_number(width) + "\" height=\"" + format_number(height) +
               "\" viewBox=\"0 0 " + format_number(width) + " " + format_number(height) + "\">\n" +
               "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body + "</svg>\n";
    }

    void axes(const std::string& xlabel, const std::string& ylabel) {
        body += "<line x1=\"" + format_number(margin) + "\" y1=\"" + format_number(height - margin) +
                "\" x2=\"" + format_number(width - margin) + "\" y2=\"" +
                format_number(height - margin) + "\" stroke=\"black\"/>\n";
        body += "<line x1=\"" + format_number(margin) + "\" y1=\"" + format_number(height - margin) +
                "\" x2=\"" + format_number(margin) + "\" y2=\"" + format_number(margin) +
                "\" stroke=\"black\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double fx = x_max * k / 4.0, fy = y_max * k / 4.0;
            text(px(fx) - 10, height - margin + 16, format_number(std::round(fx * 100) / 100));
            text(margin - 40, py(fy) + 4, format_number(std::round(fy * 100) / 100));
        }
        text(width / 2 - 40, height - 12, xlabel);
        text(12, height / 2,ylabel, "transform=\"rotate(-90 16 " + format_number(height / 2) + ")\"");
    }
};

}  // namespace detail

// Region plot: hull outline, boundary segments colored by protocol, dashed
// time-shared-unidirectional reference between the axis maxima.
inline std::string render_region_svg(const RateRegion& region) {
    if (region.boundary.empty() || region.hull.empty()) {
        detail::SvgCanvas c;
        c.text(c.width / 2 - 60, c.height / 2, "empty rate region");
        return c.finish();
    }
    detail::SvgCanvas c;
    double mx = 0.0, my = 0.0;
    for (const BoundaryPoint& bp : region.boundary) {
        mx = std::max(mx, bp.rate.i1);
        my = std::max(my, bp.rate.i2);
    }
    c.x_max = std::max(mx * 1.08, 1e-6);
    c.y_max = std::max(my * 1.08, 1e-6);
    c.axes("I1 (qubits per use)", "I2 (qubits per use)");

    // Time-shared unidirectional reference.
    c.line(mx, 0.0, 0.0, my,
           "stroke=\"#555555\" stroke-dasharray=\"6 4\" stroke-width=\"1\"");

    const auto& b = region.boundary;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const BoundaryPoint& p = b[i];
        const BoundaryPoint& q = b[(i + 1) % b.size()];
        const ProtocolLabel seg = (p.label == q.label) ? p.label : ProtocolLabel::time_sharing;
        c.line(p.rate.i1, p.rate.i2, q.rate.i1, q.rate.i2,
               std::string("stroke=\"") + detail::label_color(seg) + "\" stroke-width=\"2\"");
    }
    for (const BoundaryPoint& p : b) {
        if (p.label == ProtocolLabel::axis_capacity) {
            c.body += "<circle cx=\"" + format_number(c.px(p.rate.i1)) + "\" cy=\"" +
                      format_number(c.py(p.rate.i2)) + "\" r=\"4\" fill=\"#1f77b4\"/>\n";
        }
    }
    return c.finish();
}

// Band panel: max I1+I2 and Imax versus detuning with the advantage window
// shaded.
inline std::string render_band_svg(const BandSummary& band) {
    detail::SvgCanvas c;
    if (band.profile.empty()) {
        c.text(c.width / 2 - 60, c.height / 2, "empty band summary");
        return c.finish();
    }
    const double d0 = band.profile.front().delta;
    const double d1 = band.profile.back().delta;
    double ymax = 1e-6;
    for (const BandPoint& bp : band.profile) {
        if (std::isfinite(bp.max_sum)) ymax = std::max(ymax, bp.max_sum);
        if (std::isfinite(bp.i_max)) ymax = std::max(ymax, bp.i_max);
    }
    c.x_max = 1.0;
    c.y_max = ymax * 1.08;
    auto fx = [&](double delta) { return (delta - d0) / (d1 - d0); };
    c.axes("Delta (kappa_i units)", "rate (qubits per use)");

    for (const auto& [lo, hi] : band.advantage_intervals) {
        c.body += "<rect x=\"" + format_number(c.px(fx(lo))) + "\" y=\"" +
                  format_number(c.py(c.y_max)) + "\" width=\"" +
                  format_number(c.px(fx(hi)) - c.px(fx(lo))) + "\" height=\"" +
                  format_number(c.py(0) - c.py(c.y_max)) + "\" fill=\"#cccccc\" opacity=\"0.5\"/>\n";
    }
    for (std::size_t i = 0; i + 1 < band.profile.size(); ++i) {
        const BandPoint& p = band.profile[i];
        const BandPoint& q = band.profile[i + 1];
        if (std::isfinite(p.max_sum) && std::isfinite(q.max_sum)) {
            c.line(fx(p.delta), p.max_sum, fx(q.delta), q.max_sum,
                   "stroke=\"#ff7f0e\" stroke-width=\"2\"");
        }
        if (std::isfinite(p.i_max) && std::isfinite(q.i_max)) {
            c.line(fx(p.delta), p.i_max, fx(q.delta), q.i_max,
                   "stroke=\"#1f77b4\" stroke-width=\"2\" stroke-dasharray=\"6 4\"");
        }
    }
    c.text(c.width - 170, c.margin + 6, "orange: max I1+I2");
    c.text(c.width - 170, c.margin + 22, "blue dashed: Imax");
    return c.finish();
}

}  // namespace duplex
