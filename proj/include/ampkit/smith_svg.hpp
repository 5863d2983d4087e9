#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "ampkit/complex_utils.hpp"

// Smith-chart geometry rendered as standalone SVG: the unit circle with a
// light impedance grid, stability circles, constant-noise circles and marked
// reflection-coefficient points. Geometry outside the unit circle (stability
// circles usually are) grows the canvas automatically.

namespace ampkit::smith {

struct Circle {
    Complex center;
    double radius = 0.0;
    std::string label;
    std::string color = "#000000";
    bool dashed = false;
};

struct Marker {
    Complex gamma;
    std::string label;
    std::string color = "#000000";
};

struct Geometry {
    std::vector<Circle> circles;
    std::vector<Marker> markers;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace detail

inline std::string render_svg(const Geometry& geo, int canvas_px = 760) {
    // Extent of the drawing in gamma units; at least the unit circle.
    double extent = 1.0;
    for (const auto& c : geo.circles) extent = std::max(extent, std::abs(c.center) + c.radius);
    for (const auto& m : geo.markers) extent = std::max(extent, std::abs(m.gamma));
    extent *= 1.06;

    const double half = canvas_px / 2.0;
    const double scale = half / extent;
    auto X = [&](double re) { return detail::fmt(half + scale * re); };
    auto Y = [&](double im) { return detail::fmt(half - scale * im); };
    auto R = [&](double r) { return detail::fmt(scale * r); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(canvas_px) +
           "\" height=\"" + std::to_string(canvas_px) + "\" viewBox=\"0 0 " +
           std::to_string(canvas_px) + " " + std::to_string(canvas_px) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // Impedance grid, clipped to the unit circle. Constant-resistance circles
    // have center r/(1+r), radius 1/(1+r); constant-reactance arcs are circles
    // centered at (1, 1/x) with radius 1/|x|.
    svg += "<clipPath id=\"disk\"><circle cx=\"" + X(0) + "\" cy=\"" + Y(0) + "\" r=\"" + R(1.0) +
           "\"/></clipPath>\n";
    svg += "<g clip-path=\"url(#disk)\" stroke=\"#c8c8c8\" fill=\"none\" stroke-width=\"1\">\n";
    for (const double r : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        svg += "  <circle cx=\"" + X(r / (1.0 + r)) + "\" cy=\"" + Y(0) + "\" r=\"" +
               R(1.0 / (1.0 + r)) + "\"/>\n";
    }
    for (const double x : {0.2, 0.5, 1.0, 2.0, 5.0}) {
        for (const double sign : {1.0, -1.0}) {
            svg += "  <circle cx=\"" + X(1.0) + "\" cy=\"" + Y(sign / x) + "\" r=\"" + R(1.0 / x) +
                   "\"/>\n";
        }
    }
    svg += "  <line x1=\"" + X(-1.0) + "\" y1=\"" + Y(0) + "\" x2=\"" + X(1.0) + "\" y2=\"" + Y(0) +
           "\"/>\n";
    svg += "</g>\n";

    // Unit circle on top of the grid.
    svg += "<circle cx=\"" + X(0) + "\" cy=\"" + Y(0) + "\" r=\"" + R(1.0) +
           "\" stroke=\"#000000\" stroke-width=\"1.5\" fill=\"none\"/>\n";

    for (const auto& c : geo.circles) {
        svg += "<circle cx=\"" + X(c.center.real()) + "\" cy=\"" + Y(c.center.imag()) + "\" r=\"" +
               R(c.radius) + "\" stroke=\"" + c.color + "\" stroke-width=\"1.5\" fill=\"none\"";
        if (c.dashed) svg += " stroke-dasharray=\"6 4\"";
        svg += "/>\n";
        if (!c.label.empty()) {
            // Label at the circle's top.
            svg += "<text x=\"" + X(c.center.real()) + "\" y=\"" + Y(c.center.imag() + c.radius) +
                   "\" fill=\"" + c.color + "\" font-size=\"13\" text-anchor=\"middle\" dy=\"-4\">" +
                   c.label + "</text>\n";
        }
    }

    for (const auto& m : geo.markers) {
        svg += "<circle cx=\"" + X(m.gamma.real()) + "\" cy=\"" + Y(m.gamma.imag()) +
               "\" r=\"4\" fill=\"" + m.color + "\"/>\n";
        if (!m.label.empty()) {
            svg += "<text x=\"" + X(m.gamma.real()) + "\" y=\"" + Y(m.gamma.imag()) + "\" fill=\"" +
                   m.color + "\" font-size=\"13\" dx=\"7\" dy=\"4\">" + m.label + "</text>\n";
        }
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace ampkit::smith
