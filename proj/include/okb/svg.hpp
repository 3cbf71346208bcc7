#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>

#include "okb/polygon.hpp"

namespace okb {

/// Static SVG of a polygon. Drawn coordinates are decimal and display-only; each vertex
/// carries its exact "p/q" coordinates in a title and a label.
inline std::string polygon_svg(const RationalPolygon& p, const std::string& caption = {})
{
    const double size = 400, margin = 40;
    double max_coord = 1;
    for (const auto& v : p.vertices()) max_coord = std::max({max_coord, v.x.get_d(), v.y.get_d()});
    const double k = (size - 2 * margin) / max_coord;
    auto px = [&](const Rational& x) { return margin + x.get_d() * k; };
    auto py = [&](const Rational& y) { return size - margin - y.get_d() * k; };
    auto num = [](double d) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", d);
        return std::string(buf);
    };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
    s << "<!-- drawn coordinates are decimal approximations for display only; exact values in titles -->\n";
    s << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << size - margin / 2 << "\" y2=\""
      << size - margin << "\" stroke=\"gray\"/>\n";
    s << "<line x1=\"" << margin << "\" y1=\"" << size - margin << "\" x2=\"" << margin << "\" y2=\"" << margin / 2
      << "\" stroke=\"gray\"/>\n";
    if (p.size() >= 2) {
        s << "<polygon points=\"";
        for (const auto& v : p.vertices()) s << num(px(v.x)) << "," << num(py(v.y)) << " ";
        s << "\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"#08519c\" stroke-width=\"2\"/>\n";
    }
    for (const auto& v : p.vertices()) {
        s << "<circle cx=\"" << num(px(v.x)) << "\" cy=\"" << num(py(v.y)) << "\" r=\"3\" fill=\"#08519c\"><title>"
          << to_string(v) << "</title></circle>\n";
        s << "<text x=\"" << num(px(v.x) + 5) << "\" y=\"" << num(py(v.y) - 5) << "\" font-size=\"11\">" << to_string(v)
          << "</text>\n";
    }
    if (!caption.empty()) s << "<text x=\"" << margin << "\" y=\"20\" font-size=\"13\">" << caption << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace okb
