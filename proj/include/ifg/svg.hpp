#ifndef IFG_SVG_HPP
#define IFG_SVG_HPP

// SVG pictures of filament families: the x-axis plus one <path> per
// filament. Semicircles are drawn with arc commands, polylines as straight
// segments, and abstract filaments as semicircles marked approximate.

#include "ifg/io.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <set>
#include <string>
#include <variant>

namespace ifg {

namespace detail {

inline std::string fmt_px(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000")
        s = "0.000";
    return s;
}

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace detail

/// Renders rec; filaments whose positions are in highlight get a distinct
/// stroke. Output depends only on the inputs.
template <class W>
std::string render_svg(const InstanceRecord<W>& rec, const std::set<std::size_t>& highlight = {})
{
    constexpr double plot_width = 800.0;
    constexpr double margin = 20.0;

    double xmin = 0.0;
    double xmax = 1.0;
    double ymax = 0.0;
    if (rec.size() > 0)
    {
        xmin = left_of(rec.filaments[0]).template convert_to<double>();
        xmax = right_of(rec.filaments[0]).template convert_to<double>();
    }
    for (const auto& f : rec.filaments)
    {
        const double l = left_of(f).template convert_to<double>();
        const double r = right_of(f).template convert_to<double>();
        xmin = std::min(xmin, std::min(l, r));
        xmax = std::max(xmax, std::max(l, r));
        if (const auto* p = std::get_if<PolylineFilament>(&f))
        {
            for (const auto& v : p->vertices)
                ymax = std::max(ymax, v.y.template convert_to<double>());
        }
        else
        {
            ymax = std::max(ymax, (r - l) / 2.0);
        }
    }
    const double span = xmax > xmin ? xmax - xmin : 1.0;
    const double scale = plot_width / span;
    const double width = plot_width + 2 * margin;
    const double height = ymax * scale + 2 * margin;
    const double base = margin + ymax * scale;
    auto px = [&](double x) { return detail::fmt_px(margin + (x - xmin) * scale); };
    auto py = [&](double y) { return detail::fmt_px(base - y * scale); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt_px(width) + "\" height=\""
           + detail::fmt_px(height) + "\" viewBox=\"0 0 " + detail::fmt_px(width) + " " + detail::fmt_px(height)
           + "\">\n";
    out += "  <path class=\"axis\" d=\"M 0.000 " + py(0) + " H " + detail::fmt_px(width)
           + "\" stroke=\"#000000\" stroke-width=\"1\" fill=\"none\"/>\n";

    for (std::size_t i = 0; i < rec.size(); ++i)
    {
        const auto& f = rec.filaments[i];
        const bool hl = highlight.count(i) > 0;
        std::string d;
        bool approximate = false;
        if (const auto* p = std::get_if<PolylineFilament>(&f))
        {
            for (std::size_t k = 0; k < p->vertices.size(); ++k)
            {
                d += k == 0 ? "M " : " L ";
                d += px(p->vertices[k].x.template convert_to<double>()) + " "
                     + py(p->vertices[k].y.template convert_to<double>());
            }
        }
        else
        {
            approximate = is_abstract(f);
            const double l = left_of(f).template convert_to<double>();
            const double r = right_of(f).template convert_to<double>();
            const std::string radius = detail::fmt_px((r - l) / 2.0 * scale);
            d = "M " + px(l) + " " + py(0) + " A " + radius + " " + radius + " 0 0 1 " + px(r) + " " + py(0);
        }
        out += "  <path class=\"" + std::string(hl ? "filament highlight" : "filament") + "\" data-id=\""
               + detail::xml_escape(rec.ids[i]) + "\"" + (approximate ? " data-approximate=\"true\"" : "")
               + " d=\"" + d + "\" stroke=\"" + (hl ? "#d62728" : "#1f77b4") + "\" stroke-width=\""
               + (hl ? "2.5" : "1.5") + "\" fill=\"none\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace ifg

#endif // IFG_SVG_HPP
