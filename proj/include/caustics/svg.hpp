#pragma once

// SVG 1.1 rendering of a geometry payload. The y axis is flipped so the
// picture has the usual mathematical orientation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "payload.hpp"
#include "vec2.hpp"

namespace caustics
{

namespace detail
{

struct Bounds
{
    double xmin = std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(Vec2 p)
    {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    bool empty() const { return !(xmax >= xmin); }
};

inline std::string fmt6(double v)
{
    if (v == 0)
        v = 0; // no "-0.000000"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000")
        s = "0.000000";
    return s;
}

inline Vec2 triple_point(Json const& p) { return {p[1].get<double>(), p[2].get<double>()}; }
inline Vec2 pair_point(Json const& p) { return {p[0].get<double>(), p[1].get<double>()}; }

} // namespace detail

/*!
 * Render the layers of a payload. The view box covers alpha, beta, cusps
 * and circle contacts; caustic points far outside (near asymptotes) are
 * clipped by the view box rather than stretching it. Each layer is a
 * group whose id is the layer name.
 */
inline std::string render_svg(Json const& payload)
{
    using detail::fmt6;
    Json const& layers = payload.at("layers");

    detail::Bounds core;
    detail::Bounds caustic;
    auto add_triples = [](detail::Bounds& b, Json const& pts) {
        for (auto const& p : pts)
            b.add(detail::triple_point(p));
    };
    if (layers.contains("alpha"))
        add_triples(core, layers["alpha"]);
    if (layers.contains("beta"))
        for (auto const& entry : layers["beta"])
            add_triples(core, entry["points"]);
    if (layers.contains("caustic"))
        for (auto const& comp : layers["caustic"])
            add_triples(caustic, comp["points"]);
    if (layers.contains("cusps"))
        for (auto const& c : layers["cusps"])
            core.add(detail::pair_point(c["point"]));

    bool const has_caustic = layers.contains("caustic");
    if (has_caustic && caustic.empty())
        throw DegenerateError("no finite geometry to render: caustic lies entirely at infinity");

    detail::Bounds box = core;
    if (!caustic.empty())
    {
        if (core.empty())
            box = caustic;
        else
        {
            // Let the caustic widen the view up to three times the core extent.
            double const w = std::max(core.xmax - core.xmin, core.ymax - core.ymin);
            double const cx = 0.5 * (core.xmin + core.xmax);
            double const cy = 0.5 * (core.ymin + core.ymax);
            double const reach = 1.5 * w + 1e-9;
            box.add({std::clamp(caustic.xmin, cx - reach, cx + reach), std::clamp(caustic.ymin, cy - reach, cy + reach)});
            box.add({std::clamp(caustic.xmax, cx - reach, cx + reach), std::clamp(caustic.ymax, cy - reach, cy + reach)});
        }
    }
    if (box.empty())
        throw DegenerateError("no finite geometry to render");

    double w = box.xmax - box.xmin;
    double h = box.ymax - box.ymin;
    double const extent = std::max({w, h, 1e-6});
    w = std::max(w, 1e-3 * extent);
    h = std::max(h, 1e-3 * extent);
    double const mx = 0.05 * w;
    double const my = 0.05 * h;
    double const vx = box.xmin - mx;
    double const vy = -(box.ymax + my);
    double const vw = w + 2 * mx;
    double const vh = h + 2 * my;
    double const stroke = 0.003 * std::max(vw, vh);

    auto xy = [](Vec2 p) { return fmt6(p.x) + "," + fmt6(-p.y); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt6(vx) << " " << fmt6(vy)
       << " " << fmt6(vw) << " " << fmt6(vh) << "\" width=\"800\" height=\""
       << fmt6(800.0 * vh / vw) << "\">\n";

    auto polyline = [&](Json const& pts, char const* color, std::string const& extra) {
        os << "    <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << fmt6(stroke) << "\""
           << extra << " points=\"";
        bool first = true;
        for (auto const& p : pts)
        {
            os << (first ? "" : " ") << xy(detail::triple_point(p));
            first = false;
        }
        os << "\"/>\n";
    };

    for (auto const& name : layer_names())
    {
        if (!layers.contains(name))
            continue;
        Json const& layer = layers[name];
        os << "  <g id=\"" << name << "\">\n";
        if (name == "alpha")
            polyline(layer, "#000000", "");
        else if (name == "beta")
            for (auto const& entry : layer)
                polyline(entry["points"], "#1f77b4", " data-radiant=\"" + entry["radiant"].dump() + "\"");
        else if (name == "caustic")
            for (auto const& comp : layer)
                polyline(comp["points"], "#d62728",
                         " data-radiant=\"" + comp["radiant"].dump() + "\" data-component=\"" + comp["component"].dump()
                             + "\"");
        else if (name == "focal_circles")
        {
            for (auto const& entry : layer)
                for (auto const& c : entry["circles"])
                {
                    if (!c["R"].is_number())
                        continue;
                    Vec2 const center = detail::pair_point(c["center"]);
                    os << "    <circle cx=\"" << fmt6(center.x) << "\" cy=\"" << fmt6(-center.y) << "\" r=\""
                       << fmt6(std::abs(c["R"].get<double>())) << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\""
                       << fmt6(stroke / 3) << "\"/>\n";
                }
        }
        else if (name == "discriminant_circles")
        {
            for (auto const& c : layer)
            {
                Vec2 const center = detail::pair_point(c["center"]);
                os << "    <circle cx=\"" << fmt6(center.x) << "\" cy=\"" << fmt6(-center.y) << "\" r=\""
                   << fmt6(c["radius"].get<double>()) << "\" fill=\"none\" stroke=\"#9467bd\" stroke-width=\""
                   << fmt6(stroke / 3) << "\"/>\n";
            }
        }
        else if (name == "rolling_frames")
        {
            for (auto const& f : layer)
            {
                Vec2 const center = detail::pair_point(f["center"]);
                os << "    <circle cx=\"" << fmt6(center.x) << "\" cy=\"" << fmt6(-center.y) << "\" r=\""
                   << fmt6(std::abs(f["R"].get<double>())) << "\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\""
                   << fmt6(stroke / 3) << "\"/>\n";
            }
        }
        else if (name == "cusps")
        {
            for (auto const& c : layer)
            {
                Vec2 const p = detail::pair_point(c["point"]);
                os << "    <circle cx=\"" << fmt6(p.x) << "\" cy=\"" << fmt6(-p.y) << "\" r=\"" << fmt6(2 * stroke)
                   << "\" fill=\"#d62728\"/>\n";
            }
        }
        else if (name == "asymptotes")
        {
            double const len = 2 * std::hypot(vw, vh);
            for (auto const& a : layer)
            {
                Vec2 const p = detail::pair_point(a["point"]);
                Vec2 const d = detail::pair_point(a["direction"]);
                os << "    <line x1=\"" << fmt6(p.x - len * d.x) << "\" y1=\"" << fmt6(-(p.y - len * d.y))
                   << "\" x2=\"" << fmt6(p.x + len * d.x) << "\" y2=\"" << fmt6(-(p.y + len * d.y))
                   << "\" stroke=\"#7f7f7f\" stroke-width=\"" << fmt6(stroke / 2) << "\" stroke-dasharray=\""
                   << fmt6(4 * stroke) << " " << fmt6(2 * stroke) << "\"/>\n";
            }
        }
        os << "  </g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace caustics
