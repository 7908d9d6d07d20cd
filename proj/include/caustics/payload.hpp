#pragma once

// Geometry payload for a scene: one entry per requested layer. Points are
// [t, x, y] triples; anything at infinity is the string "at_infinity"
// rather than a non-finite number.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "curve.hpp"
#include "envelope.hpp"
#include "optics.hpp"
#include "scene.hpp"
#include "tracer.hpp"

namespace caustics
{

inline constexpr char kAtInfinity[] = "at_infinity";

inline Json point_json(Vec2 p) { return Json::array({p.x, p.y}); }

inline Json triple_json(double t, Vec2 p) { return Json::array({t, p.x, p.y}); }

inline Json curve_source_json(ParametricCurve const& curve)
{
    CurveSource const& src = curve.source();
    Json out;
    if (!src.catalog.empty())
    {
        out["catalog"] = src.catalog;
        out["params"] = src.params;
    }
    else
    {
        out["expr"] = {{"x", src.expr_x}, {"y", src.expr_y}};
    }
    out["domain"] = {curve.domain().lo, curve.domain().hi};
    out["closed"] = curve.closed();
    return out;
}

struct SceneGeometry
{
    std::vector<CurveSample> samples;
    std::vector<CausticTrace> traces; // one per radiant
    std::vector<std::vector<Cusp>> cusps;
};

inline SceneGeometry trace_scene(Scene const& scene)
{
    SceneGeometry g;
    g.samples = sample_curve(scene.curve, scene.grid);
    for (auto const& r : scene.radiants)
    {
        g.traces.push_back(trace_caustic(scene.curve, r, scene.grid, scene.tolerances));
        g.cusps.push_back(annotate_cusps(scene.curve, r, g.traces.back(), scene.tolerances));
    }
    return g;
}

namespace detail
{

inline Json beta_layer(Scene const& scene, SceneGeometry const& geo)
{
    Json layer = Json::array();
    // Radiants at infinity share one beta; a finite radiant has its own.
    bool infinity_done = false;
    for (std::size_t k = 0; k < scene.radiants.size(); ++k)
    {
        Radiant const& r = scene.radiants[k];
        if (!r.is_finite() && infinity_done)
            continue;
        Json pts = Json::array();
        for (auto const& smp : geo.samples)
        {
            if (smp.flat)
                continue;
            try
            {
                BetaSample const b = r.is_finite() ? second_envelope(smp, r, scene.tolerances)
                                                   : beta_infinity(smp, scene.tolerances);
                pts.push_back(triple_json(smp.t, b.beta));
            }
            catch (DegenerateError const&)
            {
            }
        }
        layer.push_back({{"radiant", k}, {"points", pts}});
        if (!r.is_finite())
            infinity_done = true;
    }
    return layer;
}

inline Json caustic_layer(SceneGeometry const& geo)
{
    Json layer = Json::array();
    for (std::size_t k = 0; k < geo.traces.size(); ++k)
        for (auto const& comp : geo.traces[k].components)
        {
            Json pts = Json::array();
            for (auto const& smp : comp.samples)
                pts.push_back(triple_json(smp.t, *smp.E));
            layer.push_back({{"radiant", k}, {"component", comp.id}, {"closed", comp.closed}, {"points", pts}});
        }
    return layer;
}

inline Json focal_circle_layer(Scene const& scene, SceneGeometry const& geo)
{
    Json layer = Json::array();
    for (std::size_t k = 0; k < scene.radiants.size(); ++k)
    {
        Json circles = Json::array();
        for (auto const& smp : geo.samples)
        {
            if (smp.flat)
                continue;
            try
            {
                FocalCircle const fc = focal_circle(smp, scene.radiants[k], scene.tolerances);
                if (fc.at_infinity())
                    circles.push_back({{"t", smp.t}, {"contact", point_json(smp.pos)}, {"center", kAtInfinity}, {"R", kAtInfinity}});
                else
                    circles.push_back({{"t", smp.t}, {"contact", point_json(smp.pos)}, {"center", point_json(*fc.center)}, {"R", *fc.R}});
            }
            catch (DegenerateError const&)
            {
            }
        }
        layer.push_back({{"radiant", k}, {"circles", circles}});
    }
    return layer;
}

inline Json discriminant_layer(Scene const& scene, SceneGeometry const& geo)
{
    Json layer = Json::array();
    for (auto const& smp : geo.samples)
    {
        if (smp.flat)
            continue;
        Circle const c = discriminant_circle(smp, scene.tolerances);
        layer.push_back({{"t", smp.t}, {"center", point_json(c.center)}, {"radius", c.radius}});
    }
    return layer;
}

inline Json rolling_layer(Scene const& scene)
{
    Json layer = Json::array();
    for (auto const& f : rolling_frames(scene.curve, scene.radiants, scene.grid, scene.tolerances))
    {
        Json traces = Json::array();
        for (auto const& tp : f.traces)
            traces.push_back({{"radiant", tp.radiant_id}, {"point", point_json(tp.point)}, {"omega", tp.omega}});
        layer.push_back({{"t", f.t},
                         {"s", f.s},
                         {"center", point_json(f.center)},
                         {"R", f.R},
                         {"omega", f.omega},
                         {"contact", point_json(f.contact)},
                         {"beta_arclen", f.beta_arclen},
                         {"traces", traces}});
    }
    return layer;
}

} // namespace detail

/*!
 * Compute every requested layer of a scene. Cusps and asymptotes carry
 * the radiant index and the component ids they belong to.
 */
inline Json compute_payload(Scene const& scene)
{
    SceneGeometry const geo = trace_scene(scene);
    Json radiants = Json::array();
    for (auto const& r : scene.radiants)
        radiants.push_back(radiant_to_json(r));

    Json layers = Json::object();
    if (scene.wants("alpha"))
    {
        Json pts = Json::array();
        for (auto const& smp : geo.samples)
            pts.push_back(triple_json(smp.t, smp.pos));
        layers["alpha"] = pts;
    }
    if (scene.wants("beta"))
        layers["beta"] = detail::beta_layer(scene, geo);
    if (scene.wants("caustic"))
        layers["caustic"] = detail::caustic_layer(geo);
    if (scene.wants("focal_circles"))
        layers["focal_circles"] = detail::focal_circle_layer(scene, geo);
    if (scene.wants("discriminant_circles"))
        layers["discriminant_circles"] = detail::discriminant_layer(scene, geo);
    if (scene.wants("rolling_frames"))
        layers["rolling_frames"] = detail::rolling_layer(scene);
    if (scene.wants("cusps"))
    {
        Json list = Json::array();
        for (std::size_t k = 0; k < geo.cusps.size(); ++k)
            for (auto const& c : geo.cusps[k])
                list.push_back({{"radiant", k}, {"component", c.component}, {"t", c.t}, {"point", point_json(c.point)}});
        layers["cusps"] = list;
    }
    if (scene.wants("asymptotes"))
    {
        Json list = Json::array();
        for (std::size_t k = 0; k < geo.traces.size(); ++k)
            for (auto const& a : geo.traces[k].asymptotes)
                list.push_back({{"radiant", k},
                                {"t", a.t},
                                {"point", point_json(a.line.point)},
                                {"direction", point_json(a.line.direction)},
                                {"before", a.before},
                                {"after", a.after}});
        layers["asymptotes"] = list;
    }

    std::size_t components = 0;
    for (auto const& tr : geo.traces)
        components += tr.components.size();

    return {{"curve", curve_source_json(scene.curve)},
            {"radiants", radiants},
            {"grid", {{"t_min", scene.grid.t_min}, {"t_max", scene.grid.t_max}, {"n", scene.grid.n}}},
            {"component_count", components},
            {"layers", layers}};
}

} // namespace caustics
