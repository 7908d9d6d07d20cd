#pragma once

// Scene documents: a JSON object naming a mirror curve, radiants, a
// sampling grid, optional tolerance overrides and the requested output
// layers. Angles are in degrees. See docs/scene-format.md.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "curve.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "optics.hpp"

namespace caustics
{

using Json = nlohmann::json;

inline std::vector<std::string> const& layer_names()
{
    static std::vector<std::string> const names{"alpha",         "beta",           "caustic",
                                                "focal_circles", "discriminant_circles",
                                                "rolling_frames", "cusps",         "asymptotes"};
    return names;
}

inline constexpr std::size_t kMinGridPoints = 16;
inline constexpr std::size_t kDefaultGridPoints = 512;

struct Scene
{
    ParametricCurve curve;
    std::vector<Radiant> radiants;
    SampleGrid grid;
    SampleGrid requested_grid; // before refinement for unwrapping
    Tolerances tolerances;
    std::vector<std::string> outputs;
    Json document;

    bool wants(std::string const& layer) const
    {
        return std::find(outputs.begin(), outputs.end(), layer) != outputs.end();
    }
};

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }
inline double radians_to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

namespace detail
{

inline void require_keys(Json const& obj, std::set<std::string> const& allowed, std::string const& where)
{
    if (!obj.is_object())
        throw SceneError(where + " must be an object");
    for (auto const& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw SceneError("unknown key '" + key + "' in " + where);
}

inline double number_at(Json const& v, std::string const& where)
{
    if (!v.is_number())
        throw SceneError(where + " must be a number");
    double const x = v.get<double>();
    if (!std::isfinite(x))
        throw SceneError(where + " must be finite");
    return x;
}

// Numbers, or constant expressions such as "2*pi".
inline double constant_at(Json const& v, std::string const& where)
{
    if (v.is_string())
    {
        try
        {
            ExpressionTree const e = parse_expression(v.get<std::string>());
            if (e.depends_on_t())
                throw SceneError(where + " must not depend on t");
            return e(0.0);
        }
        catch (ParseError const& err)
        {
            throw SceneError(where + ": " + err.what());
        }
    }
    return number_at(v, where);
}

inline ParametricCurve load_curve(Json const& c)
{
    if (!c.is_object())
        throw SceneError("'curve' must be an object");
    if (c.contains("catalog"))
    {
        require_keys(c, {"catalog", "params"}, "'curve'");
        if (!c["catalog"].is_string())
            throw SceneError("'curve.catalog' must be a string");
        std::map<std::string, double> params;
        if (c.contains("params"))
        {
            if (!c["params"].is_object())
                throw SceneError("'curve.params' must be an object");
            for (auto const& [key, value] : c["params"].items())
                params[key] = constant_at(value, "'curve.params." + key + "'");
        }
        return make_catalog_curve(c["catalog"].get<std::string>(), params);
    }
    if (c.contains("expr"))
    {
        require_keys(c, {"expr", "domain", "closed"}, "'curve'");
        Json const& e = c["expr"];
        require_keys(e, {"x", "y"}, "'curve.expr'");
        if (!e.contains("x") || !e.contains("y") || !e["x"].is_string() || !e["y"].is_string())
            throw SceneError("'curve.expr' needs string fields 'x' and 'y'");
        if (!c.contains("domain") || !c["domain"].is_array() || c["domain"].size() != 2)
            throw SceneError("'curve.domain' must be a list [t_min, t_max]");
        Interval const dom{constant_at(c["domain"][0], "'curve.domain[0]'"),
                           constant_at(c["domain"][1], "'curve.domain[1]'")};
        bool closed = false;
        if (c.contains("closed"))
        {
            if (!c["closed"].is_boolean())
                throw SceneError("'curve.closed' must be a boolean");
            closed = c["closed"].get<bool>();
        }
        try
        {
            return make_expression_curve(e["x"].get<std::string>(), e["y"].get<std::string>(), dom, closed);
        }
        catch (ParseError const& err)
        {
            throw SceneError(std::string("curve expression: ") + err.what());
        }
        catch (EvalError const& err)
        {
            throw SceneError(std::string("curve expression: ") + err.what());
        }
        catch (DomainError const& err)
        {
            throw SceneError(err.what());
        }
        catch (DegenerateError const& err)
        {
            throw SceneError(err.what());
        }
    }
    throw SceneError("'curve' needs either 'catalog' or 'expr'");
}

inline Radiant load_radiant(Json const& r, std::size_t index)
{
    std::string const where = "'radiants[" + std::to_string(index) + "]'";
    require_keys(r, {"at_infinity", "finite"}, where);
    if (r.size() != 1)
        throw SceneError(where + " needs exactly one of 'at_infinity' or 'finite'");
    if (r.contains("at_infinity"))
        return Radiant::at_infinity(degrees_to_radians(number_at(r["at_infinity"], where + ".at_infinity")));
    Json const& p = r["finite"];
    if (!p.is_array() || p.size() != 2)
        throw SceneError(where + ".finite must be a list [x, y]");
    return Radiant::finite({number_at(p[0], where + ".finite[0]"), number_at(p[1], where + ".finite[1]")});
}

} // namespace detail

inline Json radiant_to_json(Radiant const& r)
{
    if (r.is_finite())
        return {{"finite", {r.point().x, r.point().y}}};
    return {{"at_infinity", radians_to_degrees(r.theta_src())}};
}

/*!
 * Validate a scene document. The grid is refined (n doubled) until every
 * step turns the tangent by less than pi/2, and every grid point must be a
 * regular point of the curve.
 */
inline Scene load_scene(Json const& doc)
{
    detail::require_keys(doc, {"curve", "radiants", "grid", "tolerances", "outputs"}, "scene");
    if (!doc.contains("curve"))
        throw SceneError("scene needs a 'curve'");
    ParametricCurve curve = detail::load_curve(doc["curve"]);

    if (!doc.contains("radiants") || !doc["radiants"].is_array())
        throw SceneError("scene needs a 'radiants' list");
    std::vector<Radiant> radiants;
    for (std::size_t i = 0; i < doc["radiants"].size(); ++i)
        radiants.push_back(detail::load_radiant(doc["radiants"][i], i));
    if (radiants.empty())
        throw SceneError("empty radiant list");

    SampleGrid grid = full_grid(curve, kDefaultGridPoints);
    if (doc.contains("grid"))
    {
        Json const& g = doc["grid"];
        detail::require_keys(g, {"t_min", "t_max", "n"}, "'grid'");
        if (g.contains("t_min"))
            grid.t_min = detail::constant_at(g["t_min"], "'grid.t_min'");
        if (g.contains("t_max"))
            grid.t_max = detail::constant_at(g["t_max"], "'grid.t_max'");
        if (g.contains("n"))
        {
            if (!g["n"].is_number_integer() || g["n"].get<long long>() < 0)
                throw SceneError("'grid.n' must be a non-negative integer");
            grid.n = g["n"].get<std::size_t>();
        }
    }
    if (grid.n < kMinGridPoints)
        throw SceneError("grid too coarse: n must be at least " + std::to_string(kMinGridPoints));
    if (!(grid.t_max > grid.t_min))
        throw SceneError("grid requires t_min < t_max");
    Interval const dom = curve.domain();
    if (!curve.closed() && (grid.t_min < dom.lo || grid.t_max > dom.hi))
        throw SceneError("grid extends outside the curve domain");

    Tolerances tol;
    if (doc.contains("tolerances"))
    {
        Json const& t = doc["tolerances"];
        detail::require_keys(t, {"kappa_floor", "u_floor"}, "'tolerances'");
        if (t.contains("kappa_floor"))
            tol.kappa_floor = detail::number_at(t["kappa_floor"], "'tolerances.kappa_floor'");
        if (t.contains("u_floor"))
            tol.u_floor = detail::number_at(t["u_floor"], "'tolerances.u_floor'");
        if (!(tol.kappa_floor > 0 && tol.u_floor > 0))
            throw SceneError("tolerances must be positive");
    }

    std::vector<std::string> outputs{"alpha", "beta", "caustic", "cusps", "asymptotes"};
    if (doc.contains("outputs"))
    {
        if (!doc["outputs"].is_array())
            throw SceneError("'outputs' must be a list of layer names");
        outputs.clear();
        for (auto const& v : doc["outputs"])
        {
            if (!v.is_string())
                throw SceneError("'outputs' must be a list of layer names");
            std::string const name = v.get<std::string>();
            auto const& known = layer_names();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw SceneError("unknown output layer '" + name + "'");
            if (std::find(outputs.begin(), outputs.end(), name) == outputs.end())
                outputs.push_back(name);
        }
    }

    SampleGrid const requested = grid;
    try
    {
        for (double t : grid_parameters(curve, grid))
            detail::frenet_at(curve, t, 0.0);
        grid = refine_for_unwrapping(curve, grid);
    }
    catch (DegenerateError const& err)
    {
        throw SceneError(std::string("irregular curve: ") + err.what());
    }
    catch (EvalError const& err)
    {
        throw SceneError(std::string("curve cannot be evaluated on the grid: ") + err.what());
    }

    return Scene{std::move(curve), std::move(radiants), grid, requested, tol, std::move(outputs), doc};
}

inline Scene load_scene_text(std::string const& text)
{
    Json doc;
    try
    {
        doc = Json::parse(text);
    }
    catch (Json::parse_error const& err)
    {
        throw SceneError(std::string("scene document is not valid JSON: ") + err.what());
    }
    return load_scene(doc);
}

// Catalog descriptors as served to clients.
inline Json catalog_json()
{
    Json list = Json::array();
    for (auto const& d : catalog_descriptors())
    {
        Json params = Json::object();
        for (auto const& [k, v] : d.defaults)
            params[k] = v;
        list.push_back({{"name", d.name},
                        {"x", d.x_formula},
                        {"y", d.y_formula},
                        {"params", params},
                        {"domain", {d.domain.lo, d.domain.hi}},
                        {"closed", d.closed}});
    }
    return list;
}

} // namespace caustics
