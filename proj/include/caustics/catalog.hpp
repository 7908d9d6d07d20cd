#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "expression.hpp"

namespace caustics
{

struct CatalogDescriptor
{
    std::string name;
    std::string x_formula;
    std::string y_formula;
    std::map<std::string, double> defaults;
    Interval domain;
    bool closed;
};

inline std::vector<CatalogDescriptor> const& catalog_descriptors()
{
    static std::vector<CatalogDescriptor> const list{
        {"circle", "rho*cos(t)", "rho*sin(t)", {{"rho", 1.0}}, {0.0, 2 * std::numbers::pi}, true},
        {"ellipse", "a*cos(t)", "b*sin(t)", {{"a", 2.0}, {"b", 1.0}}, {0.0, 2 * std::numbers::pi}, true},
        {"parabola", "t", "b*t^2", {{"b", 1.0}}, {-3.0, 3.0}, false},
        {"deltoid", "2*cos(t) + cos(2*t)", "2*sin(t) - sin(2*t)", {}, {0.0, 2 * std::numbers::pi}, true},
        {"involute", "cos(t) + t*sin(t)", "sin(t) - t*cos(t)", {}, {0.5, 4 * std::numbers::pi}, false},
    };
    return list;
}

inline CatalogDescriptor const& catalog_descriptor(std::string_view name)
{
    for (auto const& d : catalog_descriptors())
        if (d.name == name)
            return d;
    throw SceneError("unknown catalog curve '" + std::string(name) + "'");
}

/*!
 * Build a catalog curve with analytic derivatives.
 *
 * Parameters not given take their defaults. Open curves additionally
 * accept "t_min" and "t_max" to override the domain.
 */
inline ParametricCurve make_catalog_curve(std::string_view name, std::map<std::string, double> params = {})
{
    CatalogDescriptor const& desc = catalog_descriptor(name);
    Interval domain = desc.domain;
    std::map<std::string, double> resolved = desc.defaults;
    for (auto const& [key, value] : params)
    {
        if (!desc.closed && (key == "t_min" || key == "t_max"))
        {
            (key == "t_min" ? domain.lo : domain.hi) = value;
            continue;
        }
        if (!resolved.contains(key))
            throw SceneError("catalog curve '" + desc.name + "' has no parameter '" + key + "'");
        resolved[key] = value;
    }
    CurveSource source{desc.name, resolved, desc.x_formula, desc.y_formula};
    if (!desc.closed)
    {
        source.params["t_min"] = domain.lo;
        source.params["t_max"] = domain.hi;
    }

    using std::cos;
    using std::sin;
    if (desc.name == "circle")
    {
        double const r = resolved["rho"];
        if (!(r > 0))
            throw SceneError("circle radius must be positive");
        return ParametricCurve(
            domain, true, [r](double t) { return Vec2{r * cos(t), r * sin(t)}; },
            {[r](double t) { return Vec2{-r * sin(t), r * cos(t)}; },
             [r](double t) { return Vec2{-r * cos(t), -r * sin(t)}; },
             [r](double t) { return Vec2{r * sin(t), -r * cos(t)}; }},
            source);
    }
    if (desc.name == "ellipse")
    {
        double const a = resolved["a"];
        double const b = resolved["b"];
        if (!(a > 0 && b > 0))
            throw SceneError("ellipse semi-axes must be positive");
        return ParametricCurve(
            domain, true, [a, b](double t) { return Vec2{a * cos(t), b * sin(t)}; },
            {[a, b](double t) { return Vec2{-a * sin(t), b * cos(t)}; },
             [a, b](double t) { return Vec2{-a * cos(t), -b * sin(t)}; },
             [a, b](double t) { return Vec2{a * sin(t), -b * cos(t)}; }},
            source);
    }
    if (desc.name == "parabola")
    {
        double const b = resolved["b"];
        if (b == 0)
            throw SceneError("parabola coefficient must be non-zero");
        return ParametricCurve(
            domain, false, [b](double t) { return Vec2{t, b * t * t}; },
            {[b](double t) { return Vec2{1.0, 2 * b * t}; },
             [b](double) { return Vec2{0.0, 2 * b}; },
             [](double) { return Vec2{0.0, 0.0}; }},
            source);
    }
    if (desc.name == "deltoid")
    {
        return ParametricCurve(
            domain, true, [](double t) { return Vec2{2 * cos(t) + cos(2 * t), 2 * sin(t) - sin(2 * t)}; },
            {[](double t) { return Vec2{-2 * sin(t) - 2 * sin(2 * t), 2 * cos(t) - 2 * cos(2 * t)}; },
             [](double t) { return Vec2{-2 * cos(t) - 4 * cos(2 * t), -2 * sin(t) + 4 * sin(2 * t)}; },
             [](double t) { return Vec2{2 * sin(t) + 8 * sin(2 * t), -2 * cos(t) + 8 * cos(2 * t)}; }},
            source);
    }
    // involute of the unit circle; regular for t > 0
    if (!(domain.lo > 0))
        throw SceneError("involute domain must stay in t > 0");
    return ParametricCurve(
        domain, false, [](double t) { return Vec2{cos(t) + t * sin(t), sin(t) - t * cos(t)}; },
        {[](double t) { return Vec2{t * cos(t), t * sin(t)}; },
         [](double t) { return Vec2{cos(t) - t * sin(t), sin(t) + t * cos(t)}; },
         [](double t) { return Vec2{-2 * sin(t) - t * cos(t), 2 * cos(t) - t * sin(t)}; }},
        source);
}

// Curve from coordinate expressions; derivatives by symbolic differentiation.
inline ParametricCurve make_expression_curve(std::string_view x_text,
                                             std::string_view y_text,
                                             Interval domain,
                                             bool closed)
{
    ExpressionTree const x = parse_expression(x_text);
    ExpressionTree const y = parse_expression(y_text);
    std::array<ExpressionTree, 3> dx{x.derivative(), {}, {}};
    std::array<ExpressionTree, 3> dy{y.derivative(), {}, {}};
    for (int k = 1; k < 3; ++k)
    {
        dx[k] = dx[k - 1].derivative();
        dy[k] = dy[k - 1].derivative();
    }
    std::array<PointMap, 3> maps;
    for (int k = 0; k < 3; ++k)
        maps[k] = [fx = dx[k], fy = dy[k]](double t) { return Vec2{fx(t), fy(t)}; };
    CurveSource source{"", {}, x.to_string(), y.to_string()};
    return ParametricCurve(
        domain, closed, [x, y](double t) { return Vec2{x(t), y(t)}; }, std::move(maps), std::move(source));
}

} // namespace caustics
