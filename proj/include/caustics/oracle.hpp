#pragma once

// Independent references for the caustic machinery: the classical
// envelope-of-lines construction, closed-form curves, a finite-difference
// check of the chord rotation rate, and set distances.
//
// Nothing here goes through focal circles or the mirror equation.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "numerics.hpp"
#include "optics.hpp"
#include "vec2.hpp"

namespace caustics
{

struct OracleLine
{
    Vec2 point;
    Vec2 direction;
};

struct LineFamily
{
    std::vector<double> params;
    std::function<OracleLine(double)> line;
};

inline std::optional<Vec2> intersect_lines(OracleLine const& a, OracleLine const& b)
{
    double const den = cross(a.direction, b.direction);
    if (std::abs(den) < 1e-14)
        return std::nullopt;
    double const ta = cross(b.point - a.point, b.direction) / den;
    return a.point + ta * a.direction;
}

/*!
 * Reflected rays off a curve, from the position and first derivative only:
 * the incoming direction is mirrored in the tangent line.
 */
inline LineFamily reflected_ray_family(ParametricCurve const& curve, Radiant const& radiant, std::vector<double> params)
{
    auto line = [&curve, radiant](double t) {
        Vec2 const p = curve.position_raw(t);
        Vec2 const tangent = unit(detail::derivative_at(curve, 1, t));
        Vec2 const incoming = radiant.is_finite() ? unit(p - radiant.point()) : -polar(radiant.theta_src());
        Vec2 const reflected = 2.0 * dot(incoming, tangent) * tangent - incoming;
        return OracleLine{p, reflected};
    };
    return {std::move(params), line};
}

inline LineFamily tangent_line_family(ParametricCurve const& curve, std::vector<double> params)
{
    auto line = [&curve](double t) {
        return OracleLine{curve.position_raw(t), unit(detail::derivative_at(curve, 1, t))};
    };
    return {std::move(params), line};
}

struct LineEnvelope
{
    std::vector<double> params;
    std::vector<std::optional<Vec2>> points; // empty where neighbouring lines are parallel
    std::size_t skipped = 0;
};

/*!
 * Envelope of a line family as the limit of intersections of neighbouring
 * lines. X(h) intersects the lines at t - h and t + h (error O(h^2)); the
 * estimate is Richardson-extrapolated as (4 X(h/2) - X(h)) / 3. The step is
 * absolute in the family parameter.
 */
inline LineEnvelope envelope_of_lines(LineFamily const& family, double h = 1e-3)
{
    if (family.params.size() < 3)
        throw DomainError("envelope_of_lines needs at least 3 lines");
    LineEnvelope env;
    env.params = family.params;
    env.points.reserve(family.params.size());
    for (double t : family.params)
    {
        auto const x1 = intersect_lines(family.line(t - h), family.line(t + h));
        auto const x2 = intersect_lines(family.line(t - h / 2), family.line(t + h / 2));
        if (!x1 || !x2)
        {
            env.points.push_back(std::nullopt);
            ++env.skipped;
            continue;
        }
        env.points.push_back((4.0 * *x2 - *x1) / 3.0);
    }
    if (env.skipped == env.points.size())
        throw DegenerateError("no envelope: all neighbouring lines are parallel");
    return env;
}

struct CircleFamily
{
    std::vector<double> params;
    std::function<Circle(double)> circle;
};

inline std::optional<std::array<Vec2, 2>> intersect_circles(Circle const& a, Circle const& b)
{
    Vec2 const d = b.center - a.center;
    double const L = norm(d);
    if (!(L > 0))
        return std::nullopt;
    double const x = (L * L + a.radius * a.radius - b.radius * b.radius) / (2 * L);
    double const h2 = a.radius * a.radius - x * x;
    if (h2 < 0)
        return std::nullopt;
    Vec2 const e = d / L;
    Vec2 const base = a.center + x * e;
    double const h = std::sqrt(h2);
    return std::array<Vec2, 2>{base + h * perp(e), base - h * perp(e)};
}

/*!
 * Both envelope branches of a circle family, from intersections of
 * neighbouring circles with the same Richardson step as envelope_of_lines.
 * Empty where neighbouring circles are nested.
 */
inline std::vector<std::optional<std::array<Vec2, 2>>> envelope_of_circles(CircleFamily const& family,
                                                                           double h = 1e-3)
{
    std::vector<std::optional<std::array<Vec2, 2>>> out;
    out.reserve(family.params.size());
    for (double t : family.params)
    {
        auto const x1 = intersect_circles(family.circle(t - h), family.circle(t + h));
        auto const x2 = intersect_circles(family.circle(t - h / 2), family.circle(t + h / 2));
        if (!x1 || !x2)
        {
            out.push_back(std::nullopt);
            continue;
        }
        std::array<Vec2, 2> pts;
        for (int k = 0; k < 2; ++k)
        {
            Vec2 const fine = (*x2)[k];
            Vec2 const coarse = distance((*x1)[0], fine) <= distance((*x1)[1], fine) ? (*x1)[0] : (*x1)[1];
            pts[k] = (4.0 * fine - coarse) / 3.0;
        }
        out.push_back(pts);
    }
    return out;
}

/*!
 * Closed-form reference curves.
 *
 *   epicycloid   base, roll, phase  (b + r)(cos t, sin t) - r (cos((b + r) t / r + phase), sin(...))
 *   cardioid     r, phase           epicycloid with base = roll = r
 *   astroid      scale, rotation, cx, cy
 *                                   center + rot(rotation) (scale/4)(3 cos t + cos 3t, 3 sin t - sin 3t)
 *   deltoid      scale              (scale/3)(2 cos t + cos 2t, 2 sin t - sin 2t)
 *   tschirnhausen                   (1/2)(3t - 4t^3, 6t^2)
 *   circle       r, cx, cy
 */
inline Vec2 reference_eval(std::string const& kind, std::map<std::string, double> const& params, double t)
{
    auto get = [&](char const* key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    using std::cos;
    using std::sin;
    if (kind == "epicycloid" || kind == "cardioid")
    {
        double const b = kind == "cardioid" ? get("r", 1.0) : get("base", 1.0);
        double const r = kind == "cardioid" ? b : get("roll", 1.0);
        double const phase = get("phase", 0.0);
        if (!(r > 0))
            throw DomainError("epicycloid rolling radius must be positive");
        double const w = (b + r) * t / r + phase;
        return (b + r) * Vec2{cos(t), sin(t)} - r * Vec2{cos(w), sin(w)};
    }
    if (kind == "astroid")
    {
        double const scale = get("scale", 1.0);
        Vec2 const local = (scale / 4) * Vec2{3 * cos(t) + cos(3 * t), 3 * sin(t) - sin(3 * t)};
        return Vec2{get("cx", 0.0), get("cy", 0.0)} + rotate(local, get("rotation", 0.0));
    }
    if (kind == "deltoid")
    {
        double const scale = get("scale", 3.0);
        return (scale / 3) * Vec2{2 * cos(t) + cos(2 * t), 2 * sin(t) - sin(2 * t)};
    }
    if (kind == "tschirnhausen")
        return 0.5 * Vec2{3 * t - 4 * t * t * t, 6 * t * t};
    if (kind == "circle")
        return Vec2{get("cx", 0.0), get("cy", 0.0)} + get("r", 1.0) * Vec2{cos(t), sin(t)};
    throw DomainError("unknown reference curve '" + kind + "'");
}

// Implicit form of the Tschirnhausen cubic: 108 x^2 - y (4y - 9)^2.
inline double tschirnhausen_residual(Vec2 p)
{
    double const k = 4 * p.y - 9;
    return 108 * p.x * p.x - p.y * k * k;
}

struct RateCheck
{
    double measured = 0.0;
    double predicted = 0.0;
};

// A fixed point, or a moving point given as a map of the same parameter.
using RateTarget = std::variant<Vec2, PointMap>;

/*!
 * Rotation rate of the chord c = w - u with respect to arc length on u.
 * Measured: five-point difference of the unwrapped direction angle of c,
 * divided by the speed of u. Predicted: (c . N_left) / |c|^2.
 */
inline RateCheck chord_rate_check(ParametricCurve const& u, RateTarget const& w, double t)
{
    auto target = [&w](double x) {
        if (auto const* p = std::get_if<Vec2>(&w))
            return *p;
        return std::get<PointMap>(w)(x);
    };
    auto chord = [&](double x) { return target(x) - u.position_raw(x); };

    Vec2 const c = chord(t);
    double const d = norm(c);
    if (!(d > 1e-6))
        throw DegenerateError("degenerate separation between curve and target");

    Vec2 const d1 = detail::derivative_at(u, 1, t);
    double const speed = norm(d1);
    Vec2 const n_left = perp(d1 / speed);

    double const h = 1e-4 * std::max(1.0, std::abs(t));
    double const a0 = angle_of(c);
    auto angle = [&](double x) { return a0 + wrap_angle(angle_of(chord(x)) - a0); };
    return {central_difference(angle, t, h) / speed, dot(c, n_left) / (d * d)};
}

inline double hausdorff_distance(std::vector<Vec2> const& a, std::vector<Vec2> const& b)
{
    if (a.empty() || b.empty())
        throw DomainError("hausdorff_distance needs non-empty sets");
    auto directed = [](std::vector<Vec2> const& from, std::vector<Vec2> const& to) {
        double worst = 0.0;
        for (Vec2 const& p : from)
        {
            double best = std::numeric_limits<double>::infinity();
            for (Vec2 const& q : to)
            {
                double const dx = p.x - q.x;
                double const dy = p.y - q.y;
                best = std::min(best, dx * dx + dy * dy);
                if (best <= worst)
                    break;
            }
            worst = std::max(worst, best);
        }
        return std::sqrt(worst);
    };
    return std::max(directed(a, b), directed(b, a));
}

struct SampledCurve
{
    std::function<Vec2(double)> eval;
    std::vector<double> params; // increasing
    std::optional<double> period; // set for closed curves: refinement may wrap the seam
};

inline std::vector<Vec2> sample_points(SampledCurve const& c)
{
    std::vector<Vec2> pts;
    pts.reserve(c.params.size());
    for (double t : c.params)
        pts.push_back(c.eval(t));
    return pts;
}

/*!
 * Largest distance from a point set to a continuous curve. Each point is
 * compared with the curve samples; around every sample that could border
 * the true nearest point the distance is minimised over the continuous
 * curve.
 */
inline double directed_curve_distance(std::vector<Vec2> const& from, SampledCurve const& to)
{
    std::vector<Vec2> const to_pts = sample_points(to);
    std::size_t const m = to_pts.size();
    if (m < 3)
        throw DomainError("curve distance needs at least 3 curve samples");
    bool const wrap = to.period.has_value();
    // chord[k]: longest chord from sample k to a neighbour.
    std::vector<double> chord(m, 0.0);
    for (std::size_t k = 0; k + 1 < m; ++k)
    {
        double const c = distance(to_pts[k], to_pts[k + 1]);
        chord[k] = std::max(chord[k], c);
        chord[k + 1] = std::max(chord[k + 1], c);
    }
    if (wrap)
    {
        double const c = distance(to_pts[m - 1], to_pts[0]);
        chord[0] = std::max(chord[0], c);
        chord[m - 1] = std::max(chord[m - 1], c);
    }

    auto neighbour_param = [&](std::size_t k, int side) {
        if (side < 0)
            return k > 0 ? to.params[k - 1] : (wrap ? to.params[m - 1] - *to.period : to.params[0]);
        return k + 1 < m ? to.params[k + 1] : (wrap ? to.params[0] + *to.period : to.params[m - 1]);
    };

    double worst = 0.0;
    std::vector<double> dist(m);
    for (Vec2 const& p : from)
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < m; ++k)
        {
            dist[k] = distance(p, to_pts[k]);
            best = std::min(best, dist[k]);
        }
        double refined = best;
        for (std::size_t k = 0; k < m; ++k)
        {
            // A sample bordering the true nearest point is within one chord of it.
            if (dist[k] > best + chord[k])
                continue;
            // Each side separately: a cusp of the curve between samples gives
            // one local minimum per branch.
            auto dist_to = [&](double t) { return distance(p, to.eval(t)); };
            refined = std::min(refined, golden_section_minimize(dist_to, neighbour_param(k, -1), to.params[k], 1e-13).value);
            refined = std::min(refined, golden_section_minimize(dist_to, to.params[k], neighbour_param(k, +1), 1e-13).value);
        }
        worst = std::max(worst, refined);
    }
    return worst;
}

// Hausdorff distance between two continuous curves, free of the sampling-density floor of the point-set version.
inline double curve_hausdorff(SampledCurve const& a, SampledCurve const& b)
{
    return std::max(directed_curve_distance(sample_points(a), b), directed_curve_distance(sample_points(b), a));
}

} // namespace caustics
