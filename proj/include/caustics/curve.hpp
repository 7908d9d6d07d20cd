#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "error.hpp"
#include "vec2.hpp"

namespace caustics
{

// Curvature magnitude below which curvature-dependent quantities are undefined.
inline constexpr double kKappaFloor = 1e-8;

struct Interval
{
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
};

using PointMap = std::function<Vec2(double)>;

// Where a curve came from, kept so scenes and payloads can describe it.
struct CurveSource
{
    std::string catalog; // empty for expression curves
    std::map<std::string, double> params;
    std::string expr_x;
    std::string expr_y;
};

/*!
 * Regular plane curve t -> (x(t), y(t)) on a closed parameter interval.
 *
 * Derivative maps of orders 1-3 are optional; missing ones are replaced by
 * central finite differences of the position map. Closed curves are treated
 * as periodic with period equal to the domain width.
 */
class ParametricCurve
{
  public:
    ParametricCurve(Interval domain,
                    bool closed,
                    PointMap position,
                    std::array<PointMap, 3> derivatives = {},
                    CurveSource source = {})
        : domain_(domain)
        , closed_(closed)
        , position_(std::move(position))
        , derivatives_(std::move(derivatives))
        , source_(std::move(source))
    {
        if (!(domain_.hi > domain_.lo))
            throw DomainError("curve domain must satisfy t_min < t_max");
        if (!position_)
            throw DomainError("curve needs a position map");
        if (closed_ && distance(position_(domain_.lo), position_(domain_.hi)) >= 1e-9)
            throw DegenerateError("curve marked closed but endpoints differ");
    }

    Interval const& domain() const { return domain_; }
    bool closed() const { return closed_; }
    double period() const { return domain_.width(); }
    CurveSource const& source() const { return source_; }

    bool has_analytic(int order) const
    {
        return order >= 1 && order <= 3 && static_cast<bool>(derivatives_[order - 1]);
    }

    // Raw maps; no domain handling.
    Vec2 position_raw(double t) const { return position_(t); }
    Vec2 derivative_raw(int order, double t) const { return derivatives_[order - 1](t); }

    // Maps t into the domain: modulo the period for closed curves, error
    // for open curves (with a rounding allowance at the ends).
    double reduce(double t) const
    {
        if (closed_)
        {
            if (t >= domain_.lo && t <= domain_.hi)
                return t;
            double r = std::fmod(t - domain_.lo, period());
            if (r < 0)
                r += period();
            return domain_.lo + r;
        }
        double const slack = 1e-12 * std::max({1.0, std::abs(domain_.lo), std::abs(domain_.hi)});
        if (t < domain_.lo - slack || t > domain_.hi + slack)
            throw DomainError("parameter " + std::to_string(t) + " outside curve domain");
        return std::clamp(t, domain_.lo, domain_.hi);
    }

  private:
    Interval domain_;
    bool closed_;
    PointMap position_;
    std::array<PointMap, 3> derivatives_;
    CurveSource source_;
};

namespace detail
{

// Finite-difference steps per derivative order, scaled by max(1, |t|).
inline constexpr std::array<double, 3> kFdStep{1e-3, 2e-3, 2.5e-3};

inline Vec2 fd_derivative(PointMap const& f, double t, int order)
{
    double const h = kFdStep[order - 1] * std::max(1.0, std::abs(t));
    switch (order)
    {
    case 1:
        return (-1.0 * f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12 * h);
    case 2:
        return (-1.0 * f(t + 2 * h) + 16.0 * f(t + h) - 30.0 * f(t) + 16.0 * f(t - h) - f(t - 2 * h))
               / (12 * h * h);
    default:
        return (-1.0 * f(t + 3 * h) + 8.0 * f(t + 2 * h) - 13.0 * f(t + h) + 13.0 * f(t - h)
                - 8.0 * f(t - 2 * h) + f(t - 3 * h))
               / (8 * h * h * h);
    }
}

inline Vec2 derivative_at(ParametricCurve const& c, int order, double t)
{
    if (c.has_analytic(order))
        return c.derivative_raw(order, t);
    return fd_derivative([&c](double x) { return c.position_raw(x); }, t, order);
}

inline double speed_at(ParametricCurve const& c, double t)
{
    return norm(derivative_at(c, 1, t));
}

} // namespace detail

/*!
 * Position and derivatives (with respect to t) up to \p order.
 *
 * Element k of the result is the k-th derivative. Analytic maps are used
 * when present; otherwise 5-point (orders 1-2) or 7-point (order 3)
 * central differences. Stencils may reach slightly past the ends of an
 * open domain; the position map is assumed to extend smoothly.
 */
inline std::vector<Vec2> evaluate(ParametricCurve const& curve, double t, int order)
{
    if (order < 0 || order > 3)
        throw DomainError("derivative order must be in 0..3");
    t = curve.reduce(t);
    std::vector<Vec2> out;
    out.reserve(order + 1);
    out.push_back(curve.position_raw(t));
    for (int k = 1; k <= order; ++k)
        out.push_back(detail::derivative_at(curve, k, t));
    return out;
}

// Arc length between two parameters, adaptive Gauss-Kronrod on |alpha'|.
inline double arc_length(ParametricCurve const& curve, double t0, double t1)
{
    if (t0 > t1)
        throw DomainError("arc_length requires t0 <= t1");
    if (!curve.closed())
    {
        curve.reduce(t0);
        curve.reduce(t1);
    }
    if (t0 == t1)
        return 0.0;
    auto speed = [&curve](double t) { return detail::speed_at(curve, t); };
    double error = 0.0;
    double const value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        speed, t0, t1, 15, 1e-10, &error);
    return value;
}

inline double total_length(ParametricCurve const& curve)
{
    return arc_length(curve, curve.domain().lo, curve.domain().hi);
}

// Parameter at arc length s from t_min: safeguarded Newton, bisection fallback.
inline double t_at_arclength(ParametricCurve const& curve, double s)
{
    double const total = total_length(curve);
    double const slack = 1e-12 * std::max(1.0, total);
    if (s < -slack || s > total + slack)
        throw DomainError("arc length outside [0, total length]");
    s = std::clamp(s, 0.0, total);
    Interval const dom = curve.domain();
    if (s == 0.0)
        return dom.lo;
    if (s == total)
        return dom.hi;

    auto residual = [&](double t) { return arc_length(curve, dom.lo, t) - s; };
    double const guess = dom.lo + dom.width() * (s / total);

    boost::uintmax_t iterations = 100;
    double t = boost::math::tools::newton_raphson_iterate(
        [&](double x) { return std::make_pair(residual(x), detail::speed_at(curve, x)); },
        guess, dom.lo, dom.hi, std::numeric_limits<double>::digits - 4, iterations);

    if (!(std::abs(residual(t)) < 1e-10))
    {
        double lo = dom.lo;
        double hi = dom.hi;
        for (int i = 0; i < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::abs(hi); ++i)
        {
            double const mid = 0.5 * (lo + hi);
            (residual(mid) < 0 ? lo : hi) = mid;
        }
        t = 0.5 * (lo + hi);
    }
    return t;
}

/*!
 * Frenet data of a curve at one parameter.
 *
 * Signed curvature satisfies T' = kappa * N_left where N_left is T rotated
 * by +pi/2. Curvature-dependent fields are absent for flat samples.
 */
struct CurveSample
{
    double t = 0.0;
    double s = 0.0;
    Vec2 pos;
    Vec2 T;
    Vec2 N_left;
    double kappa = 0.0;
    double kappa_s = 0.0;
    double gamma = 0.0;
    double speed = 0.0;
    bool flat = false;
    std::optional<double> aberrancy;
};

namespace detail
{

inline CurveSample frenet_at(ParametricCurve const& curve, double t, double s)
{
    auto const d = evaluate(curve, t, 3);
    double const sp = norm(d[1]);
    double const scale = std::max(1.0, norm(d[0]));
    if (!(sp > 1e-14 * scale))
        throw DegenerateError("curve is not regular at t = " + std::to_string(t));

    CurveSample out;
    out.t = t;
    out.s = s;
    out.pos = d[0];
    out.speed = sp;
    out.T = d[1] / sp;
    out.N_left = perp(out.T);
    out.gamma = angle_of(out.T);

    double const c12 = cross(d[1], d[2]);
    double const c13 = cross(d[1], d[3]);
    double const sp2 = sp * sp;
    double const sp3 = sp2 * sp;
    out.kappa = c12 / sp3;
    double const dkappa_dt = c13 / sp3 - 3.0 * c12 * dot(d[1], d[2]) / (sp3 * sp2);
    out.kappa_s = dkappa_dt / sp;
    out.flat = std::abs(out.kappa) < kKappaFloor;
    if (!out.flat)
        out.aberrancy = -out.kappa_s / (3.0 * out.kappa * out.kappa);
    return out;
}

} // namespace detail

inline CurveSample frenet_sample(ParametricCurve const& curve, double t)
{
    double const tr = curve.reduce(t);
    return detail::frenet_at(curve, tr, arc_length(curve, curve.domain().lo, tr));
}

/*!
 * Uniform sampling grid over [t_min, t_max].
 *
 * When the grid spans the full period of a closed curve it is periodic and
 * the n points sit at cell centres (no duplicated seam point, and catalog
 * singular points such as the deltoid cusps at multiples of 2pi/3 are
 * avoided for n divisible by 3). Otherwise both endpoints are included.
 */
struct SampleGrid
{
    double t_min = 0.0;
    double t_max = 1.0;
    std::size_t n = 256;
};

inline bool is_periodic(ParametricCurve const& curve, SampleGrid const& grid)
{
    double const tol = 1e-12 * std::max(1.0, curve.period());
    return curve.closed() && std::abs(grid.t_min - curve.domain().lo) <= tol
           && std::abs(grid.t_max - curve.domain().hi) <= tol;
}

inline SampleGrid full_grid(ParametricCurve const& curve, std::size_t n)
{
    return {curve.domain().lo, curve.domain().hi, n};
}

inline std::vector<double> grid_parameters(ParametricCurve const& curve, SampleGrid const& grid)
{
    if (grid.n < 2)
        throw DomainError("grid needs at least 2 points");
    if (!(grid.t_max > grid.t_min))
        throw DomainError("grid requires t_min < t_max");
    std::vector<double> ts(grid.n);
    double const w = grid.t_max - grid.t_min;
    if (is_periodic(curve, grid))
    {
        for (std::size_t i = 0; i < grid.n; ++i)
            ts[i] = grid.t_min + w * (static_cast<double>(i) + 0.5) / static_cast<double>(grid.n);
    }
    else
    {
        for (std::size_t i = 0; i < grid.n; ++i)
            ts[i] = grid.t_min + w * static_cast<double>(i) / static_cast<double>(grid.n - 1);
    }
    return ts;
}

namespace detail
{

inline double tangent_angle(ParametricCurve const& curve, double t)
{
    return angle_of(derivative_at(curve, 1, curve.reduce(t)));
}

// True when the tangent turn across [a, b] does not shrink under repeated
// bisection, i.e. the tangent genuinely reverses at a singular point (cusp)
// inside the interval. Refining the grid cannot help there.
inline bool is_tangent_discontinuity(ParametricCurve const& curve, double a, double b)
{
    double ga = tangent_angle(curve, a);
    double gb = tangent_angle(curve, b);
    for (int i = 0; i < 48; ++i)
    {
        double const m = 0.5 * (a + b);
        double const gm = tangent_angle(curve, m);
        double const left = std::abs(wrap_angle(gm - ga));
        double const right = std::abs(wrap_angle(gb - gm));
        if (left < std::numbers::pi / 2 && right < std::numbers::pi / 2)
            return false;
        if (left >= right)
        {
            b = m;
            gb = gm;
        }
        else
        {
            a = m;
            ga = gm;
        }
    }
    return true;
}

} // namespace detail

// True when every step of the grid turns the tangent by less than pi/2,
// ignoring reversals at singular points.
inline bool grid_resolves_tangent(ParametricCurve const& curve, SampleGrid const& grid)
{
    auto const ts = grid_parameters(curve, grid);
    bool const periodic = is_periodic(curve, grid);
    std::size_t const steps = periodic ? ts.size() : ts.size() - 1;
    double prev = detail::tangent_angle(curve, ts[0]);
    for (std::size_t i = 0; i < steps; ++i)
    {
        double const a = ts[i];
        double const b = (i + 1 < ts.size()) ? ts[i + 1] : ts[0] + curve.period();
        double const next = detail::tangent_angle(curve, b);
        if (std::abs(wrap_angle(next - prev)) >= std::numbers::pi / 2
            && !detail::is_tangent_discontinuity(curve, a, b))
            return false;
        prev = next;
    }
    return true;
}

// Doubles grid.n until grid_resolves_tangent holds. Throws past 2^20 points.
inline SampleGrid refine_for_unwrapping(ParametricCurve const& curve, SampleGrid grid)
{
    while (!grid_resolves_tangent(curve, grid))
    {
        if (grid.n > (std::size_t{1} << 20))
            throw DegenerateError("cannot resolve tangent turning on the sampling grid");
        grid.n *= 2;
    }
    return grid;
}

/*!
 * Frenet samples over a grid with cumulative arc length and the tangent
 * angle gamma unwrapped along the grid (tangent reversals at cusps
 * contribute their wrapped jump).
 */
inline std::vector<CurveSample> sample_curve(ParametricCurve const& curve, SampleGrid const& grid)
{
    auto const ts = grid_parameters(curve, grid);
    std::vector<CurveSample> out;
    out.reserve(ts.size());
    double s = arc_length(curve, curve.domain().lo, ts[0]);
    double gamma = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
    {
        if (i > 0)
            s += arc_length(curve, ts[i - 1], ts[i]);
        CurveSample smp = detail::frenet_at(curve, ts[i], s);
        gamma = (i == 0) ? smp.gamma : gamma + wrap_angle(smp.gamma - gamma);
        smp.gamma = gamma;
        out.push_back(smp);
    }
    return out;
}

} // namespace caustics
