#pragma once

// Caustic assembly over a sampling grid: components split where the focus
// escapes to infinity, asymptotes at the escapes, cusps, and the rolling
// focal-circle construction
//
//   E(s) = center(s) + R(s) (cos w, sin w),   w = 3pi/2 + 3 gamma - 2 sigma1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "curve.hpp"
#include "envelope.hpp"
#include "error.hpp"
#include "numerics.hpp"
#include "optics.hpp"
#include "vec2.hpp"

namespace caustics
{

struct Line
{
    Vec2 point;
    Vec2 direction; // unit
};

struct CausticSample
{
    double t = 0.0;
    double s = 0.0;
    std::optional<Vec2> E; // empty: at infinity
    int component_id = 0;
    bool is_cusp = false;
    std::optional<Line> asymptote;
};

struct CausticComponent
{
    int id = 0;
    bool closed = false;
    std::vector<CausticSample> samples;
};

struct Asymptote
{
    double t = 0.0;
    Line line;
    int before = 0;
    int after = 0;
};

struct CausticTrace
{
    std::vector<CausticComponent> components;
    std::vector<Asymptote> asymptotes;
};

struct Cusp
{
    int component = 0;
    double t = 0.0;
    Vec2 point;
    double contact_residual = 0.0;
    double beta_gap = 0.0;
};

/*!
 * Caustic point at an arbitrary parameter; empty at infinity or where the
 * sample is flat or the ray geometry degenerates.
 */
inline std::optional<Vec2> caustic_at(ParametricCurve const& curve, Radiant const& radiant, double t,
                                      Tolerances const& tol = {})
{
    CurveSample const smp = detail::frenet_at(curve, curve.reduce(t), 0.0);
    if (std::abs(smp.kappa) < tol.kappa_floor)
        return std::nullopt;
    try
    {
        return caustic_point(smp, radiant, tol);
    }
    catch (DegenerateError const&)
    {
        return std::nullopt;
    }
}

// Reflected ray at t as a line through the mirror point.
inline Line reflected_line(ParametricCurve const& curve, Radiant const& radiant, double t)
{
    CurveSample const smp = detail::frenet_at(curve, curve.reduce(t), 0.0);
    RayGeometry const g = ray_geometry(smp, radiant);
    return {smp.pos, g.reflected_dir};
}

namespace detail
{

enum class SampleStatus
{
    ok,
    infinite,
    invalid,
};

inline double u2_at(ParametricCurve const& curve, Radiant const& radiant, double t)
{
    CurveSample const smp = frenet_at(curve, curve.reduce(t), 0.0);
    return mirror_focus(ray_geometry(smp, radiant).u1, smp.kappa);
}

// Parameter where u2 crosses zero inside [a, b], given opposite signs at the ends.
inline double focus_escape(ParametricCurve const& curve, Radiant const& radiant, double a, double b)
{
    auto f = [&](double t) { return u2_at(curve, radiant, t); };
    double fa = f(a);
    double fb = f(b);
    if (fa == 0)
        return a;
    if (fb == 0)
        return b;
    if ((fa > 0) == (fb > 0))
        return 0.5 * (a + b);
    boost::uintmax_t iterations = 100;
    auto const r = boost::math::tools::toms748_solve(
        f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(50), iterations);
    return 0.5 * (r.first + r.second);
}

} // namespace detail

/*!
 * Caustic of one radiant sampled over a grid.
 *
 * A new component starts wherever u2 changes sign, falls below the floor,
 * or a sample is degenerate. Escapes to infinity get the reflected line at
 * the crossing parameter as asymptote, attached to the samples on both
 * sides. For a periodic grid the run across the seam is one component, and
 * a component with no break at all is closed.
 */
inline CausticTrace trace_caustic(ParametricCurve const& curve,
                                  Radiant const& radiant,
                                  SampleGrid const& grid,
                                  Tolerances const& tol = {})
{
    if (!grid_resolves_tangent(curve, grid))
        throw DomainError("grid too coarse: tangent turns by pi/2 or more between samples");

    std::vector<CurveSample> const samples = sample_curve(curve, grid);
    std::size_t const n = samples.size();
    bool const periodic = is_periodic(curve, grid);

    using detail::SampleStatus;
    std::vector<SampleStatus> status(n, SampleStatus::invalid);
    std::vector<double> u2(n, 0.0);
    std::vector<CausticSample> out(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        CurveSample const& smp = samples[i];
        out[i].t = smp.t;
        out[i].s = smp.s;
        if (std::abs(smp.kappa) < tol.kappa_floor)
            continue;
        try
        {
            RayGeometry const g = ray_geometry(smp, radiant);
            u2[i] = mirror_focus(g.u1, smp.kappa);
            if (std::abs(u2[i]) < tol.u_floor)
            {
                status[i] = SampleStatus::infinite;
                continue;
            }
            status[i] = SampleStatus::ok;
            out[i].E = smp.pos + (std::cos(g.phi) / u2[i]) * g.reflected_dir;
        }
        catch (DegenerateError const&)
        {
        }
    }

    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < n; ++i)
        if (status[i] == SampleStatus::ok)
            valid.push_back(i);

    CausticTrace trace;
    if (valid.empty())
        return trace;

    struct Break
    {
        bool escape = false;
        double t = 0.0;
    };

    // Break between valid samples i and j (j follows i, possibly across the seam).
    auto classify_gap = [&](std::size_t i, std::size_t j, bool seam) -> std::optional<Break> {
        double const ti = samples[i].t;
        double const tj = samples[j].t + (seam ? curve.period() : 0.0);
        bool const sign_change = (u2[i] > 0) != (u2[j] > 0);
        bool adjacent = seam ? (i == n - 1 && j == 0) : (j == i + 1);
        std::optional<std::size_t> infinite;
        for (std::size_t k = (i + 1) % n; k != j; k = (k + 1) % n)
            if (status[k] == SampleStatus::infinite
                && (!infinite || std::abs(u2[k]) < std::abs(u2[*infinite])))
                infinite = k;
        if (adjacent && !sign_change)
            return std::nullopt;
        if (sign_change)
            return Break{true, detail::focus_escape(curve, radiant, ti, tj)};
        if (infinite)
            return Break{true, samples[*infinite].t};
        return Break{false, 0.0};
    };

    // Gap k sits after valid[k]; for a periodic grid the last gap wraps.
    std::size_t const gaps = periodic ? valid.size() : valid.size() - 1;
    std::vector<std::optional<Break>> breaks(gaps);
    for (std::size_t k = 0; k < gaps; ++k)
    {
        bool const seam = (k + 1 == valid.size());
        breaks[k] = classify_gap(valid[k], valid[(k + 1) % valid.size()], seam);
    }

    std::size_t first_break = gaps;
    for (std::size_t k = 0; k < gaps; ++k)
        if (breaks[k])
        {
            first_break = k;
            break;
        }

    auto make_line = [&](double t) { return reflected_line(curve, radiant, t); };

    if (periodic && first_break == gaps)
    {
        CausticComponent c;
        c.closed = true;
        for (std::size_t i : valid)
            c.samples.push_back(out[i]);
        trace.components.push_back(std::move(c));
        return trace;
    }

    // Walk the valid samples starting right after a break (or at the start
    // for open grids) so each component is contiguous.
    std::size_t const start = periodic ? (first_break + 1) % valid.size() : 0;
    std::vector<std::optional<Break>> closing; // break that ends each component
    CausticComponent current;
    for (std::size_t step = 0; step < valid.size(); ++step)
    {
        std::size_t const k = (start + step) % valid.size();
        current.samples.push_back(out[valid[k]]);
        bool const last = step + 1 == valid.size();
        std::optional<Break> br = (k < gaps) ? breaks[k] : std::nullopt;
        if (br || last)
        {
            current.id = static_cast<int>(trace.components.size());
            trace.components.push_back(std::move(current));
            current = {};
            closing.push_back(br);
        }
    }

    std::size_t const m = trace.components.size();
    for (std::size_t c = 0; c < m; ++c)
    {
        for (auto& smp : trace.components[c].samples)
            smp.component_id = static_cast<int>(c);
        std::optional<Break> const& br = closing[c];
        if (!br || !br->escape)
            continue;
        if (!periodic && c + 1 == m)
            continue;
        std::size_t const next = (c + 1) % m;
        double const t_cross = curve.reduce(br->t);
        Line const line = make_line(t_cross);
        trace.components[c].samples.back().asymptote = line;
        trace.components[next].samples.front().asymptote = line;
        trace.asymptotes.push_back({t_cross, line, static_cast<int>(c), static_cast<int>(next)});
    }
    return trace;
}

// Total number of finite caustic samples across components.
inline std::size_t finite_sample_count(CausticTrace const& trace)
{
    std::size_t count = 0;
    for (auto const& c : trace.components)
        count += c.samples.size();
    return count;
}

/*!
 * Rotation direction of the caustic point around the focal circle center,
 * w = 3pi/2 + 3 gamma - 2 sigma1. Uses the sample's gamma as given, so an
 * unwrapped gamma gives an unwrapped w up to sigma1 jumps.
 */
inline double omega_angle(CurveSample const& sample, Radiant const& radiant)
{
    RayGeometry const g = ray_geometry(sample, radiant);
    return 1.5 * std::numbers::pi + 3.0 * sample.gamma - 2.0 * g.sigma1;
}

/*!
 * d omega / ds measured by a local five-point difference in t, each value
 * unwrapped against the value at t, divided by the speed. Near the ends
 * of an open curve the stencil becomes one-sided.
 */
inline double omega_rate(ParametricCurve const& curve, Radiant const& radiant, double t)
{
    double const h = 1e-4 * std::max(1.0, std::abs(t));
    auto raw = [&](double x) { return omega_angle(detail::frenet_at(curve, curve.reduce(x), 0.0), radiant); };
    double const w0 = raw(t);
    auto unwrapped = [&](double x) { return w0 + wrap_angle(raw(x) - w0); };
    double const speed = detail::speed_at(curve, curve.reduce(t));
    Interval const dom = curve.domain();
    if (curve.closed() || (t - 2 * h >= dom.lo && t + 2 * h <= dom.hi))
        return central_difference(unwrapped, t, h) / speed;
    double const sgn = (t - 2 * h < dom.lo) ? 1.0 : -1.0;
    double const hs = sgn * h;
    double const d = (-25 * w0 + 48 * unwrapped(t + hs) - 36 * unwrapped(t + 2 * hs) + 16 * unwrapped(t + 3 * hs)
                      - 3 * unwrapped(t + 4 * hs))
                     / (12 * hs);
    return d / speed;
}

// Predicted rate 3 kappa - 2 u1.
inline double omega_rate_predicted(CurveSample const& sample, Radiant const& radiant)
{
    return 3.0 * sample.kappa - 2.0 * ray_geometry(sample, radiant).u1;
}

/*!
 * Contact condition between the caustic point and the second envelope:
 * wrap(w - gamma - pi/2 + 2 delta), zero where E touches beta.
 */
inline double contact_residual(CurveSample const& sample, Radiant const& radiant, Tolerances const& tol = {})
{
    RadiusProfile const p = radius_profile(sample, radiant, tol);
    double const delta = chord_angle(p.R, p.R_s, sample.kappa);
    return wrap_angle(omega_angle(sample, radiant) - sample.gamma - std::numbers::pi / 2 + 2 * delta);
}

namespace detail
{

// |dE/ds| by five-point differences of the caustic point (one-sided near
// the ends of an open curve); infinite where E is undefined.
inline double caustic_speed(ParametricCurve const& curve, Radiant const& radiant, double t, Tolerances const& tol)
{
    double const h = 1e-5 * std::max(1.0, std::abs(t));
    Interval const dom = curve.domain();
    bool const central = curve.closed() || (t - 2 * h >= dom.lo && t + 2 * h <= dom.hi);
    double const hs = central ? h : (t - 2 * h < dom.lo ? h : -h);
    double const offsets[5] = {-2 * h, -h, 0.0, h, 2 * h};
    double const weights[5] = {1, -8, 0, 8, -1};
    double const forward[5] = {-25, 48, -36, 16, -3};
    Vec2 d{0, 0};
    for (int k = 0; k < 5; ++k)
    {
        double const w = central ? weights[k] : forward[k];
        if (w == 0)
            continue;
        auto const p = caustic_at(curve, radiant, central ? t + offsets[k] : t + k * hs, tol);
        if (!p)
            return std::numeric_limits<double>::infinity();
        d = d + w * *p;
    }
    return norm(d / (12 * hs)) / speed_at(curve, curve.reduce(t));
}

} // namespace detail

/*!
 * Cusps of one caustic component: local minima of |dE/ds| over the
 * samples, refined by golden-section search to 1e-10 in t, kept only when
 * the contact condition and the distance to beta both fall below 1e-6.
 */
inline std::vector<Cusp> find_cusps(ParametricCurve const& curve,
                                    Radiant const& radiant,
                                    CausticComponent const& component,
                                    Tolerances const& tol = {})
{
    std::vector<Cusp> cusps;
    auto const& smp = component.samples;
    std::size_t const n = smp.size();
    if (n < 3)
        return cusps;

    // A component collapsed to a point (all rays through one focus) has no cusps.
    double extent = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        extent = std::max(extent, distance(*smp[i].E, *smp[0].E));
    if (extent < 1e-9)
        return cusps;

    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i)
        speed[i] = detail::caustic_speed(curve, radiant, smp[i].t, tol);

    double const period = curve.period();
    auto param = [&](std::ptrdiff_t i) {
        // Parameter of sample i continued across the seam for closed components.
        std::ptrdiff_t const N = static_cast<std::ptrdiff_t>(n);
        if (i < 0)
            return smp[static_cast<std::size_t>(i + N)].t - period;
        if (i >= N)
            return smp[static_cast<std::size_t>(i - N)].t + period;
        return smp[static_cast<std::size_t>(i)].t;
    };

    for (std::size_t i = 0; i < n; ++i)
    {
        bool const interior = i > 0 && i + 1 < n;
        if (!interior && !component.closed)
            continue;
        double const prev = speed[(i + n - 1) % n];
        double const next = speed[(i + 1) % n];
        if (!(speed[i] <= prev && speed[i] < next))
            continue;

        auto const ii = static_cast<std::ptrdiff_t>(i);
        double a = param(ii - 1);
        double b = param(ii + 1);
        if (!component.closed)
        {
            // Samples in a component are contiguous, so the bracket stays inside it.
            a = smp[i - 1].t;
            b = smp[i + 1].t;
        }
        Minimum const m = golden_section_minimize(
            [&](double t) { return detail::caustic_speed(curve, radiant, t, tol); }, a, b, 1e-10);

        double const t0 = curve.reduce(m.x);
        CurveSample const s0 = detail::frenet_at(curve, t0, 0.0);
        std::optional<Vec2> const E0 = caustic_point(s0, radiant, tol);
        if (!E0)
            continue;
        double contact = 0.0;
        double gap = 0.0;
        try
        {
            contact = std::abs(contact_residual(s0, radiant, tol));
            gap = distance(*E0, second_envelope(s0, radiant, tol).beta);
        }
        catch (DegenerateError const&)
        {
            continue;
        }
        if (contact >= 1e-6 || gap >= 1e-6)
            continue;
        bool duplicate = false;
        for (auto const& c : cusps)
            if (std::abs(wrap_angle((c.t - t0) * 2 * std::numbers::pi / period)) * period / (2 * std::numbers::pi)
                < 1e-8)
                duplicate = true;
        if (!duplicate)
            cusps.push_back({component.id, t0, *E0, contact, gap});
    }
    std::sort(cusps.begin(), cusps.end(), [](Cusp const& x, Cusp const& y) { return x.t < y.t; });
    return cusps;
}

// Runs find_cusps on every component and flags the nearest sample of each cusp.
inline std::vector<Cusp> annotate_cusps(ParametricCurve const& curve,
                                        Radiant const& radiant,
                                        CausticTrace& trace,
                                        Tolerances const& tol = {})
{
    std::vector<Cusp> all;
    for (auto& comp : trace.components)
    {
        auto const cusps = find_cusps(curve, radiant, comp, tol);
        for (auto const& c : cusps)
        {
            auto nearest = std::min_element(comp.samples.begin(), comp.samples.end(),
                                            [&](CausticSample const& x, CausticSample const& y) {
                                                return std::abs(x.t - c.t) < std::abs(y.t - c.t);
                                            });
            nearest->is_cusp = true;
            all.push_back(c);
        }
    }
    return all;
}

struct TracePoint
{
    std::size_t radiant_id = 0;
    Vec2 point;
    double omega = 0.0;
};

struct RollingFrame
{
    double t = 0.0;
    double s = 0.0;
    Vec2 center;
    double R = 0.0;
    double omega = 0.0; // of the first radiant
    Vec2 contact;
    std::vector<TracePoint> traces;
    double beta_arclen = 0.0;
};

// All radiants at infinity, or a single finite radiant (possibly repeated).
inline void require_shared_family(std::vector<Radiant> const& radiants)
{
    if (radiants.empty())
        throw SceneError("empty radiant list");
    bool const any_finite = std::any_of(radiants.begin(), radiants.end(), [](Radiant const& r) { return r.is_finite(); });
    if (!any_finite)
        return;
    for (auto const& r : radiants)
        if (!(r == radiants.front()))
            throw SceneError("radiants do not share a focal-circle family: use one finite radiant or only radiants at infinity");
}

/*!
 * Rolling frame at one sample; empty where the focal circle is undefined
 * (flat sample, focus at infinity, indeterminate chord angle). Omegas are
 * raw (not unwrapped).
 */
inline std::optional<RollingFrame> rolling_frame_at(CurveSample const& sample,
                                                    std::vector<Radiant> const& radiants,
                                                    Tolerances const& tol = {})
{
    if (std::abs(sample.kappa) < tol.kappa_floor)
        return std::nullopt;
    try
    {
        Radiant const& lead = radiants.front();
        FocalCircle const fc = focal_circle(sample, lead, tol);
        if (fc.at_infinity())
            return std::nullopt;
        BetaSample const b = second_envelope(sample, lead, tol);
        RollingFrame f;
        f.t = sample.t;
        f.s = sample.s;
        f.center = *fc.center;
        f.R = *fc.R;
        f.contact = b.beta;
        for (std::size_t k = 0; k < radiants.size(); ++k)
        {
            double const w = omega_angle(sample, radiants[k]);
            f.traces.push_back({k, f.center + f.R * polar(w), w});
        }
        f.omega = f.traces.front().omega;
        return f;
    }
    catch (DegenerateError const&)
    {
        return std::nullopt;
    }
}

/*!
 * Rolling focal circles over a grid with one trace point per radiant.
 * Omega is unwrapped along the frames and beta arc length accumulated by
 * chord sums. Samples without a finite focal circle produce no frame.
 */
inline std::vector<RollingFrame> rolling_frames(ParametricCurve const& curve,
                                                std::vector<Radiant> const& radiants,
                                                SampleGrid const& grid,
                                                Tolerances const& tol = {})
{
    require_shared_family(radiants);
    std::vector<CurveSample> const samples = sample_curve(curve, grid);
    std::vector<RollingFrame> frames;
    frames.reserve(samples.size());
    for (auto const& smp : samples)
    {
        auto f = rolling_frame_at(smp, radiants, tol);
        if (!f)
            continue;
        if (!frames.empty())
        {
            RollingFrame const& prev = frames.back();
            for (std::size_t k = 0; k < f->traces.size(); ++k)
            {
                double const p = prev.traces[k].omega;
                f->traces[k].omega = p + wrap_angle(f->traces[k].omega - p);
            }
            f->beta_arclen = prev.beta_arclen + distance(prev.contact, f->contact);
        }
        f->omega = f->traces.front().omega;
        frames.push_back(std::move(*f));
    }
    return frames;
}

struct NoSlipResidual
{
    std::size_t radiant_id = 0;
    double t = 0.0;
    double gap = 0.0;   // |trace - contact| at the refined parameter
    double speed = 0.0; // |dE/ds| there
};

/*!
 * For each radiant, parameters where its trace point meets the contact
 * point on beta (local minima of the gap refined by golden-section, kept
 * when the gap is below 1e-4 |R|) and the caustic speed there, which
 * rolling without slipping makes zero. Singular points of the mirror,
 * where the circle shrinks to the contact point, are not coincidences.
 */
inline std::vector<NoSlipResidual> no_slip_report(ParametricCurve const& curve,
                                                  std::vector<Radiant> const& radiants,
                                                  std::vector<RollingFrame> const& frames,
                                                  Tolerances const& tol = {})
{
    std::vector<NoSlipResidual> out;
    std::size_t const n = frames.size();
    if (n < 3)
        return out;
    // Frames covering a whole closed curve wrap around the seam.
    double const step = frames[1].t - frames[0].t;
    bool const cyclic = curve.closed()
                        && std::abs(frames.front().t + curve.period() - frames.back().t - step)
                               < 1e-9 * curve.period();
    for (std::size_t k = 0; k < radiants.size(); ++k)
    {
        std::vector<double> gap(n);
        for (std::size_t i = 0; i < n; ++i)
            gap[i] = distance(frames[i].traces[k].point, frames[i].contact);

        auto frame_at = [&](double t) {
            return rolling_frame_at(detail::frenet_at(curve, curve.reduce(t), 0.0), radiants, tol);
        };
        auto gap_at = [&](double t) {
            auto f = frame_at(t);
            return f ? distance(f->traces[k].point, f->contact) : std::numeric_limits<double>::infinity();
        };

        for (std::size_t i = cyclic ? 0 : 1; i < (cyclic ? n : n - 1); ++i)
        {
            std::size_t const prev = (i + n - 1) % n;
            std::size_t const next = (i + 1) % n;
            if (!(gap[i] <= gap[prev] && gap[i] < gap[next]))
                continue;
            double const lo = frames[prev].t - (prev > i ? curve.period() : 0.0);
            double const hi = frames[next].t + (next < i ? curve.period() : 0.0);
            Minimum const m = golden_section_minimize(gap_at, lo, hi, 1e-12);
            auto const f = frame_at(m.x);
            if (!f || !(m.value < 1e-4 * std::abs(f->R)))
                continue;
            double const collapsed = 1.5e-8 * std::max(1.0, norm(f->contact));
            if (std::abs(f->R) <= collapsed)
                continue;
            out.push_back({k, curve.reduce(m.x), m.value, detail::caustic_speed(curve, radiants[k], m.x, tol)});
        }
    }
    return out;
}

} // namespace caustics
