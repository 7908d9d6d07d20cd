#pragma once

// Acceptance checks. Each criterion is a group of named checks, each a
// measured residual against a tolerance; a criterion passes when all of
// its checks do.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "curve.hpp"
#include "envelope.hpp"
#include "error.hpp"
#include "optics.hpp"
#include "oracle.hpp"
#include "reference_fixtures.hpp"
#include "scene.hpp"
#include "tracer.hpp"

namespace caustics
{

struct Check
{
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct CriterionResult
{
    int id = 0;
    std::string title;
    std::vector<Check> checks;

    bool passed() const
    {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](Check const& c) { return c.passed; });
    }
};

struct VerifyReport
{
    std::vector<CriterionResult> criteria;

    bool passed() const
    {
        return std::all_of(criteria.begin(), criteria.end(), [](CriterionResult const& c) { return c.passed(); });
    }
};

// Second-envelope formula under test; replaceable to check that the suite catches a wrong one.
using BetaFormula = std::function<Vec2(CurveSample const&, RadiusProfile const&, double)>;

inline Vec2 standard_beta(CurveSample const& smp, RadiusProfile const& p, double delta)
{
    return second_envelope(smp, p, delta).beta;
}

struct VerifyOptions
{
    std::vector<int> criteria{1, 2, 3, 4, 5, 6, 7, 8};
    BetaFormula beta = standard_beta;
    std::uint64_t seed = 20240917;
};

inline std::vector<std::pair<int, std::string>> const& criterion_titles()
{
    static std::vector<std::pair<int, std::string>> const titles{
        {1, "coffee-cup caustic and its second envelope"},
        {2, "mirror equation numbers"},
        {3, "parabola: focus envelope, Tschirnhausen cubic, axis-parallel collapse"},
        {4, "deltoid: hypocycloid envelope and astroid caustics"},
        {5, "circle: rim radiant, interior radiants"},
        {6, "focal-circle caustic against the envelope-of-lines oracle"},
        {7, "rolling construction: two routes, no slip, rotation rate"},
        {8, "chord rotation rate, constant and osculating families, aberrancy identities"},
    };
    return titles;
}

namespace detail
{

inline Check make_check(std::string name, double measured, double tolerance)
{
    bool const ok = std::isfinite(measured) && measured < tolerance;
    return {std::move(name), measured, tolerance, ok};
}

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

// Beta through the formula under test, from the focal-circle profile of a radiant.
inline Vec2 beta_via(BetaFormula const& f, CurveSample const& smp, Radiant const& r)
{
    RadiusProfile const p = radius_profile(smp, r);
    return f(smp, p, chord_angle(p.R, p.R_s, smp.kappa));
}

inline SampledCurve caustic_curve(ParametricCurve const& curve, Radiant const& r, std::vector<double> params)
{
    std::optional<double> period;
    if (curve.closed())
        period = curve.period();
    return {[&curve, r](double t) {
                auto e = caustic_at(curve, r, t);
                if (!e)
                    throw DegenerateError("caustic undefined at t = " + std::to_string(t));
                return *e;
            },
            std::move(params), period};
}

inline std::vector<double> component_params(CausticTrace const& tr)
{
    std::vector<double> ts;
    for (auto const& c : tr.components)
        for (auto const& s : c.samples)
            ts.push_back(s.t);
    return ts;
}

/*!
 * Caustic samples against the envelope-of-lines oracle at the same
 * parameters, restricted to points within `reach` of the mirror point
 * (far caustic points near an asymptote are ill-conditioned for both).
 * Returns the point-set Hausdorff distance of the two windowed sets.
 */
inline double oracle_gap(ParametricCurve const& curve, Radiant const& r, CausticTrace const& tr, double reach,
                         std::size_t* compared = nullptr)
{
    std::vector<double> ts;
    std::vector<Vec2> traced;
    for (auto const& c : tr.components)
        for (auto const& s : c.samples)
            if (distance(*s.E, curve.position_raw(s.t)) <= reach)
            {
                ts.push_back(s.t);
                traced.push_back(*s.E);
            }
    if (ts.size() < 3)
        throw DegenerateError("too few caustic samples to compare");
    LineEnvelope const env = envelope_of_lines(reflected_ray_family(curve, r, ts));
    std::vector<Vec2> a;
    std::vector<Vec2> b;
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (env.points[i])
        {
            a.push_back(traced[i]);
            b.push_back(*env.points[i]);
        }
    if (compared)
        *compared = a.size();
    return hausdorff_distance(a, b);
}

inline double curve_diameter(ParametricCurve const& curve)
{
    auto const ts = grid_parameters(curve, {curve.domain().lo, curve.domain().hi, 512});
    double d = 0.0;
    for (double a : ts)
        for (double b : ts)
            d = std::max(d, distance(curve.position_raw(a), curve.position_raw(b)));
    return d;
}

inline CriterionResult criterion_1(VerifyOptions const& opt)
{
    CriterionResult res;
    ParametricCurve const circle = make_catalog_curve("circle");
    Radiant const r = Radiant::at_infinity(std::numbers::pi);
    SampleGrid const grid = full_grid(circle, 1024);
    CausticTrace const tr = trace_caustic(circle, r, grid);

    double worst = 0.0;
    std::size_t count = 0;
    for (auto const& c : tr.components)
        for (auto const& s : c.samples)
        {
            double const th = s.t;
            Vec2 const expected{0.75 * std::cos(th) - 0.25 * std::cos(3 * th),
                                0.75 * std::sin(th) - 0.25 * std::sin(3 * th)};
            worst = std::max(worst, distance(*s.E, expected));
            ++count;
        }
    res.checks.push_back(make_check("caustic vs (3/4 cos - 1/4 cos 3, 3/4 sin - 1/4 sin 3), 1024 points", worst, 1e-9));
    res.checks.push_back(make_check("missing caustic samples", static_cast<double>(1024 - count), 0.5));

    double beta_err = 0.0;
    for (auto const& smp : sample_curve(circle, grid))
        beta_err = std::max(beta_err, distance(beta_via(opt.beta, smp, r), 0.5 * polar(smp.t)));
    res.checks.push_back(make_check("beta vs circle of radius 1/2", beta_err, 1e-9));
    return res;
}

inline CriterionResult criterion_2(VerifyOptions const&)
{
    CriterionResult res;
    double const pi = std::numbers::pi;
    double const d2a = 1.0 / mirror_focus(1.0 / (5 * pi / 4), 1.0 / pi);
    res.checks.push_back(make_check("kappa = 1/pi, d1 = 5pi/4: |d2 - 5pi/6|", std::abs(d2a - 5 * pi / 6), 1e-12));
    double const d2b = 1.0 / mirror_focus(1.0 / 2.0, 1.0);
    res.checks.push_back(make_check("kappa = 1, d1 = 2: |d2 - 2/3|", std::abs(d2b - 2.0 / 3.0), 1e-12));

    // Same numbers through the full reflection geometry: a circle of radius pi
    // with the radiant on the normal at distance d1.
    ParametricCurve const big = make_catalog_curve("circle", {{"rho", pi}});
    CurveSample const smp = frenet_sample(big, 0.3);
    FocalCircle const fc = focal_circle(smp, Radiant::finite(smp.pos + (5 * pi / 4) * smp.N_left));
    res.checks.push_back(make_check("focal circle diameter on a circle of radius pi", std::abs(2 * *fc.R - 5 * pi / 6), 1e-12));
    return res;
}

inline CriterionResult criterion_3(VerifyOptions const& opt)
{
    CriterionResult res;
    for (double b : {0.25, 1.0, 2.0})
    {
        ParametricCurve const par = make_catalog_curve("parabola", {{"b", b}});
        Vec2 const focus{0.0, 1.0 / (4 * b)};
        double worst = 0.0;
        for (auto const& smp : sample_curve(par, {-3.0, 3.0, 601}))
        {
            worst = std::max(worst, distance(beta_infinity(smp).beta, focus));
            for (double dir : {0.0, 30.0, 120.0})
                worst = std::max(worst, distance(beta_via(opt.beta, smp, Radiant::at_infinity(deg(dir))), focus));
        }
        res.checks.push_back(make_check("beta vs focus (0, 1/(4b)), b = " + std::to_string(b).substr(0, 4), worst, 1e-9));
    }

    ParametricCurve const par = make_catalog_curve("parabola");
    {
        // Light travelling along +x comes from the source direction pi.
        CausticTrace const tr = trace_caustic(par, Radiant::at_infinity(std::numbers::pi), {-3.0, 3.0, 601});
        double worst = 0.0;
        for (auto const& c : tr.components)
            for (auto const& s : c.samples)
                worst = std::max(worst, std::abs(tschirnhausen_residual(*s.E)));
        res.checks.push_back(make_check("|108x^2 - y(4y - 9)^2| on the caustic, light along +x", worst, 1e-6));
        res.checks.push_back(make_check("caustic samples present", tr.components.empty() ? 1.0 : 0.0, 0.5));
    }
    {
        CausticTrace const tr = trace_caustic(par, Radiant::at_infinity(std::numbers::pi / 2), {-3.0, 3.0, 601});
        double worst = 0.0;
        for (auto const& c : tr.components)
            for (auto const& s : c.samples)
                worst = std::max(worst, distance(*s.E, {0.0, 0.25}));
        res.checks.push_back(make_check("axis-parallel light: caustic vs (0, 1/4)", worst, 1e-9));
    }
    return res;
}

inline CriterionResult criterion_4(VerifyOptions const& opt)
{
    CriterionResult res;
    ParametricCurve const del = make_catalog_curve("deltoid");
    SampleGrid const grid = full_grid(del, 999);
    std::vector<CurveSample> const samples = sample_curve(del, grid);

    double worst = 0.0;
    for (double dir : {10.0, 75.0, 200.0})
        for (auto const& smp : samples)
        {
            double const t = smp.t;
            Vec2 const expected{4 * std::cos(t) - std::cos(4 * t), 4 * std::sin(t) - std::sin(4 * t)};
            worst = std::max(worst, distance(beta_via(opt.beta, smp, Radiant::at_infinity(deg(dir))), expected));
        }
    res.checks.push_back(make_check("beta vs (4cos t - cos 4t, 4sin t - sin 4t)", worst, 1e-9));

    double fit = 0.0;
    double hd = 0.0;
    double components = 0.0;
    for (auto const& f : fixtures::kDeltoidAstroids)
    {
        fit = std::max(fit, f.fit_residual);
        Radiant const r = Radiant::at_infinity(deg(f.source_deg));
        CausticTrace const tr = trace_caustic(del, r, grid);
        components = std::max(components, std::abs(static_cast<double>(tr.components.size()) - 1.0));
        std::map<std::string, double> const params{
            {"scale", f.scale}, {"rotation", f.rotation}, {"cx", f.center_x}, {"cy", f.center_y}};
        std::vector<double> us(2000);
        for (std::size_t i = 0; i < us.size(); ++i)
            us[i] = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(us.size());
        SampledCurve const astroid{[params](double u) { return reference_eval("astroid", params, u); }, us,
                                   2 * std::numbers::pi};
        hd = std::max(hd, curve_hausdorff(caustic_curve(del, r, component_params(tr)), astroid));
    }
    res.checks.push_back(make_check("astroid fixture fit residual (8 directions)", fit, 1e-8));
    res.checks.push_back(make_check("Hausdorff(traced caustic, fitted astroid), worst of 8 directions", hd, 1e-6));
    res.checks.push_back(make_check("caustic is a single component", components, 0.5));
    return res;
}

inline CriterionResult criterion_5(VerifyOptions const& opt)
{
    CriterionResult res;
    ParametricCurve const circle = make_catalog_curve("circle");
    SampleGrid const grid = full_grid(circle, 1024);
    Radiant const rim = Radiant::finite({1.0, 0.0});

    double beta_err = 0.0;
    for (auto const& smp : sample_curve(circle, grid))
        beta_err = std::max(beta_err, std::abs(norm(beta_via(opt.beta, smp, rim)) - 1.0 / 3.0));
    res.checks.push_back(make_check("rim radiant: | |beta| - 1/3 |", beta_err, 1e-9));

    CausticTrace const tr = trace_caustic(circle, rim, grid);
    double epi = 0.0;
    for (auto const& c : tr.components)
        for (auto const& s : c.samples)
            epi = std::max(epi, distance(*s.E, reference_eval("epicycloid", {{"base", 1.0 / 3}, {"roll", 1.0 / 3}, {"phase", std::numbers::pi}}, s.t)));
    res.checks.push_back(make_check("rim radiant: caustic vs epicycloid(1/3, 1/3)", epi, 1e-9));
    res.checks.push_back(make_check("rim radiant: Hausdorff to envelope-of-lines oracle", oracle_gap(circle, rim, tr, 1e9), 1e-6));

    {
        Radiant const r = Radiant::finite({0.25, 0.0});
        CausticTrace tr1 = trace_caustic(circle, r, grid);
        auto const cusps = annotate_cusps(circle, r, tr1);
        res.checks.push_back(make_check("(0.25, 0): |components - 1|", std::abs(static_cast<double>(tr1.components.size()) - 1.0), 0.5));
        res.checks.push_back(make_check("(0.25, 0): |cusps - 4|", std::abs(static_cast<double>(cusps.size()) - 4.0), 0.5));
    }
    {
        CausticTrace const tr2 = trace_caustic(circle, Radiant::finite({0.75, 0.0}), grid);
        res.checks.push_back(make_check("(0.75, 0): |components - 2|", std::abs(static_cast<double>(tr2.components.size()) - 2.0), 0.5));
    }
    return res;
}

struct RandomScene
{
    std::string curve;
    Radiant radiant;
};

inline std::vector<RandomScene> random_scenes(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    std::vector<RandomScene> out;
    ParametricCurve const ellipse = make_catalog_curve("ellipse");
    ParametricCurve const involute = make_catalog_curve("involute");
    auto clearance = [](ParametricCurve const& c, Vec2 p) {
        double best = std::numeric_limits<double>::infinity();
        for (double t : grid_parameters(c, {c.domain().lo, c.domain().hi, 2000}))
            best = std::min(best, distance(c.position_raw(t), p));
        return best;
    };
    for (int i = 0; i < 10; ++i)
    {
        bool const use_ellipse = i % 2 == 0;
        bool const finite = (i / 2) % 2 == 0;
        ParametricCurve const& c = use_ellipse ? ellipse : involute;
        if (!finite)
        {
            out.push_back({c.source().catalog, Radiant::at_infinity(2 * std::numbers::pi * unit01(rng))});
            continue;
        }
        double const sx = use_ellipse ? 2.5 : 10.0;
        double const sy = use_ellipse ? 1.5 : 10.0;
        Vec2 p;
        do
            p = {sx * (2 * unit01(rng) - 1), sy * (2 * unit01(rng) - 1)};
        while (clearance(c, p) < 0.1);
        out.push_back({c.source().catalog, Radiant::finite(p)});
    }
    return out;
}

inline CriterionResult criterion_6(VerifyOptions const& opt)
{
    CriterionResult res;
    for (auto const& sc : random_scenes(opt.seed))
    {
        ParametricCurve const c = make_catalog_curve(sc.curve);
        CausticTrace const tr = trace_caustic(c, sc.radiant, full_grid(c, 2000));
        double const reach = 10 * curve_diameter(c);
        std::string label = sc.curve + ", ";
        if (sc.radiant.is_finite())
            label += "finite (" + std::to_string(sc.radiant.point().x) + ", " + std::to_string(sc.radiant.point().y) + ")";
        else
            label += "at infinity " + std::to_string(radians_to_degrees(sc.radiant.theta_src())) + " deg";
        res.checks.push_back(make_check("Hausdorff to oracle: " + label, oracle_gap(c, sc.radiant, tr, reach), 1e-5));
    }
    return res;
}

inline CriterionResult criterion_7(VerifyOptions const&)
{
    CriterionResult res;
    struct Case
    {
        std::string curve;
        std::vector<Radiant> radiants;
    };
    std::vector<Radiant> thirteen;
    for (int k = 0; k < 13; ++k)
        thirteen.push_back(Radiant::at_infinity(deg(7.0 + 180.0 * k / 13)));
    std::vector<Case> const cases{
        {"circle", {Radiant::at_infinity(std::numbers::pi)}},
        {"circle", {Radiant::finite({0.25, 0.0})}},
        {"circle", {Radiant::finite({1.0, 0.0})}},
        {"ellipse", {Radiant::at_infinity(deg(75.0))}},
        {"ellipse", {Radiant::finite({0.5, 0.3})}},
        {"deltoid", thirteen},
        {"parabola", {Radiant::at_infinity(deg(30.0))}},
    };

    double two_route = 0.0;
    double rate = 0.0;
    for (auto const& cs : cases)
    {
        ParametricCurve const c = make_catalog_curve(cs.curve);
        SampleGrid const grid = refine_for_unwrapping(c, full_grid(c, 999));
        auto const frames = rolling_frames(c, cs.radiants, grid);
        std::vector<CurveSample> const samples = sample_curve(c, grid);
        std::size_t fi = 0;
        for (auto const& smp : samples)
        {
            if (fi >= frames.size() || frames[fi].t != smp.t)
                continue;
            RollingFrame const& f = frames[fi++];
            for (auto const& tp : f.traces)
            {
                auto const e = caustic_point(smp, cs.radiants[tp.radiant_id]);
                if (e)
                    two_route = std::max(two_route, distance(*e, tp.point) / std::max(1.0, std::abs(f.R)));
            }
            if (cs.curve == "deltoid")
                continue;
            Radiant const& r = cs.radiants.front();
            rate = std::max(rate, std::abs(omega_rate(c, r, smp.t) - omega_rate_predicted(smp, r)));
        }
    }
    res.checks.push_back(make_check("rolling trace vs caustic point (relative to max(1, |R|))", two_route, 1e-9));

    double slip = 0.0;
    double contacts = 0.0;
    std::vector<Case> const roll_cases{
        {"circle", {Radiant::at_infinity(std::numbers::pi)}},
        {"deltoid", thirteen},
        {"ellipse", {Radiant::at_infinity(deg(75.0))}},
    };
    for (auto const& cs : roll_cases)
    {
        ParametricCurve const c = make_catalog_curve(cs.curve);
        auto const frames = rolling_frames(c, cs.radiants, full_grid(c, 999));
        auto const report = no_slip_report(c, cs.radiants, frames);
        contacts += static_cast<double>(report.size());
        for (auto const& row : report)
            slip = std::max(slip, row.speed);
    }
    res.checks.push_back(make_check("no-slip: |dE/ds| at trace/contact coincidences", slip, 1e-5));
    res.checks.push_back(make_check("no-slip: no coincidences found", contacts > 0 ? 0.0 : 1.0, 0.5));
    res.checks.push_back(make_check("d omega/ds vs 3 kappa - 2 u1", rate, 1e-5));
    return res;
}

inline CriterionResult criterion_8(VerifyOptions const& opt)
{
    CriterionResult res;
    std::mt19937_64 rng(opt.seed + 8);
    std::uniform_real_distribution<double> unit01(0.0, 1.0);
    std::vector<std::string> const names{"circle", "ellipse", "parabola", "involute"};

    double chord_rate = 0.0;
    int done = 0;
    while (done < 100)
    {
        ParametricCurve const c = make_catalog_curve(names[done % names.size()]);
        Interval const dom = c.domain();
        double const t = dom.lo + (0.05 + 0.9 * unit01(rng)) * dom.width();
        Vec2 const p = c.position_raw(t);
        RateTarget target;
        if (done % 2 == 0)
            target = p + Vec2{8 * unit01(rng) - 4, 8 * unit01(rng) - 4};
        else
        {
            Radiant const r = unit01(rng) < 0.5
                                  ? Radiant::at_infinity(2 * std::numbers::pi * unit01(rng))
                                  : Radiant::finite(p + Vec2{6 * unit01(rng) - 3, 6 * unit01(rng) - 3});
            auto const e = caustic_at(c, r, t);
            if (!e || distance(*e, p) > 50)
                continue;
            target = PointMap([&c, r](double x) { return caustic_at(c, r, x).value_or(Vec2{0, 0}); });
        }
        RateCheck chk;
        try
        {
            Vec2 const w0 = std::holds_alternative<Vec2>(target) ? std::get<Vec2>(target) : std::get<PointMap>(target)(t);
            if (distance(w0, p) < 0.1)
                continue;
            chk = chord_rate_check(c, target, t);
        }
        catch (DegenerateError const&)
        {
            continue;
        }
        chord_rate = std::max(chord_rate, std::abs(chk.measured - chk.predicted));
        ++done;
    }
    res.checks.push_back(make_check("chord rotation rate, 100 random configurations", chord_rate, 1e-5));

    double cor1 = 0.0;
    double cor2 = 0.0;
    double eq5 = 0.0;
    double aberr = 0.0;
    for (auto const& d : catalog_descriptors())
    {
        ParametricCurve const c = make_catalog_curve(d.name);
        for (auto const& smp : sample_curve(c, full_grid(c, 600)))
        {
            if (smp.flat)
                continue;
            for (double R : {0.3, -0.7, 2.0})
            {
                RadiusProfile const p{R, 0.0};
                Vec2 const b = opt.beta(smp, p, chord_angle(R, 0.0, smp.kappa));
                cor1 = std::max(cor1, distance(b, smp.pos + 2 * R * smp.N_left));
            }
            RadiusProfile const inf = radius_profile(smp, Radiant::at_infinity(0.0));
            double const delta = chord_angle(inf.R, inf.R_s, smp.kappa);
            double const a = *smp.aberrancy;
            eq5 = std::max({eq5, std::abs(std::cos(2 * delta) - (1 - a * a) / (1 + a * a)),
                            std::abs(std::sin(2 * delta) + 2 * a / (1 + a * a))});
            aberr = std::max(aberr, std::abs(delta + std::atan(a)));
            if (d.name == "ellipse")
            {
                RadiusProfile const osc{1.0 / smp.kappa, -smp.kappa_s / (smp.kappa * smp.kappa)};
                if (std::abs(osc.R_s) < 1e-6)
                    continue;
                Vec2 const b = opt.beta(smp, osc, chord_angle(osc.R, osc.R_s, smp.kappa));
                cor2 = std::max(cor2, distance(b, smp.pos));
            }
        }
    }
    res.checks.push_back(make_check("constant radius: beta vs alpha + 2RN", cor1, 1e-9));
    res.checks.push_back(make_check("osculating family on the ellipse: beta vs alpha", cor2, 1e-8));
    res.checks.push_back(make_check("cos 2delta, sin 2delta vs aberrancy forms", eq5, 1e-10));
    res.checks.push_back(make_check("delta + arctan(a)", aberr, 1e-10));
    return res;
}

} // namespace detail

/*!
 * Run the selected acceptance criteria. Throws when the selection is
 * empty or names an unknown criterion.
 */
inline VerifyReport run_verify(VerifyOptions const& opt = {})
{
    if (opt.criteria.empty())
        throw SceneError("nothing to verify");
    using Runner = CriterionResult (*)(VerifyOptions const&);
    static std::map<int, Runner> const runners{
        {1, detail::criterion_1}, {2, detail::criterion_2}, {3, detail::criterion_3}, {4, detail::criterion_4},
        {5, detail::criterion_5}, {6, detail::criterion_6}, {7, detail::criterion_7}, {8, detail::criterion_8},
    };
    VerifyReport report;
    for (int id : opt.criteria)
    {
        auto it = runners.find(id);
        if (it == runners.end())
            throw SceneError("unknown criterion " + std::to_string(id));
        CriterionResult r;
        try
        {
            r = it->second(opt);
        }
        catch (Error const& err)
        {
            r.checks.push_back({std::string("raised: ") + err.what(), 0.0, 0.0, false});
        }
        r.id = id;
        for (auto const& [cid, title] : criterion_titles())
            if (cid == id)
                r.title = title;
        report.criteria.push_back(std::move(r));
    }
    return report;
}

inline Json report_json(VerifyReport const& report)
{
    Json criteria = Json::array();
    for (auto const& c : report.criteria)
    {
        Json checks = Json::array();
        for (auto const& k : c.checks)
        {
            Json measured = std::isfinite(k.measured) ? Json(k.measured) : Json("non_finite");
            checks.push_back({{"name", k.name}, {"measured", measured}, {"tolerance", k.tolerance}, {"passed", k.passed}});
        }
        criteria.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed()}, {"checks", checks}});
    }
    return {{"passed", report.passed()}, {"criteria", criteria}};
}

} // namespace caustics
