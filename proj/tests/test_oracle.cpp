#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "caustics/catalog.hpp"
#include "caustics/envelope.hpp"
#include "caustics/oracle.hpp"
#include "caustics/reference_fixtures.hpp"
#include "caustics/tracer.hpp"

using namespace caustics;

namespace
{

constexpr double pi = std::numbers::pi;

std::vector<double> interior(double lo, double hi, std::size_t n)
{
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * (i + 0.5) / n);
    return out;
}

} // namespace

TEST(EnvelopeOfLines, TangentLinesOfCircle)
{
    auto const circle = make_catalog_curve("circle");
    LineEnvelope const env = envelope_of_lines(tangent_line_family(circle, interior(0, 2 * pi, 200)));
    EXPECT_EQ(env.skipped, 0u);
    for (std::size_t i = 0; i < env.params.size(); ++i)
        EXPECT_NEAR(distance(*env.points[i], polar(env.params[i])), 0.0, 1e-6);
}

TEST(EnvelopeOfLines, CoffeeCup)
{
    auto const circle = make_catalog_curve("circle");
    LineEnvelope const env = envelope_of_lines(reflected_ray_family(circle, Radiant::at_infinity(pi), interior(0, 2 * pi, 300)));
    for (std::size_t i = 0; i < env.params.size(); ++i)
    {
        Vec2 const expected = reference_eval("epicycloid", {{"base", 0.5}, {"roll", 0.25}}, env.params[i]);
        EXPECT_NEAR(distance(*env.points[i], expected), 0.0, 1e-6);
    }
}

TEST(EnvelopeOfLines, ParabolaTschirnhausen)
{
    auto const parabola = make_catalog_curve("parabola");
    LineEnvelope const env =
        envelope_of_lines(reflected_ray_family(parabola, Radiant::at_infinity(pi), interior(-2.5, 2.5, 201)));
    for (std::size_t i = 0; i < env.params.size(); ++i)
    {
        ASSERT_TRUE(env.points[i]);
        Vec2 const p = *env.points[i];
        // Relative to the size of the terms in 108x^2 = y(4y - 9)^2.
        double const scale = std::max(1.0, 108 * p.x * p.x + std::abs(p.y) * (4 * std::abs(p.y) + 9) * (4 * std::abs(p.y) + 9));
        EXPECT_LT(std::abs(tschirnhausen_residual(p)) / scale, 1e-6) << env.params[i];
    }
}

TEST(EnvelopeOfLines, Errors)
{
    auto const segment = make_expression_curve("t", "0", {0, 1}, false);
    EXPECT_THROW(envelope_of_lines(tangent_line_family(segment, {0.2, 0.5, 0.8})), DegenerateError);
    auto const circle = make_catalog_curve("circle");
    EXPECT_THROW(envelope_of_lines(tangent_line_family(circle, {0.2, 0.5})), DomainError);
}

TEST(EnvelopeOfLines, ParallelNeighboursAreSkipped)
{
    // Straight on [-1, 0], curved on (0, 1]: tangent lines repeat on the flat part.
    auto const c = make_expression_curve("t", "(t + abs(t))^3", {-1, 1}, false);
    LineEnvelope const env = envelope_of_lines(tangent_line_family(c, {-0.8, -0.5, 0.5, 0.8}));
    EXPECT_EQ(env.skipped, 2u);
    EXPECT_FALSE(env.points[0]);
    EXPECT_TRUE(env.points[3]);
}

TEST(EnvelopeOfLines, RichardsonConsistency)
{
    auto const ellipse = make_catalog_curve("ellipse");
    auto const family = reflected_ray_family(ellipse, Radiant::at_infinity(75 * pi / 180), interior(0, 2 * pi, 150));
    LineEnvelope const a = envelope_of_lines(family, 1e-3);
    LineEnvelope const b = envelope_of_lines(family, 5e-4);
    for (std::size_t i = 0; i < a.params.size(); ++i)
    {
        auto const e = caustic_at(ellipse, Radiant::at_infinity(75 * pi / 180), a.params[i]);
        if (!e || norm(*e) > 10)
            continue; // near an escape the arc is not smooth at this scale
        EXPECT_LT(distance(*a.points[i], *b.points[i]), 1e-8) << a.params[i];
    }
}

TEST(EnvelopeOfCircles, FocalCirclesGiveAlphaAndBeta)
{
    auto const ellipse = make_catalog_curve("ellipse");
    for (Radiant const& r : {Radiant::at_infinity(75 * pi / 180), Radiant::finite({0.5, 0.3})})
    {
        CircleFamily family{interior(0, 2 * pi, 180), [&](double t) {
                                FocalCircle const fc = focal_circle(frenet_sample(ellipse, t), r);
                                return Circle{*fc.center, std::abs(*fc.R)};
                            }};
        auto const env = envelope_of_circles(family);
        for (std::size_t i = 0; i < env.size(); ++i)
        {
            if (!env[i])
                continue;
            double const t = family.params[i];
            CurveSample const s = frenet_sample(ellipse, t);
            Vec2 const beta = second_envelope(s, r).beta;
            auto const& pts = *env[i];
            double const alpha_gap = std::min(distance(pts[0], s.pos), distance(pts[1], s.pos));
            double const beta_gap = std::min(distance(pts[0], beta), distance(pts[1], beta));
            EXPECT_LT(alpha_gap, 1e-5) << t;
            EXPECT_LT(beta_gap, 1e-5) << t;
        }
    }
}

TEST(IntersectCircles, Basics)
{
    auto const x = intersect_circles({{0, 0}, 1}, {{1, 0}, 1});
    ASSERT_TRUE(x);
    EXPECT_NEAR((*x)[0].x, 0.5, 1e-15);
    EXPECT_NEAR(std::abs((*x)[0].y), std::sqrt(3) / 2, 1e-15);
    EXPECT_FALSE(intersect_circles({{0, 0}, 1}, {{0.1, 0}, 0.2}));
    EXPECT_FALSE(intersect_circles({{0, 0}, 1}, {{0, 0}, 1}));
}

TEST(ReferenceEval, Examples)
{
    for (double th : {0.0, 0.8, 2.0, 4.4})
    {
        Vec2 const e = reference_eval("epicycloid", {{"base", 0.5}, {"roll", 0.25}, {"phase", 0.0}}, th);
        EXPECT_NEAR(distance(e, 0.75 * polar(th) - 0.25 * polar(3 * th)), 0.0, 1e-15);
    }
    Vec2 const p = reference_eval("tschirnhausen", {}, 1.0);
    EXPECT_NEAR(p.x, -0.5, 1e-15);
    EXPECT_NEAR(p.y, 3.0, 1e-15);
    EXPECT_EQ(tschirnhausen_residual({-0.5, 3}), 0.0);
    EXPECT_THROW(reference_eval("lemniscate", {}, 0.0), DomainError);
}

TEST(ReferenceEval, KindsAgreeWithTheirDefinitions)
{
    for (double t : {0.1, 1.0, 2.5})
    {
        EXPECT_NEAR(distance(reference_eval("circle", {{"r", 2}, {"cx", 1}, {"cy", -1}}, t), Vec2{1, -1} + 2 * polar(t)),
                    0.0, 1e-15);
        EXPECT_NEAR(distance(reference_eval("deltoid", {}, t),
                             Vec2{2 * std::cos(t) + std::cos(2 * t), 2 * std::sin(t) - std::sin(2 * t)}),
                    0.0, 1e-15);
        EXPECT_NEAR(distance(reference_eval("cardioid", {{"r", 1}}, t), reference_eval("epicycloid", {{"base", 1}, {"roll", 1}}, t)),
                    0.0, 1e-15);
        // cos^3 / sin^3 form of the astroid.
        double const c = std::cos(t);
        double const s = std::sin(t);
        EXPECT_NEAR(distance(reference_eval("astroid", {{"scale", 4}}, t), 4.0 * Vec2{c * c * c, s * s * s}), 0.0, 1e-14);
    }
}

TEST(ChordRate, Examples)
{
    auto const circle = make_catalog_curve("circle");
    RateCheck const radial = chord_rate_check(circle, Vec2{0, 0}, 0.7);
    EXPECT_NEAR(radial.measured, 1.0, 1e-8);
    EXPECT_NEAR(radial.predicted, 1.0, 1e-15);

    RateCheck const far = chord_rate_check(circle, Vec2{3, 0}, pi / 2);
    EXPECT_NEAR(far.measured, far.predicted, 1e-5);

    auto const ellipse = make_catalog_curve("ellipse");
    // The caustic point: the reflected ray from the mirror point is tangent
    // to the caustic, so the chord is tangent to the moving target.
    Radiant const r = Radiant::at_infinity(75 * pi / 180);
    PointMap const moving = [&](double t) { return *caustic_at(ellipse, r, t); };
    for (double t : {0.3, 1.4, 3.9})
    {
        RateCheck const rc = chord_rate_check(ellipse, moving, t);
        EXPECT_NEAR(rc.measured, rc.predicted, 1e-5) << t;
    }
    EXPECT_THROW(chord_rate_check(circle, Vec2{1, 0}, 0.0), DegenerateError);
}

TEST(Hausdorff, PointSets)
{
    std::vector<Vec2> a;
    std::vector<Vec2> b;
    std::size_t const n = 360;
    for (std::size_t i = 0; i < n; ++i)
    {
        a.push_back(polar(2 * pi * i / n));
        b.push_back(polar(2 * pi * (i + 0.5) / n));
    }
    EXPECT_EQ(hausdorff_distance(a, a), 0.0);
    EXPECT_LE(hausdorff_distance(a, b), 2 * std::sin(pi / n) + 1e-15);
    EXPECT_THROW(hausdorff_distance(a, {}), DomainError);
}

TEST(Hausdorff, ContinuousCurvesIgnoreSampling)
{
    SampledCurve const a{[](double t) { return polar(t); }, interior(0, 2 * pi, 50), 2 * pi};
    SampledCurve const b{[](double t) { return polar(t); }, interior(0, 2 * pi, 77), 2 * pi};
    EXPECT_LT(curve_hausdorff(a, b), 1e-12);
    SampledCurve const c{[](double t) { return 1.01 * polar(t); }, interior(0, 2 * pi, 77), 2 * pi};
    EXPECT_NEAR(curve_hausdorff(a, c), 0.01, 1e-12);
}

TEST(Hausdorff, DeltoidCausticsAreTheFittedAstroids)
{
    auto const deltoid = make_catalog_curve("deltoid");
    for (auto const& fit : fixtures::kDeltoidAstroids)
    {
        Radiant const r = Radiant::at_infinity(fit.source_deg * pi / 180);
        SampledCurve const astroid{
            [&](double u) {
                double const c = std::cos(u);
                double const s = std::sin(u);
                return Vec2{fit.center_x, fit.center_y} + rotate(fit.scale * Vec2{c * c * c, s * s * s}, fit.rotation);
            },
            interior(0, 2 * pi, 2000), 2 * pi};
        SampledCurve const caustic{[&](double t) { return *caustic_at(deltoid, r, t); }, interior(0, 2 * pi, 999), 2 * pi};
        EXPECT_LT(curve_hausdorff(caustic, astroid), 1e-6) << fit.source_deg;
    }
}
