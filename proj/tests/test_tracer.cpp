#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "caustics/catalog.hpp"
#include "caustics/curve.hpp"
#include "caustics/envelope.hpp"
#include "caustics/tracer.hpp"

using namespace caustics;

namespace
{

constexpr double pi = std::numbers::pi;

Vec2 coffee_cup(double theta) { return 0.75 * polar(theta) - 0.25 * polar(3 * theta); }

std::vector<Radiant> thirteen_directions()
{
    std::vector<Radiant> out;
    for (int k = 0; k < 13; ++k)
        out.push_back(Radiant::at_infinity((7.0 + 180.0 * k / 13) * pi / 180));
    return out;
}

double angle_about(Vec2 center, Vec2 p) { return angle_of(p - center); }

} // namespace

TEST(CausticAt, CoffeeCupAndUndefinedPoints)
{
    auto const circle = make_catalog_curve("circle");
    for (double t : {0.0, 0.9, 2.2, 5.0})
        EXPECT_NEAR(distance(*caustic_at(circle, Radiant::at_infinity(pi), t), coffee_cup(t)), 0.0, 1e-12);
    EXPECT_FALSE(caustic_at(circle, Radiant::finite({0.5, 0}), 0.0));
    EXPECT_FALSE(caustic_at(circle, Radiant::finite({1, 0}), 0.0));
    auto const cubic = make_expression_curve("t", "t^3", {-1, 1}, false);
    EXPECT_FALSE(caustic_at(cubic, Radiant::at_infinity(1.0), 0.0));
}

TEST(TraceCaustic, CoffeeCupIsOneClosedComponent)
{
    auto const circle = make_catalog_curve("circle");
    CausticTrace const tr = trace_caustic(circle, Radiant::at_infinity(pi), full_grid(circle, 256));
    ASSERT_EQ(tr.components.size(), 1u);
    EXPECT_TRUE(tr.components[0].closed);
    EXPECT_TRUE(tr.asymptotes.empty());
    EXPECT_EQ(finite_sample_count(tr), 256u);
    for (auto const& smp : tr.components[0].samples)
        EXPECT_NEAR(distance(*smp.E, coffee_cup(smp.t)), 0.0, 1e-12);
}

TEST(TraceCaustic, EllipseRadiantInsideVertexDiscriminantCircle)
{
    // The discriminant circle at the vertex (2, 0) is centred at (1.875, 0)
    // with radius 1/8; a radiant inside it leaves it on either side.
    auto const ellipse = make_catalog_curve("ellipse");
    for (Vec2 p : {Vec2{1.8, 0.0}, Vec2{1.9, 0.0}})
    {
        CausticTrace const tr = trace_caustic(ellipse, Radiant::finite(p), full_grid(ellipse, 1024));
        EXPECT_EQ(tr.components.size(), 2u) << p;
        EXPECT_EQ(tr.asymptotes.size(), 2u) << p;
    }
    CausticTrace const outside = trace_caustic(ellipse, Radiant::finite({1.7, 0}), full_grid(ellipse, 1024));
    EXPECT_EQ(outside.components.size(), 1u);
}

TEST(TraceCaustic, CircleInteriorRadiants)
{
    auto const circle = make_catalog_curve("circle");
    Radiant const inner = Radiant::finite({0.25, 0});
    CausticTrace tr = trace_caustic(circle, inner, full_grid(circle, 512));
    ASSERT_EQ(tr.components.size(), 1u);
    EXPECT_TRUE(tr.components[0].closed);
    EXPECT_EQ(annotate_cusps(circle, inner, tr).size(), 4u);

    CausticTrace const outer = trace_caustic(circle, Radiant::finite({0.75, 0}), full_grid(circle, 512));
    EXPECT_EQ(outer.components.size(), 2u);
    for (auto const& c : outer.components)
        EXPECT_FALSE(c.closed);
}

TEST(TraceCaustic, AsymptotesAreAttachedToBothNeighbours)
{
    auto const circle = make_catalog_curve("circle");
    Radiant const r = Radiant::finite({0.75, 0});
    CausticTrace const tr = trace_caustic(circle, r, full_grid(circle, 512));
    ASSERT_EQ(tr.asymptotes.size(), 2u);
    for (auto const& a : tr.asymptotes)
    {
        EXPECT_NE(a.before, a.after);
        // The reflected line at the escape parameter, where u2 vanishes.
        CurveSample const s = detail::frenet_at(circle, a.t, 0.0);
        EXPECT_NEAR(focal_circle(s, r, {1e-8, 1e-300}).u2, 0.0, 1e-8);
        EXPECT_NEAR(norm(a.line.direction), 1.0, 1e-12);
        bool before_tagged = false;
        bool after_tagged = false;
        for (auto const& c : tr.components)
            for (auto const& smp : c.samples)
                if (smp.asymptote && distance(smp.asymptote->point, a.line.point) < 1e-12)
                {
                    before_tagged |= c.id == a.before;
                    after_tagged |= c.id == a.after;
                }
        EXPECT_TRUE(before_tagged);
        EXPECT_TRUE(after_tagged);
    }
}

TEST(TraceCaustic, CoarseGridIsRejected)
{
    auto const circle = make_catalog_curve("circle");
    EXPECT_THROW(trace_caustic(circle, Radiant::at_infinity(0), full_grid(circle, 3)), DomainError);
}

TEST(TraceCaustic, SamplesLieOnTheirFocalCircles)
{
    auto const ellipse = make_catalog_curve("ellipse");
    for (Radiant const& r : {Radiant::finite({0.5, 0.3}), Radiant::at_infinity(1.3), Radiant::finite({1.8, 0})})
    {
        CausticTrace const tr = trace_caustic(ellipse, r, full_grid(ellipse, 512));
        for (auto const& c : tr.components)
            for (auto const& smp : c.samples)
            {
                FocalCircle const fc = focal_circle(frenet_sample(ellipse, smp.t), r);
                double const scale = std::max(1.0, std::abs(*fc.R));
                EXPECT_NEAR(distance(*smp.E, *fc.center), std::abs(*fc.R), 1e-8 * scale);
            }
    }
}

TEST(FindCusps, CoffeeCup)
{
    auto const circle = make_catalog_curve("circle");
    Radiant const r = Radiant::at_infinity(pi);
    CausticTrace tr = trace_caustic(circle, r, full_grid(circle, 256));
    auto const cusps = annotate_cusps(circle, r, tr);
    ASSERT_EQ(cusps.size(), 2u);
    std::vector<double> ts;
    for (auto const& c : cusps)
    {
        double const t = std::abs(wrap_angle(c.t)) < 1 ? 0.0 : pi;
        EXPECT_NEAR(std::abs(wrap_angle(c.t - t)), 0.0, 1e-9);
        EXPECT_NEAR(distance(c.point, coffee_cup(t)), 0.0, 1e-9);
        EXPECT_LT(std::abs(c.contact_residual), 1e-6);
        EXPECT_LT(c.beta_gap, 1e-6);
        ts.push_back(t);
    }
    EXPECT_NE(ts[0], ts[1]);
    int flagged = 0;
    for (auto const& smp : tr.components[0].samples)
        flagged += smp.is_cusp;
    EXPECT_EQ(flagged, 2);
}

TEST(FindCusps, ObliqueParabolaHasNone)
{
    auto const parabola = make_catalog_curve("parabola");
    for (double deg : {30.0, 75.0, 120.0, 180.0})
    {
        Radiant const r = Radiant::at_infinity(deg * pi / 180);
        CausticTrace tr = trace_caustic(parabola, r, full_grid(parabola, 512));
        EXPECT_TRUE(annotate_cusps(parabola, r, tr).empty()) << deg;
    }
}

TEST(FindCusps, AtInfinityCuspsLieOnBeta)
{
    for (std::string const name : {"ellipse", "deltoid", "involute"})
    {
        auto const c = make_catalog_curve(name);
        for (double deg : {20.0, 75.0, 140.0})
        {
            Radiant const r = Radiant::at_infinity(deg * pi / 180);
            CausticTrace tr = trace_caustic(c, r, full_grid(c, 1024));
            for (auto const& cusp : annotate_cusps(c, r, tr))
            {
                BetaSample const b = beta_infinity(frenet_sample(c, cusp.t));
                EXPECT_LT(distance(cusp.point, b.beta), 1e-6) << name << " " << deg;
            }
        }
    }
}

TEST(FindCusps, FiniteRadiantCuspsLieOnBeta)
{
    auto const circle = make_catalog_curve("circle");
    for (double c : {0.1, 0.25, 0.4})
    {
        Radiant const r = Radiant::finite({c, 0});
        CausticTrace tr = trace_caustic(circle, r, full_grid(circle, 512));
        auto const cusps = annotate_cusps(circle, r, tr);
        EXPECT_EQ(cusps.size(), 4u) << c;
        for (auto const& cusp : cusps)
            EXPECT_LT(distance(cusp.point, second_envelope(frenet_sample(circle, cusp.t), r).beta), 1e-6);
    }
}

TEST(Omega, RateAtInfinityIsThreeKappa)
{
    for (std::string const name : {"ellipse", "parabola", "involute"})
    {
        auto const c = make_catalog_curve(name);
        Radiant const r = Radiant::at_infinity(0.6);
        for (double t : grid_parameters(c, full_grid(c, 33)))
        {
            CurveSample const s = frenet_sample(c, t);
            EXPECT_NEAR(omega_rate_predicted(s, r), 3 * s.kappa, 1e-15);
            EXPECT_NEAR(omega_rate(c, r, t), 3 * s.kappa, 1e-5 * std::max(1.0, std::abs(s.kappa))) << name << " t " << t;
        }
    }
}

TEST(Omega, RimRadiantRateIsTwo)
{
    auto const circle = make_catalog_curve("circle");
    Radiant const r = Radiant::finite({1, 0});
    for (double t : {0.5, 1.5, 3.0, 5.5})
    {
        EXPECT_NEAR(omega_rate_predicted(frenet_sample(circle, t), r), 2.0, 1e-12);
        EXPECT_NEAR(omega_rate(circle, r, t), 2.0, 1e-5);
    }
}

TEST(Omega, FiniteRadiantRateMatchesPrediction)
{
    auto const ellipse = make_catalog_curve("ellipse");
    Radiant const r = Radiant::finite({0.5, 0.3});
    for (double t : grid_parameters(ellipse, full_grid(ellipse, 40)))
    {
        double const predicted = omega_rate_predicted(frenet_sample(ellipse, t), r);
        EXPECT_NEAR(omega_rate(ellipse, r, t), predicted, 1e-5 * std::max(1.0, std::abs(predicted))) << t;
    }
}

TEST(Omega, SourceAngleOffsetDoublesIntoOmega)
{
    auto const ellipse = make_catalog_curve("ellipse");
    double const delta = 0.4;
    for (double t : {0.2, 1.7, 4.0})
    {
        CurveSample const s = frenet_sample(ellipse, t);
        double const a = omega_angle(s, Radiant::at_infinity(1.0));
        double const b = omega_angle(s, Radiant::at_infinity(1.0 + delta));
        EXPECT_NEAR(wrap_angle(a - b - 2 * delta), 0.0, 1e-12);
    }
}

TEST(Omega, ContactConditionAtCoffeeCupCusp)
{
    auto const circle = make_catalog_curve("circle");
    EXPECT_NEAR(contact_residual(frenet_sample(circle, 0.0), Radiant::at_infinity(pi)), 0.0, 1e-12);
    EXPECT_GT(std::abs(contact_residual(frenet_sample(circle, 1.0), Radiant::at_infinity(pi))), 0.1);
}

TEST(RollingFrames, CoffeeCupEpicycloid)
{
    auto const circle = make_catalog_curve("circle");
    auto const frames = rolling_frames(circle, {Radiant::at_infinity(pi)}, full_grid(circle, 256));
    ASSERT_EQ(frames.size(), 256u);
    for (auto const& f : frames)
    {
        EXPECT_NEAR(f.R, 0.25, 1e-12);
        EXPECT_NEAR(norm(f.center), 0.75, 1e-12);
        EXPECT_NEAR(norm(f.contact), 0.5, 1e-12);
        EXPECT_NEAR(distance(f.contact, f.center), 0.25, 1e-12);
        EXPECT_NEAR(distance(f.traces[0].point, coffee_cup(f.t)), 0.0, 1e-9);
    }
    // beta is the circle of radius 1/2, so its chord sums approach pi.
    EXPECT_NEAR(frames.back().beta_arclen, pi * (1 - 1.0 / 256), 1e-4);
}

TEST(RollingFrames, TwoRoutesAgree)
{
    struct Case
    {
        std::string curve;
        std::vector<Radiant> radiants;
    };
    for (auto const& cs : std::vector<Case>{{"ellipse", {Radiant::at_infinity(75 * pi / 180)}},
                                            {"ellipse", {Radiant::finite({0.5, 0.3})}},
                                            {"circle", {Radiant::finite({0.25, 0})}},
                                            {"deltoid", thirteen_directions()},
                                            {"parabola", {Radiant::at_infinity(pi / 6), Radiant::at_infinity(2.0)}}})
    {
        auto const c = make_catalog_curve(cs.curve);
        for (auto const& f : rolling_frames(c, cs.radiants, full_grid(c, 300)))
        {
            EXPECT_NEAR(distance(f.contact, f.center), std::abs(f.R), 1e-8 * std::max(1.0, std::abs(f.R)));
            for (auto const& tp : f.traces)
            {
                auto const e = caustic_at(c, cs.radiants[tp.radiant_id], f.t);
                ASSERT_TRUE(e);
                EXPECT_NEAR(distance(tp.point, *e), 0.0, 1e-9 * std::max(1.0, std::abs(f.R))) << cs.curve << " t " << f.t;
                EXPECT_NEAR(distance(tp.point, f.center), std::abs(f.R), 1e-8 * std::max(1.0, std::abs(f.R)));
            }
        }
    }
}

TEST(RollingFrames, ParabolaPivotsAboutTheFocus)
{
    auto const parabola = make_catalog_curve("parabola", {{"b", 2.0}});
    for (auto const& f : rolling_frames(parabola, {Radiant::at_infinity(1.0)}, full_grid(parabola, 101)))
    {
        EXPECT_NEAR(distance(f.center, {0, 1.0 / 8}), std::abs(f.R), 1e-12);
        EXPECT_NEAR(distance(f.contact, {0, 1.0 / 8}), 0.0, 1e-11);
    }
}

TEST(RollingFrames, RigidRotationOfSimultaneousTraces)
{
    auto const deltoid = make_catalog_curve("deltoid");
    auto const radiants = thirteen_directions();
    auto const frames = rolling_frames(deltoid, radiants, full_grid(deltoid, 999));
    ASSERT_FALSE(frames.empty());
    auto separation = [](RollingFrame const& f, std::size_t k) {
        return f.traces[k].omega - f.traces[0].omega;
    };
    for (std::size_t k = 1; k < radiants.size(); ++k)
    {
        double const first = separation(frames.front(), k);
        EXPECT_NEAR(std::abs(first), 2 * (radiants[k].theta_src() - radiants[0].theta_src()), 1e-12);
        for (auto const& f : frames)
        {
            EXPECT_NEAR(separation(f, k), first, 1e-8);
            // The same separation seen as an angle about the circle centre.
            double const seen = angle_about(f.center, f.traces[k].point) - angle_about(f.center, f.traces[0].point);
            EXPECT_NEAR(wrap_angle(seen - first), 0.0, 1e-8);
        }
    }
}

TEST(RollingFrames, ContinuousAcrossBetaCusps)
{
    // Interior radiant (0.25, 0): beta has four cusps, yet consecutive
    // circles and contacts move by O(step).
    auto const circle = make_catalog_curve("circle");
    std::size_t const n = 2048;
    auto const frames = rolling_frames(circle, {Radiant::finite({0.25, 0})}, full_grid(circle, n));
    ASSERT_EQ(frames.size(), n);
    double const step = 2 * pi / n;
    for (std::size_t i = 1; i < n; ++i)
    {
        EXPECT_LT(distance(frames[i].center, frames[i - 1].center), 5 * step);
        EXPECT_LT(std::abs(frames[i].R - frames[i - 1].R), 5 * step);
        EXPECT_LT(distance(frames[i].contact, frames[i - 1].contact), 5 * step);
        EXPECT_LT(std::abs(frames[i].omega - frames[i - 1].omega), 5 * step);
    }
}

TEST(RollingFrames, FamilyMustBeShared)
{
    auto const circle = make_catalog_curve("circle");
    SampleGrid const g = full_grid(circle, 64);
    EXPECT_THROW(rolling_frames(circle, {}, g), SceneError);
    EXPECT_THROW(rolling_frames(circle, {Radiant::finite({0.1, 0}), Radiant::finite({0.2, 0})}, g), SceneError);
    EXPECT_THROW(rolling_frames(circle, {Radiant::finite({0.1, 0}), Radiant::at_infinity(0)}, g), SceneError);
    EXPECT_NO_THROW(rolling_frames(circle, {Radiant::finite({0.1, 0}), Radiant::finite({0.1, 0})}, g));
}

TEST(NoSlip, CuspContactsHaveZeroVelocity)
{
    struct Case
    {
        std::string curve;
        std::vector<Radiant> radiants;
        double tol;
        std::size_t expected_min;
    };
    for (auto const& cs : std::vector<Case>{{"circle", {Radiant::at_infinity(pi)}, 1e-6, 2},
                                            {"deltoid", thirteen_directions(), 1e-5, 13},
                                            {"ellipse", {Radiant::at_infinity(75 * pi / 180)}, 1e-5, 2}})
    {
        auto const c = make_catalog_curve(cs.curve);
        auto const frames = rolling_frames(c, cs.radiants, full_grid(c, 999));
        auto const report = no_slip_report(c, cs.radiants, frames);
        EXPECT_GE(report.size(), cs.expected_min) << cs.curve;
        for (auto const& row : report)
        {
            EXPECT_LT(row.gap, 1e-4);
            EXPECT_LT(row.speed, cs.tol) << cs.curve << " radiant " << row.radiant_id << " t " << row.t;
        }
    }
}

TEST(NoSlip, DeltoidSingularPointsAreNotCoincidences)
{
    auto const deltoid = make_catalog_curve("deltoid");
    auto const radiants = thirteen_directions();
    auto const report = no_slip_report(deltoid, radiants, rolling_frames(deltoid, radiants, full_grid(deltoid, 999)));
    for (auto const& row : report)
        for (double cusp : {0.0, 2 * pi / 3, 4 * pi / 3})
            EXPECT_GT(std::abs(wrap_angle(row.t - cusp)), 1e-6);
}
