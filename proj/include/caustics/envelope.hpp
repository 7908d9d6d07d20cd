#pragma once

// Second envelope of a family of tangent circles.
//
// For circles tangent to alpha at alpha(s) with signed radius R(s) along
// N_left, the envelope other than alpha is
//
//   beta = alpha + R (1 + cos 2delta) N_left + R sin 2delta T,
//   delta = atan2(R', R kappa - 1),
//
// where ' is d/ds. For a radiant at infinity R = 1/(4 kappa) and this
// reduces to beta = alpha + (N - a T) / (2 kappa (1 + a^2)) with a the
// aberrancy.

#include <cmath>
#include <numbers>

#include "curve.hpp"
#include "error.hpp"
#include "optics.hpp"
#include "vec2.hpp"

namespace caustics
{

struct RadiusProfile
{
    double R = 0.0;
    double R_s = 0.0;
};

/*!
 * Focal radius and its arc-length derivative.
 *
 * At infinity R_s = -kappa_s / (4 kappa^2). For a finite radiant S, with
 * q = S - P, dq/ds = -T and dN/ds = -kappa T give
 *
 *   du1/ds = (q.T)(2 q.N - kappa |q|^2) / |q|^4,
 *
 * hence du2/ds = 2 kappa_s - du1/ds and R_s = -(du2/ds) / (2 u2^2).
 */
inline RadiusProfile radius_profile(CurveSample const& sample, Radiant const& radiant, Tolerances const& tol = {})
{
    FocalCircle const fc = focal_circle(sample, radiant, tol);
    if (fc.at_infinity())
        throw DegenerateError("focus at infinity: focal radius undefined");
    double const kappa = sample.kappa;
    if (!radiant.is_finite())
        return {*fc.R, -sample.kappa_s / (4 * kappa * kappa)};

    Vec2 const q = radiant.point() - sample.pos;
    double const qq = dot(q, q);
    double const du1 = dot(q, sample.T) * (2 * dot(q, sample.N_left) - kappa * qq) / (qq * qq);
    double const du2 = 2 * sample.kappa_s - du1;
    return {*fc.R, -du2 / (2 * fc.u2 * fc.u2)};
}

inline RadiusProfile radius_profile(ParametricCurve const& curve, Radiant const& radiant, double t,
                                    Tolerances const& tol = {})
{
    return radius_profile(frenet_sample(curve, t), radiant, tol);
}

// Chord angle reduced to (-pi/2, pi/2]; only 2 delta enters the envelope.
inline double chord_angle(double R, double R_s, double kappa)
{
    double const x = R * kappa - 1.0;
    if (std::abs(x) < 1e-12 && std::abs(R_s) < 1e-12)
        throw DegenerateError("indeterminate chord angle");
    double delta = std::atan2(R_s, x);
    if (delta > std::numbers::pi / 2)
        delta -= std::numbers::pi;
    else if (delta <= -std::numbers::pi / 2)
        delta += std::numbers::pi;
    return delta;
}

struct BetaSample
{
    double t = 0.0;
    double s = 0.0;
    Vec2 beta;
    double delta = 0.0;
    double R = 0.0;
    bool is_alpha_contact = false;
};

inline BetaSample second_envelope(CurveSample const& sample, RadiusProfile const& profile, double delta)
{
    double const R = profile.R;
    BetaSample b;
    b.t = sample.t;
    b.s = sample.s;
    b.delta = delta;
    b.R = R;
    b.beta = sample.pos + R * (1 + std::cos(2 * delta)) * sample.N_left + R * std::sin(2 * delta) * sample.T;
    b.is_alpha_contact = std::abs(R * sample.kappa - 1) < 1e-8 && std::abs(profile.R_s) > 1e-8;
    return b;
}

// Second envelope of the focal-circle family of a radiant.
inline BetaSample second_envelope(CurveSample const& sample, Radiant const& radiant, Tolerances const& tol = {})
{
    RadiusProfile const p = radius_profile(sample, radiant, tol);
    return second_envelope(sample, p, chord_angle(p.R, p.R_s, sample.kappa));
}

// Common second envelope of every radiant at infinity, from the aberrancy.
inline BetaSample beta_infinity(CurveSample const& sample, Tolerances const& tol = {})
{
    detail::require_curved(sample, tol);
    double const kappa = sample.kappa;
    double const a = *sample.aberrancy;
    BetaSample b;
    b.t = sample.t;
    b.s = sample.s;
    b.R = 1.0 / (4 * kappa);
    b.delta = -std::atan(a);
    b.beta = sample.pos + (1.0 / (2 * kappa * (1 + a * a))) * (sample.N_left - a * sample.T);
    return b;
}

} // namespace caustics
