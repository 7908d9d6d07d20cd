#pragma once

// Reflection geometry at a single mirror point: incidence, the generalized
// mirror equation in reciprocal-diameter form, focal and discriminant
// circles, and the caustic point.
//
// Sign convention: every tangent circle is described by a signed diameter d
// measured along N_left (center = pos + (d/2) N_left), stored as its
// reciprocal u = 1/d. With T' = kappa N_left the mirror equation reads
// u1 + u2 = 2 kappa for either orientation, and u = 0 is a line (radiant or
// focus at infinity).

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "curve.hpp"
#include "error.hpp"
#include "vec2.hpp"

namespace caustics
{

// |u2| below this is a focus at infinity.
inline constexpr double kUFloor = 1e-10;

struct Tolerances
{
    double kappa_floor = kKappaFloor;
    double u_floor = kUFloor;
};

class Radiant
{
  public:
    static Radiant finite(Vec2 point) { return Radiant(true, point, 0.0); }

    // theta_src is the direction from the mirror toward the source; light
    // travels along theta_src + pi.
    static Radiant at_infinity(double theta_src)
    {
        constexpr double two_pi = 2 * std::numbers::pi;
        double th = std::fmod(theta_src, two_pi);
        if (th < 0)
            th += two_pi;
        if (th >= two_pi)
            th = 0.0;
        return Radiant(false, {}, th);
    }

    bool is_finite() const { return finite_; }
    Vec2 point() const { return point_; }
    double theta_src() const { return theta_; }

    friend bool operator==(Radiant const&, Radiant const&) = default;

  private:
    Radiant(bool finite, Vec2 p, double theta) : finite_(finite), point_(p), theta_(theta) {}

    bool finite_;
    Vec2 point_;
    double theta_;
};

struct RayGeometry
{
    double phi = 0.0;    // signed angle from N_left to the toward-source direction
    double sigma1 = 0.0; // direction angle of P -> S
    std::optional<double> D1;
    double u1 = 0.0;
    Vec2 toward_source;
    Vec2 incident_dir;
    Vec2 reflected_dir;
};

inline RayGeometry ray_geometry(CurveSample const& sample, Radiant const& radiant)
{
    RayGeometry g;
    if (radiant.is_finite())
    {
        Vec2 const q = radiant.point() - sample.pos;
        double const d = norm(q);
        if (!(d > 1e-12 * std::max(1.0, norm(sample.pos))))
            throw DegenerateError("degenerate source");
        g.D1 = d;
        g.toward_source = q / d;
        g.sigma1 = angle_of(q);
        g.u1 = dot(q, sample.N_left) / (d * d);
    }
    else
    {
        g.toward_source = polar(radiant.theta_src());
        g.sigma1 = radiant.theta_src();
        g.u1 = 0.0;
    }
    g.phi = std::atan2(cross(sample.N_left, g.toward_source), dot(sample.N_left, g.toward_source));
    g.incident_dir = -g.toward_source;
    g.reflected_dir = g.incident_dir - 2.0 * dot(g.incident_dir, sample.N_left) * sample.N_left;
    return g;
}

// Reciprocal form of the mirror equation: 1/d1 + 1/d2 = 2 kappa.
constexpr double mirror_focus(double u1, double kappa) { return 2.0 * kappa - u1; }

struct FocalCircle
{
    double u2 = 0.0;
    std::optional<double> R; // signed along N_left; empty when the focus is at infinity
    std::optional<double> D2;
    std::optional<Vec2> center;
    std::optional<double> delta; // filled by the envelope engine
    std::optional<double> R_s;   // filled by the envelope engine
    Vec2 contact;

    bool at_infinity() const { return !R.has_value(); }
};

namespace detail
{

inline void require_curved(CurveSample const& sample, Tolerances const& tol)
{
    if (std::abs(sample.kappa) < tol.kappa_floor)
        throw DegenerateError("flat sample: curvature below floor at t = " + std::to_string(sample.t));
}

} // namespace detail

inline FocalCircle focal_circle(CurveSample const& sample, Radiant const& radiant, Tolerances const& tol = {})
{
    detail::require_curved(sample, tol);
    RayGeometry const g = ray_geometry(sample, radiant);
    FocalCircle fc;
    fc.contact = sample.pos;
    fc.u2 = mirror_focus(g.u1, sample.kappa);
    if (std::abs(fc.u2) >= tol.u_floor)
    {
        double const d2 = 1.0 / fc.u2;
        fc.R = 0.5 * d2;
        fc.D2 = d2 * std::cos(g.phi);
        fc.center = sample.pos + (*fc.R) * sample.N_left;
    }
    return fc;
}

struct Circle
{
    Vec2 center;
    double radius = 0.0;
};

// Tangent circle of diameter r/2 on the concave side.
inline Circle discriminant_circle(CurveSample const& sample, Tolerances const& tol = {})
{
    detail::require_curved(sample, tol);
    double const signed_radius = 1.0 / (4.0 * sample.kappa);
    return {sample.pos + signed_radius * sample.N_left, std::abs(signed_radius)};
}

enum class RadiantRegion
{
    outside_cr,            // concave side, beyond the osculating circle C_r
    on_cr,
    inside_cr,             // between C_r and the discriminant circle
    on_discriminant,
    inside_discriminant,
    convex_side,
    on_tangent_line,       // finite radiant on the tangent line (d1 infinite)
    at_infinity,
};

enum class FocusRegion
{
    inside_cr,             // between C_r and the discriminant circle
    on_cr,
    outside_cr,
    at_infinity,
    virtual_convex_side,   // reflected line extended backwards
    on_discriminant,
    inside_discriminant,
};

struct Classification
{
    RadiantRegion radiant;
    FocusRegion focus;
};

/*!
 * Locate the radiant relative to C_r and the discriminant circle at a
 * sample, and the matching location of the focus.
 *
 * Works in the concave frame: v1 = u1 sgn(kappa), k = |kappa|. The focus
 * side follows from u2 = 2k - v1 in the same frame, so the table is a
 * total function of v1.
 */
inline Classification classify_radiant(CurveSample const& sample, Radiant const& radiant, Tolerances const& tol = {})
{
    detail::require_curved(sample, tol);
    if (!radiant.is_finite())
        return {RadiantRegion::at_infinity, FocusRegion::on_discriminant};

    RayGeometry const g = ray_geometry(sample, radiant);
    double const k = std::abs(sample.kappa);
    double const v1 = std::copysign(1.0, sample.kappa) * g.u1;
    double const eps = 1e-9 * k;

    if (std::abs(v1) <= eps)
        return {RadiantRegion::on_tangent_line, FocusRegion::on_discriminant};
    if (v1 < 0)
        return {RadiantRegion::convex_side, FocusRegion::inside_discriminant};
    if (std::abs(v1 - k) <= eps)
        return {RadiantRegion::on_cr, FocusRegion::on_cr};
    if (v1 < k)
        return {RadiantRegion::outside_cr, FocusRegion::inside_cr};
    if (std::abs(v1 - 2 * k) <= eps)
        return {RadiantRegion::on_discriminant, FocusRegion::at_infinity};
    if (v1 < 2 * k)
        return {RadiantRegion::inside_cr, FocusRegion::outside_cr};
    return {RadiantRegion::inside_discriminant, FocusRegion::virtual_convex_side};
}

/*!
 * Focus of the reflected ray at a sample: pos + D2 * reflected_dir with
 * D2 = d2 cos(phi). Negative D2 is the virtual focus behind the mirror.
 * Empty when the focus is at infinity.
 */
inline std::optional<Vec2> caustic_point(CurveSample const& sample, Radiant const& radiant, Tolerances const& tol = {})
{
    detail::require_curved(sample, tol);
    RayGeometry const g = ray_geometry(sample, radiant);
    double const u2 = mirror_focus(g.u1, sample.kappa);
    if (std::abs(u2) < tol.u_floor)
        return std::nullopt;
    double const D2 = std::cos(g.phi) / u2;
    return sample.pos + D2 * g.reflected_dir;
}

} // namespace caustics
