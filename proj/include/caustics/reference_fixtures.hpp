#pragma once

// Generated by tests/oracles/make_fixtures.py. Do not edit by hand.

#include <array>

namespace caustics::fixtures
{

// Deltoid (2cos t + cos 2t, 2sin t - sin 2t) at t = 1, orders 0..3.
inline constexpr std::array<std::array<double, 2>, 4> kDeltoidDerivativesAt1{{
    {0.6644577751891371, 0.7736445427901113},
    {-3.5015368232671564, 1.9128982848305642},
    {0.5839827344522901, 1.9542477376869338},
    {8.957321384221247, -4.409779304113418},
}};

// Arc length of (2cos t, sin t) over [0, pi/2].
inline constexpr double kEllipseQuarterArcLength = 2.422112055136919;

struct AstroidFit
{
    double source_deg;
    double center_x;
    double center_y;
    double scale;
    double rotation;
    double fit_residual;
};

// Least-squares astroid fits of the deltoid caustic, one per source direction.
inline constexpr std::array<AstroidFit, 8> kDeltoidAstroids{{
    {10.0, -0.9396926207859067, 0.34202014332566755, 4.000000000000004, 1.4835298641951802, 2.3982996559564017e-13},
    {30.0, -0.5000000000000003, 0.8660254037844375, 4.000000000000002, 1.3089969389957474, 1.9303531728422058e-13},
    {55.0, 0.3420201433256695, 0.9396926207859104, 3.9999999999999956, 1.090830782496456, 3.8951180795152774e-13},
    {75.0, 0.8660254037844373, 0.49999999999999883, 4.0000000000000036, 0.916297857297023, 4.3839613184325275e-13},
    {100.0, 0.9396926207859067, -0.34202014332566755, 4.000000000000004, 0.698131700797732, 3.6532674342982775e-13},
    {120.0, 0.5000000000000003, -0.8660254037844374, 4.000000000000002, 0.5235987755982991, 3.3843006965142e-13},
    {145.0, -0.34202014332566955, -0.9396926207859104, 3.9999999999999956, 0.30543261909900765, 5.011278639346228e-13},
    {170.0, -0.9396926207859067, -0.34202014332566755, 4.000000000000004, 0.08726646259971635, 3.111557246362443e-13},
}};

} // namespace caustics::fixtures
