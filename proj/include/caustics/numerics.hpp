#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace caustics
{

struct Minimum
{
    double x = 0.0;
    double value = 0.0;
};

// Golden-section search on [a, b]; assumes f unimodal there.
template<class F>
Minimum golden_section_minimize(F&& f, double a, double b, double tol)
{
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol)
    {
        if (fc <= fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double const x = 0.5 * (a + b);
    double const fx = f(x);
    if (fx <= fc && fx <= fd)
        return {x, fx};
    return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

// Five-point central difference; works for any type with affine arithmetic.
template<class F>
auto central_difference(F&& f, double t, double h)
{
    return (-1.0 * f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

} // namespace caustics
