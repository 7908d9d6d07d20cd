#pragma once

#include <cmath>
#include <numbers>
#include <ostream>

namespace caustics
{

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o)
    {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(Vec2 o)
    {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr Vec2& operator*=(double k)
    {
        x *= k;
        y *= k;
        return *this;
    }

    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
constexpr Vec2 operator/(Vec2 a, double k) { return {a.x / k, a.y / k}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// z-component of the 3-D cross product.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// Rotation by +pi/2.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }
inline Vec2 unit(Vec2 a) { return a / norm(a); }
inline Vec2 polar(double angle) { return {std::cos(angle), std::sin(angle)}; }

inline Vec2 rotate(Vec2 a, double angle)
{
    double const c = std::cos(angle);
    double const s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

// Reduce an angle to (-pi, pi].
inline double wrap_angle(double a)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    a = std::remainder(a, two_pi);
    if (a <= -std::numbers::pi)
        a += two_pi;
    return a;
}

inline std::ostream& operator<<(std::ostream& os, Vec2 v)
{
    return os << '(' << v.x << ", " << v.y << ')';
}

} // namespace caustics
