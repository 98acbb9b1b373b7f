#pragma once
#include <cmath>
#include <numbers>

// Small angle utilities shared across the library.

namespace samrot {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// reduce to [0, 2*pi)
inline double wrap_two_pi(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    // fmod of a tiny negative can round up to exactly 2*pi
    if (r >= two_pi) r = 0;
    return r;
}

// principal difference in (-pi, pi], for comparing angles across the seam
inline double angle_diff(double a, double b) {
    double d = std::remainder(a - b, two_pi);
    return d;
}

inline double deg2rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / std::numbers::pi; }
inline double arcsec2rad(double a) { return deg2rad(a / 3600.0); }

} // namespace samrot
