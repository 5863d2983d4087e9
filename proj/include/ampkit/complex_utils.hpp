#pragma once

#include <cmath>
#include <complex>

#include "ampkit/constants.hpp"

namespace ampkit {

using Complex = std::complex<double>;

// Magnitude/angle pair with the angle in degrees. All user-facing I/O talks
// degrees; the library computes in radians.
struct Polar {
    double mag = 0.0;
    double deg = 0.0;
};

inline Complex from_polar(const Polar& p) {
    return std::polar(p.mag, deg2rad(p.deg));
}

inline Complex polar_deg(double mag, double deg) {
    return std::polar(mag, deg2rad(deg));
}

inline Polar to_polar(const Complex& c) {
    return {std::abs(c), rad2deg(std::arg(c))};
}

inline double arg_deg(const Complex& c) { return rad2deg(std::arg(c)); }

// Power-ratio decibels (gains, noise factors).
inline double db10(double power_ratio) { return 10.0 * std::log10(power_ratio); }
inline double undb10(double db) { return std::pow(10.0, db / 10.0); }

// Wave-magnitude decibels (|S| values).
inline double db20(double magnitude) { return 20.0 * std::log10(magnitude); }
inline double undb20(double db) { return std::pow(10.0, db / 20.0); }

} // namespace ampkit
