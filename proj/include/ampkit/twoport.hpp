#pragma once

#include <cmath>
#include <string>

#include "ampkit/complex_utils.hpp"
#include "ampkit/constants.hpp"
#include "ampkit/errors.hpp"

// Two-port representations and the algebra shared by every design stage.
// S-matrices describe measured devices; ABCD form is used internally because
// cascading is a plain matrix product.

namespace ampkit {

// 2x2 scattering matrix at a single frequency, referenced to a real z0.
struct TwoPortS {
    double freq = 0.0;  // Hz
    Complex s11, s12, s21, s22;
    double z0 = 50.0;  // ohm

    TwoPortS() = default;

    TwoPortS(double freq_hz, Complex s11_, Complex s12_, Complex s21_, Complex s22_,
             double z0_ohm = 50.0)
        : freq(freq_hz), s11(s11_), s12(s12_), s21(s21_), s22(s22_), z0(z0_ohm) {
        if (!(z0 > 0.0))
            throw Error("TwoPortS: reference impedance must be positive");
        if (!(freq > 0.0))
            throw Error("TwoPortS: frequency must be positive");
    }
};

// Chain (ABCD) matrix: a, d dimensionless, b in ohm, c in siemens.
struct AbcdMatrix {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};
    Complex c{0.0, 0.0};
    Complex d{1.0, 0.0};
    double freq = 0.0;  // Hz

    static AbcdMatrix identity(double freq_hz) { return {Complex(1), Complex(0), Complex(0), Complex(1), freq_hz}; }

    Complex det() const { return a * d - b * c; }
};

inline AbcdMatrix s_to_abcd(const TwoPortS& net) {
    const Complex s11 = net.s11, s12 = net.s12, s21 = net.s21, s22 = net.s22;
    if (std::abs(s21) < tol::denom)
        throw DegenerateNetwork("s_to_abcd: s21 vanishes, chain parameters undefined");
    const double z0 = net.z0;
    const Complex two_s21 = 2.0 * s21;
    AbcdMatrix m;
    m.a = ((1.0 + s11) * (1.0 - s22) + s12 * s21) / two_s21;
    m.b = z0 * ((1.0 + s11) * (1.0 + s22) - s12 * s21) / two_s21;
    m.c = ((1.0 - s11) * (1.0 - s22) - s12 * s21) / (two_s21 * z0);
    m.d = ((1.0 - s11) * (1.0 + s22) + s12 * s21) / two_s21;
    m.freq = net.freq;
    return m;
}

inline TwoPortS abcd_to_s(const AbcdMatrix& m, double z0) {
    if (!(z0 > 0.0))
        throw Error("abcd_to_s: reference impedance must be positive");
    const Complex den = m.a + m.b / z0 + m.c * z0 + m.d;
    if (std::abs(den) < tol::denom)
        throw DegenerateNetwork("abcd_to_s: conversion denominator vanishes");
    TwoPortS net;
    net.freq = m.freq;
    net.z0 = z0;
    net.s11 = (m.a + m.b / z0 - m.c * z0 - m.d) / den;
    net.s21 = 2.0 / den;
    net.s12 = 2.0 * m.det() / den;
    net.s22 = (-m.a + m.b / z0 - m.c * z0 + m.d) / den;
    return net;
}

inline AbcdMatrix cascade(const AbcdMatrix& left, const AbcdMatrix& right) {
    if (std::abs(left.freq - right.freq) > tol::freq_match_hz)
        throw FrequencyMismatch("cascade: blocks evaluated at different frequencies (" +
                                std::to_string(left.freq) + " Hz vs " + std::to_string(right.freq) +
                                " Hz)");
    AbcdMatrix m;
    m.a = left.a * right.a + left.b * right.c;
    m.b = left.a * right.b + left.b * right.d;
    m.c = left.c * right.a + left.d * right.c;
    m.d = left.c * right.b + left.d * right.d;
    m.freq = left.freq;
    return m;
}

// Reflection coefficient -> impedance, z = z0 (1 + gamma) / (1 - gamma).
inline Complex gamma_to_z(const Complex& gamma, double z0) {
    const Complex den = 1.0 - gamma;
    if (std::abs(den) <= tol::round_trip)
        throw OpenCircuit("gamma_to_z: gamma = 1 maps to an open circuit");
    return z0 * (1.0 + gamma) / den;
}

inline Complex z_to_gamma(const Complex& z, double z0) {
    const Complex den = z + z0;
    if (std::abs(den) < tol::denom)
        throw DegenerateNetwork("z_to_gamma: z = -z0 has no reflection coefficient");
    return (z - z0) / den;
}

// Gamma seen at port 1 with the output terminated in gamma_l.
inline Complex input_reflection(const TwoPortS& net, const Complex& gamma_l) {
    const Complex den = 1.0 - net.s22 * gamma_l;
    if (std::abs(den) < tol::denom)
        throw DegenerateNetwork("input_reflection: 1 - s22*gamma_l vanishes");
    return net.s11 + net.s12 * net.s21 * gamma_l / den;
}

// Gamma seen at port 2 with the input terminated in gamma_s.
inline Complex output_reflection(const TwoPortS& net, const Complex& gamma_s) {
    const Complex den = 1.0 - net.s11 * gamma_s;
    if (std::abs(den) < tol::denom)
        throw DegenerateNetwork("output_reflection: 1 - s11*gamma_s vanishes");
    return net.s22 + net.s12 * net.s21 * gamma_s / den;
}

} // namespace ampkit
