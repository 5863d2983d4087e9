#pragma once

#include <random>

#include "ampkit/ampkit.hpp"

// Shared fixtures: the BFP640 reference device (rectangular S-parameters at
// 3.2 GHz, Vce = 2 V / Ic = 20 mA) and deterministic random generators for
// property-style tests.

namespace fixtures {

using ampkit::Complex;
using ampkit::TwoPortS;

inline TwoPortS bfp640() {
    return TwoPortS(3.2e9,
                    Complex(-0.301283, 0.1411),   // s11
                    Complex(0.055728, 0.0527),    // s12
                    Complex(3.559701, 6.1905),    // s21
                    Complex(0.055297, -0.1283),   // s22
                    50.0);
}

// The reference design's published match points (3-decimal polar values).
inline Complex printed_gamma_s() { return ampkit::polar_deg(0.734, -157.78); }
inline Complex printed_gamma_l() { return ampkit::polar_deg(0.666, 57.62); }

inline std::mt19937 rng(unsigned seed = 20260808) { return std::mt19937(seed); }

inline Complex random_in_disk(std::mt19937& g, double max_mag = 0.95, double min_mag = 0.0) {
    std::uniform_real_distribution<double> mag(min_mag, max_mag);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * ampkit::pi);
    return std::polar(mag(g), phase(g));
}

inline Complex random_complex(std::mt19937& g, double max_mag = 2.0) {
    return random_in_disk(g, max_mag);
}

// Arbitrary two-port with disk-bounded reflection entries and a forward path
// strong enough to keep the S<->ABCD conversions well conditioned.
inline TwoPortS random_twoport(std::mt19937& g, double freq = 1e9, double z0 = 50.0) {
    std::uniform_real_distribution<double> mag21(0.1, 3.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * ampkit::pi);
    TwoPortS net;
    net.freq = freq;
    net.z0 = z0;
    net.s11 = random_in_disk(g, 0.9);
    net.s22 = random_in_disk(g, 0.9);
    net.s12 = random_in_disk(g, 0.5);
    net.s21 = std::polar(mag21(g), phase(g));
    return net;
}

// Rejection-sampled unconditionally stable device (mu comfortably above 1).
inline TwoPortS random_stable_twoport(std::mt19937& g, double freq = 1e9) {
    for (;;) {
        TwoPortS net;
        net.freq = freq;
        net.z0 = 50.0;
        net.s11 = random_in_disk(g, 0.7);
        net.s22 = random_in_disk(g, 0.7);
        std::uniform_real_distribution<double> mag21(0.5, 4.0);
        std::uniform_real_distribution<double> mag12(0.005, 0.1);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * ampkit::pi);
        net.s21 = std::polar(mag21(g), phase(g));
        net.s12 = std::polar(mag12(g), phase(g));
        const double mu = ampkit::stability::mu_test(net);
        if (mu > 1.0 + 1e-6) return net;
    }
}

// Random reciprocal ABCD block (det = 1 by construction).
inline ampkit::AbcdMatrix random_reciprocal_abcd(std::mt19937& g, double freq = 1e9) {
    ampkit::AbcdMatrix m;
    m.freq = freq;
    for (;;) {
        m.a = random_complex(g, 2.0);
        if (std::abs(m.a) > 0.2) break;
    }
    m.b = random_complex(g, 100.0);
    m.c = random_complex(g, 0.02);
    m.d = (1.0 + m.b * m.c) / m.a;
    return m;
}

} // namespace fixtures
