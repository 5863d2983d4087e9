#pragma once

#include <cmath>
#include <string>

#include "ampkit/constants.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/matchsynth.hpp"

// Quasi-static microstrip model (Hammerstad-Jensen closed forms with
// conductor-thickness correction). No dispersion model: intended for the
// low single-digit GHz range on thin laminates, where the quasi-static
// values are accurate to well under a percent.

namespace ampkit::microstrip {

struct Substrate {
    double eps_r = 1.0;  // relative permittivity, >= 1
    double h = 1.0;      // dielectric height, mm
    double t = 0.0;      // conductor thickness, um
    std::string name;

    Substrate() = default;
    Substrate(double eps_r_, double h_mm, double t_um, std::string name_ = {})
        : eps_r(eps_r_), h(h_mm), t(t_um), name(std::move(name_)) {
        if (!(eps_r >= 1.0)) throw Error("Substrate: eps_r must be >= 1");
        if (!(h > 0.0)) throw Error("Substrate: height must be positive");
        if (t < 0.0) throw Error("Substrate: conductor thickness must be >= 0");
    }

    // Rogers RO4003C, 32 mil core, 1/2 oz copper.
    static Substrate ro4003c() { return {3.38, 0.813, 17.0, "RO4003C"}; }
};

struct MicrostripLine {
    double w = 0.0;          // trace width, mm
    double length_mm = 0.0;
    Substrate substrate;
    double z0 = 0.0;         // achieved characteristic impedance, ohm
    double eps_eff = 1.0;
    double electrical_length = 0.0;  // fraction of guided wavelength, when realized
};

struct AnalysisResult {
    double z0 = 0.0;
    double eps_eff = 1.0;
};

namespace detail {

// Characteristic impedance of the air-filled line, u = w/h.
inline double z01_air(double u) {
    const double f = 6.0 + (2.0 * pi - 6.0) * std::exp(-std::pow(30.666 / u, 0.7528));
    return eta0 / (2.0 * pi) * std::log(f / u + std::sqrt(1.0 + 4.0 / (u * u)));
}

inline double eps_eff_static(double u, double eps_r) {
    const double a = 1.0 +
                     std::log((std::pow(u, 4) + std::pow(u / 52.0, 2)) / (std::pow(u, 4) + 0.432)) / 49.0 +
                     std::log(1.0 + std::pow(u / 18.1, 3)) / 18.7;
    const double b = 0.564 * std::pow((eps_r - 0.9) / (eps_r + 3.0), 0.053);
    return (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 * std::pow(1.0 + 10.0 / u, -a * b);
}

} // namespace detail

// w in mm; frequency is accepted for interface symmetry but does not enter
// the quasi-static model.
inline AnalysisResult analyze(double w, const Substrate& sub, double /*freq*/ = 0.0) {
    const double u = w / sub.h;
    if (u < 0.01 || u > 100.0)
        throw AspectRatioOutOfRange("analyze: w/h = " + std::to_string(u) +
                                    " outside [0.01, 100]");

    double u1 = u, ur = u;
    const double t_norm = (sub.t * 1e-3) / sub.h;  // um -> mm, then normalize
    if (t_norm > 0.0) {
        const double coth = 1.0 / std::tanh(std::sqrt(6.517 * u));
        const double du1 = t_norm / pi * std::log(1.0 + 4.0 * std::exp(1.0) / (t_norm * coth * coth));
        const double dur = sub.eps_r > 1.0
                               ? du1 / 2.0 * (1.0 + 1.0 / std::cosh(std::sqrt(sub.eps_r - 1.0)))
                               : du1;
        u1 = u + du1;
        ur = u + dur;
    }

    const double ee = detail::eps_eff_static(ur, sub.eps_r);
    const double z0 = detail::z01_air(ur) / std::sqrt(ee);
    double ee_corr = ee * std::pow(detail::z01_air(u1) / detail::z01_air(ur), 2);
    if (ee_corr < 1.0) ee_corr = 1.0;

    return {z0, ee_corr};
}

// Width for a target impedance, by bisection on analyze(); z0 is monotone
// decreasing in width.
inline MicrostripLine synthesize(double z0_target, const Substrate& sub, double freq = 0.0) {
    if (z0_target < 10.0 || z0_target > 200.0)
        throw TargetOutOfRange("synthesize: target " + std::to_string(z0_target) +
                               " ohm outside [10, 200]");
    double u_lo = 0.01, u_hi = 100.0;
    const double z_at_lo = analyze(u_lo * sub.h, sub, freq).z0;
    const double z_at_hi = analyze(u_hi * sub.h, sub, freq).z0;
    if (z0_target > z_at_lo || z0_target < z_at_hi)
        throw TargetOutOfRange("synthesize: " + std::to_string(z0_target) +
                               " ohm not bracketed by w/h in [0.01, 100] (" +
                               std::to_string(z_at_hi) + " .. " + std::to_string(z_at_lo) + " ohm)");

    AnalysisResult res;
    double u_mid = u_lo;
    for (int iter = 0; iter < 200; ++iter) {
        u_mid = std::sqrt(u_lo * u_hi);  // bisect in log space
        res = analyze(u_mid * sub.h, sub, freq);
        if (std::abs(res.z0 - z0_target) < tol::microstrip_z0_ohm) break;
        if (res.z0 > z0_target)
            u_lo = u_mid;
        else
            u_hi = u_mid;
    }
    if (std::abs(res.z0 - z0_target) >= tol::microstrip_z0_ohm)
        throw TargetOutOfRange("synthesize: bisection failed to converge");

    MicrostripLine line;
    line.w = u_mid * sub.h;
    line.substrate = sub;
    line.z0 = res.z0;
    line.eps_eff = res.eps_eff;
    return line;
}

// Electrical length (fraction of lambda) -> physical length in mm.
inline double electrical_to_physical(double len_frac, double eps_eff, double freq) {
    if (len_frac < 0.0) throw Error("electrical_to_physical: negative length");
    if (!(eps_eff >= 1.0)) throw Error("electrical_to_physical: eps_eff must be >= 1");
    if (!(freq > 0.0)) throw Error("electrical_to_physical: frequency must be positive");
    return len_frac * c0 / (freq * std::sqrt(eps_eff)) * 1e3;  // m -> mm
}

struct RealizedStubNetwork {
    MicrostripLine line;
    MicrostripLine stub;
};

// Physical realization of a stub solution: both sections synthesized at the
// solution's characteristic impedance, lengths converted with the realized
// width's effective permittivity.
inline RealizedStubNetwork realize_stub_network(const synth::StubSolution& sol,
                                                const Substrate& sub, double freq) {
    MicrostripLine proto = synthesize(sol.z0, sub, freq);

    RealizedStubNetwork net;
    net.line = proto;
    net.line.electrical_length = sol.line_len;
    net.line.length_mm = electrical_to_physical(sol.line_len, proto.eps_eff, freq);
    net.stub = proto;
    net.stub.electrical_length = sol.stub_len;
    net.stub.length_mm = electrical_to_physical(sol.stub_len, proto.eps_eff, freq);
    return net;
}

} // namespace ampkit::microstrip
