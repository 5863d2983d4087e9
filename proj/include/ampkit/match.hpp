#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ampkit/complex_utils.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/stability.hpp"
#include "ampkit/twoport.hpp"

// Simultaneous conjugate match and the transducer-gain decomposition, plus
// the two-port noise model (Fmin / gamma_opt / rn) and constant-noise
// circles.

namespace ampkit::match {

struct GainBlocks {
    double gs = 0.0;  // source block, linear power ratio
    double g0 = 0.0;  // intrinsic |s21|^2
    double gl = 0.0;  // load block
    double gt = 0.0;  // transducer gain, gs*g0*gl
};

struct MatchDesign {
    std::array<Complex, 2> gamma_s_roots;  // [selected |.|<1, companion]
    std::array<Complex, 2> gamma_l_roots;
    Complex gamma_s;  // selected source match
    Complex gamma_l;  // selected load match
    double b1 = 0.0, b2 = 0.0;
    Complex c1, c2;
    GainBlocks gains;  // evaluated at the selected match point
};

struct NoiseParams {
    double f_min = 1.0;   // linear power ratio, >= 1
    Complex gamma_opt;    // |gamma_opt| < 1
    double r_n = 0.0;     // ohm
    double freq = 0.0;    // Hz the parameters are valid at
};

struct NoiseCircle {
    double f_target = 1.0;  // linear ratio
    Complex center;
    double radius = 0.0;
};

namespace detail {

// Both roots of gamma = (B +- sqrt(B^2 - 4|C|^2)) / (2C), in-disk root first.
inline std::array<Complex, 2> match_roots(double b, const Complex& c, const char* which) {
    if (std::abs(c) < tol::denom)
        throw DegenerateNetwork(std::string("conjugate_match: C") + which + " vanishes");
    const double disc = b * b - 4.0 * std::norm(c);
    if (disc < 0.0)
        throw NegativeDiscriminant(std::string("conjugate_match: B") + which +
                                   "^2 - 4|C" + which + "|^2 < 0");
    const double sq = std::sqrt(disc);
    Complex minus = (b - sq) / (2.0 * c);
    Complex plus = (b + sq) / (2.0 * c);
    // In-disk root first; tie toward smaller magnitude, then smaller |phase|.
    if (std::abs(plus) < std::abs(minus)) std::swap(minus, plus);
    if (std::abs(minus) == std::abs(plus) &&
        std::abs(std::arg(plus)) < std::abs(std::arg(minus)))
        std::swap(minus, plus);
    return {minus, plus};
}

} // namespace detail

// Transducer-gain decomposition, bilateral form: the source block uses the
// input reflection seen with the actual load, so that gs*g0*gl is the exact
// transducer gain for any termination pair, matched or not.
inline GainBlocks gain_blocks(const TwoPortS& net, const Complex& gamma_s, const Complex& gamma_l) {
    if (std::abs(gamma_s) >= 1.0 || std::abs(gamma_l) >= 1.0)
        throw ReflectionOutOfDisk("gain_blocks: termination reflection outside the unit disk");
    const Complex gamma_in = input_reflection(net, gamma_l);
    const Complex den_s = 1.0 - gamma_in * gamma_s;
    const Complex den_l = 1.0 - net.s22 * gamma_l;
    if (std::abs(den_s) < tol::denom || std::abs(den_l) < tol::denom)
        throw DegenerateNetwork("gain_blocks: termination denominator vanishes");
    GainBlocks g;
    g.gs = (1.0 - std::norm(gamma_s)) / std::norm(den_s);
    g.g0 = std::norm(net.s21);
    g.gl = (1.0 - std::norm(gamma_l)) / std::norm(den_l);
    g.gt = g.gs * g.g0 * g.gl;
    return g;
}

inline MatchDesign conjugate_match(const TwoPortS& net) {
    const double k = stability::k_factor(net);
    const double dmag = std::abs(stability::delta(net));
    if (!(k > 1.0) || !(dmag < 1.0))
        throw PotentiallyUnstable(
            "conjugate_match: device is not unconditionally stable (K=" + std::to_string(k) +
            ", |delta|=" + std::to_string(dmag) +
            "); a simultaneous conjugate match does not exist -- consult the stability circles");

    const Complex d = stability::delta(net);
    MatchDesign md;
    md.b1 = 1.0 + std::norm(net.s11) - std::norm(net.s22) - std::norm(d);
    md.b2 = 1.0 + std::norm(net.s22) - std::norm(net.s11) - std::norm(d);
    md.c1 = net.s11 - d * std::conj(net.s22);
    md.c2 = net.s22 - d * std::conj(net.s11);
    md.gamma_s_roots = detail::match_roots(md.b1, md.c1, "1");
    md.gamma_l_roots = detail::match_roots(md.b2, md.c2, "2");
    md.gamma_s = md.gamma_s_roots[0];
    md.gamma_l = md.gamma_l_roots[0];
    if (std::abs(md.gamma_s) >= 1.0 || std::abs(md.gamma_l) >= 1.0)
        throw PotentiallyUnstable("conjugate_match: no in-disk root; device not matchable");

    // Simultaneous-match fixed point: each port sees the conjugate of its
    // own termination.
    const Complex gin = input_reflection(net, md.gamma_l);
    const Complex gout = output_reflection(net, md.gamma_s);
    if (std::abs(gin - std::conj(md.gamma_s)) > tol::synth_residual ||
        std::abs(gout - std::conj(md.gamma_l)) > tol::synth_residual)
        throw InternalInconsistency(
            "conjugate_match: selected roots do not satisfy the conjugate fixed point");

    md.gains = gain_blocks(net, md.gamma_s, md.gamma_l);
    return md;
}

// Maximum transducer gain, linear. Computed from the gain blocks at the
// simultaneous match and cross-checked against |s21|/|s12| * (K - sqrt(K^2-1)).
inline double max_transducer_gain(const TwoPortS& net) {
    const MatchDesign md = conjugate_match(net);
    const double via_blocks = md.gains.gt;
    const double k = stability::k_factor(net);
    double via_k = via_blocks;
    if (std::isfinite(k)) {
        // K - sqrt(K^2-1) evaluated as 1/(K + sqrt(K^2-1)); the direct
        // difference cancels catastrophically for K >> 1.
        via_k = std::abs(net.s21) / std::abs(net.s12) / (k + std::sqrt(k * k - 1.0));
        if (std::abs(db10(via_blocks) - db10(via_k)) > 0.01)
            throw InternalInconsistency(
                "max_transducer_gain: block decomposition and K-form disagree (" +
                std::to_string(db10(via_blocks)) + " dB vs " + std::to_string(db10(via_k)) + " dB)");
    }
    return via_blocks;
}

// F = Fmin + (4 rn / z0) |gamma_s - gamma_opt|^2 / ((1 - |gamma_s|^2) |1 + gamma_opt|^2)
inline double noise_figure(const Complex& gamma_s, const NoiseParams& np, double z0) {
    if (std::abs(gamma_s) >= 1.0)
        throw ReflectionOutOfDisk("noise_figure: source reflection outside the unit disk");
    const double num = std::norm(gamma_s - np.gamma_opt);
    const double den = (1.0 - std::norm(gamma_s)) * std::norm(1.0 + np.gamma_opt);
    return np.f_min + (4.0 * np.r_n / z0) * num / den;
}

inline NoiseCircle noise_circle(double f_target, const NoiseParams& np, double z0) {
    if (f_target < np.f_min)
        throw TargetBelowFmin("noise_circle: target noise factor " + std::to_string(f_target) +
                              " below Fmin " + std::to_string(np.f_min));
    NoiseCircle nc;
    nc.f_target = f_target;
    if (np.r_n <= 0.0) {
        // rn = 0 makes F flat at Fmin; only the Fmin "circle" (the whole
        // chart collapsed onto gamma_opt's level set) is meaningful.
        if (f_target > np.f_min)
            throw NoSolution("noise_circle: rn = 0, noise factor never exceeds Fmin");
        nc.center = np.gamma_opt;
        nc.radius = 0.0;
        return nc;
    }
    const double n = (f_target - np.f_min) * std::norm(1.0 + np.gamma_opt) * z0 / (4.0 * np.r_n);
    nc.center = np.gamma_opt / (1.0 + n);
    nc.radius = std::sqrt(n * n + n * (1.0 - std::norm(np.gamma_opt))) / (1.0 + n);
    return nc;
}

} // namespace ampkit::match
