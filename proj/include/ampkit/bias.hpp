#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ampkit/errors.hpp"

// Four-resistor voltage-divider bias network for a grounded-emitter BJT:
// supply -> R4 -> collector, supply -> R2 -> divider tap, tap -> R1 -> ground,
// tap -> R3 -> base. Designed from the target operating point and verified by
// re-solving the DC node equations.

namespace ampkit::bias {

struct BiasSpec {
    double v_supply = 5.0;        // V
    double v_x = 1.5;             // divider tap voltage, V
    double v_ce = 2.0;            // V
    double i_c = 20.0;            // mA
    double v_be = 0.8;            // V
    double beta = 200.0;          // DC current gain
    double divider_ratio_k = 50.0;  // I_X = k * I_B

    void validate() const {
        if (!(v_supply > v_ce) || !(v_ce > 0.0))
            throw InfeasibleSpec("bias: require v_supply > v_ce > 0");
        if (!(v_x > v_be))
            throw InfeasibleSpec("bias: divider tap voltage must exceed v_be");
        if (!(i_c > 0.0) || !(beta > 0.0) || !(divider_ratio_k > 0.0))
            throw InfeasibleSpec("bias: i_c, beta and divider ratio must be positive");
        if (!(v_supply > v_x))
            throw InfeasibleSpec("bias: divider tap voltage must be below the supply");
    }
};

struct BiasDesignResult {
    double r1 = 0.0;  // tap to ground, ohm
    double r2 = 0.0;  // supply to tap
    double r3 = 0.0;  // tap to base
    double r4 = 0.0;  // supply to collector
    double i_b = 0.0;       // mA
    double i_x = 0.0;       // mA
    double verified_ic = 0.0;   // mA, from the node-equation re-solve
    double verified_vce = 0.0;  // V
};

enum class ESeries { E12, E24, Exact };

// Re-solve the DC operating point from the resistor values alone.
// Tap-node KCL: (v_supply - v_x)/r2 = v_x/r1 + i_b with i_b = (v_x - v_be)/r3.
inline std::pair<double, double> verify_bias(const BiasDesignResult& result, const BiasSpec& spec) {
    if (!(result.r1 > 0.0) || !(result.r2 > 0.0) || !(result.r3 > 0.0) || result.r4 < 0.0)
        throw InfeasibleSpec("verify_bias: resistances must be positive");
    // Linear in v_x: v_supply/r2 + v_be/r3 = v_x (1/r1 + 1/r2 + 1/r3)
    const double rhs = spec.v_supply / result.r2 + spec.v_be / result.r3;
    const double conductance = 1.0 / result.r1 + 1.0 / result.r2 + 1.0 / result.r3;
    const double v_x = rhs / conductance;
    if (v_x <= spec.v_be)
        throw NoOperatingPoint("verify_bias: divider tap settles below v_be, transistor in cutoff");
    const double i_b_ma = (v_x - spec.v_be) / result.r3 * 1e3;
    const double i_c_ma = spec.beta * i_b_ma;
    const double v_ce = spec.v_supply - i_c_ma * 1e-3 * result.r4;
    return {i_c_ma, v_ce};
}

inline BiasDesignResult design_bias(const BiasSpec& spec) {
    spec.validate();
    BiasDesignResult r;
    r.i_b = spec.i_c / spec.beta;             // mA
    r.i_x = spec.divider_ratio_k * r.i_b;     // mA
    r.r1 = spec.v_x / (r.i_x * 1e-3);
    r.r2 = (spec.v_supply - spec.v_x) / ((r.i_x + r.i_b) * 1e-3);
    r.r3 = (spec.v_x - spec.v_be) / (r.i_b * 1e-3);
    r.r4 = (spec.v_supply - spec.v_ce) / (spec.i_c * 1e-3);
    if (!(r.r1 > 0.0) || !(r.r2 > 0.0) || !(r.r3 > 0.0) || !(r.r4 > 0.0) ||
        !std::isfinite(r.r1) || !std::isfinite(r.r2) || !std::isfinite(r.r3) || !std::isfinite(r.r4))
        throw InfeasibleSpec("design_bias: spec yields a non-positive or non-finite resistance");
    const auto [ic, vce] = verify_bias(r, spec);
    r.verified_ic = ic;
    r.verified_vce = vce;
    return r;
}

namespace detail {

inline constexpr std::array<double, 12> e12 = {1.0, 1.2, 1.5, 1.8, 2.2, 2.7,
                                               3.3, 3.9, 4.7, 5.6, 6.8, 8.2};
inline constexpr std::array<double, 24> e24 = {1.0, 1.1, 1.2, 1.3, 1.5, 1.6, 1.8, 2.0,
                                               2.2, 2.4, 2.7, 3.0, 3.3, 3.6, 3.9, 4.3,
                                               4.7, 5.1, 5.6, 6.2, 6.8, 7.5, 8.2, 9.1};

// Nearest preferred value by log distance (the natural metric for a
// geometric series; 300 is equidistant from E12's 270 and 330 in absolute
// terms but closer to 330 in ratio).
template <size_t N>
inline double snap(double value, const std::array<double, N>& series) {
    const double decade = std::pow(10.0, std::floor(std::log10(value)));
    double best = series[0] * decade;
    double best_dist = std::abs(std::log(value / best));
    for (const double scale : {decade / 10.0, decade, decade * 10.0}) {
        for (const double m : series) {
            const double candidate = m * scale;
            const double dist = std::abs(std::log(value / candidate));
            if (dist < best_dist) {
                best = candidate;
                best_dist = dist;
            }
        }
    }
    return best;
}

} // namespace detail

inline double snap_to_series(double value, ESeries series) {
    switch (series) {
    case ESeries::E12: return detail::snap(value, detail::e12);
    case ESeries::E24: return detail::snap(value, detail::e24);
    case ESeries::Exact: return value;
    }
    return value;
}

// Snap every resistor to the chosen preferred-number series and re-verify
// the operating point with the rounded values. Branch currents are re-derived
// from the re-solved point, not the design targets.
inline BiasDesignResult round_to_series(const BiasDesignResult& result, const BiasSpec& spec,
                                        ESeries series) {
    BiasDesignResult r = result;
    r.r1 = snap_to_series(result.r1, series);
    r.r2 = snap_to_series(result.r2, series);
    r.r3 = snap_to_series(result.r3, series);
    r.r4 = snap_to_series(result.r4, series);
    const auto [ic, vce] = verify_bias(r, spec);
    r.verified_ic = ic;
    r.verified_vce = vce;
    r.i_b = ic / spec.beta;
    const double v_x = spec.v_be + r.i_b * 1e-3 * r.r3;
    r.i_x = v_x / r.r1 * 1e3;
    return r;
}

inline const char* series_name(ESeries s) {
    switch (s) {
    case ESeries::E12: return "E12";
    case ESeries::E24: return "E24";
    case ESeries::Exact: return "exact";
    }
    return "exact";
}

} // namespace ampkit::bias
