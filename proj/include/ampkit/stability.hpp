#pragma once

#include <cmath>
#include <limits>

#include "ampkit/complex_utils.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/twoport.hpp"

// Stability classification of a two-port: K-delta test, mu-test and the
// source/load stability circles in the reflection-coefficient plane.

namespace ampkit::stability {

enum class Verdict { Unconditional, Conditional };
enum class StableRegion { InsideCircle, OutsideCircle };

// Locus where the opposite port's reflection magnitude is exactly 1.
struct StabilityCircle {
    Complex center;        // gamma plane
    double radius = 0.0;
    StableRegion stable_region = StableRegion::OutsideCircle;
};

struct StabilityReport {
    Complex delta;
    double delta_mag = 0.0;
    double k = 0.0;
    double mu = 0.0;
    double mu_prime = 0.0;  // load-side dual
    Verdict verdict = Verdict::Conditional;
    bool boundary = false;    // within the guard band of a test boundary
    bool unilateral = false;  // |s12*s21| below threshold, K reported as +/-inf
    StabilityCircle source_circle;
    StabilityCircle load_circle;
};

inline Complex delta(const TwoPortS& net) { return net.s11 * net.s22 - net.s12 * net.s21; }

// Rollett factor. For a unilateral device the denominator vanishes and K is
// reported as a signed infinity carrying the numerator's sign, which keeps
// the K-delta verdict consistent with the mu-test.
inline double k_factor(const TwoPortS& net) {
    const double num =
        1.0 - std::norm(net.s11) - std::norm(net.s22) + std::norm(delta(net));
    const double den = 2.0 * std::abs(net.s12 * net.s21);
    if (den < tol::denom)
        return std::copysign(std::numeric_limits<double>::infinity(), num);
    return num / den;
}

inline double mu_test(const TwoPortS& net) {
    const Complex d = delta(net);
    const double den = std::abs(net.s22 - d * std::conj(net.s11)) + std::abs(net.s12 * net.s21);
    if (den < tol::denom)
        throw DegenerateNetwork("mu_test: denominator vanishes");
    return (1.0 - std::norm(net.s11)) / den;
}

inline double mu_prime_test(const TwoPortS& net) {
    const Complex d = delta(net);
    const double den = std::abs(net.s11 - d * std::conj(net.s22)) + std::abs(net.s12 * net.s21);
    if (den < tol::denom)
        throw DegenerateNetwork("mu_prime_test: denominator vanishes");
    return (1.0 - std::norm(net.s22)) / den;
}

namespace detail {

inline StabilityCircle make_circle(const Complex& c_num, double r_num, double den,
                                   bool origin_stable, const char* which) {
    if (std::abs(den) < tol::denom)
        throw CircleDegenerate(std::string("stability_circles: ") + which +
                               " circle degenerates to a half-plane boundary");
    StabilityCircle circle;
    circle.center = std::conj(c_num) / den;
    circle.radius = std::abs(r_num / den);
    const bool origin_inside = std::abs(circle.center) < circle.radius;
    circle.stable_region = (origin_stable == origin_inside) ? StableRegion::InsideCircle
                                                            : StableRegion::OutsideCircle;
    return circle;
}

} // namespace detail

// Source circle: gamma_s locus with |gamma_out| = 1. Load circle: gamma_l
// locus with |gamma_in| = 1. The stable side is fixed by whether the chart
// origin (a matched termination) is stable.
inline std::pair<StabilityCircle, StabilityCircle> stability_circles(const TwoPortS& net) {
    const Complex d = delta(net);
    const double delta_sq = std::norm(d);
    const double r_num = std::abs(net.s12 * net.s21);

    const Complex c1 = net.s11 - d * std::conj(net.s22);
    const Complex c2 = net.s22 - d * std::conj(net.s11);

    StabilityCircle source = detail::make_circle(c1, r_num, std::norm(net.s11) - delta_sq,
                                                 std::abs(net.s22) < 1.0, "source");
    StabilityCircle load = detail::make_circle(c2, r_num, std::norm(net.s22) - delta_sq,
                                               std::abs(net.s11) < 1.0, "load");
    return {source, load};
}

inline StabilityReport classify(const TwoPortS& net) {
    StabilityReport rep;
    rep.delta = delta(net);
    rep.delta_mag = std::abs(rep.delta);
    rep.k = k_factor(net);
    rep.mu = mu_test(net);
    rep.mu_prime = mu_prime_test(net);
    rep.unilateral = std::abs(net.s12 * net.s21) < tol::denom;

    rep.boundary = std::abs(rep.k - 1.0) < tol::stability_boundary ||
                   std::abs(rep.delta_mag - 1.0) < tol::stability_boundary ||
                   std::abs(rep.mu - 1.0) < tol::stability_boundary;

    const bool k_delta_stable = rep.k > 1.0 && rep.delta_mag < 1.0;
    const bool mu_stable = rep.mu > 1.0;
    if (rep.boundary) {
        rep.verdict = Verdict::Conditional;  // conservative on the boundary
    } else {
        if (k_delta_stable != mu_stable)
            throw InternalInconsistency("classify: K-delta and mu tests disagree (K=" +
                                        std::to_string(rep.k) + ", |delta|=" +
                                        std::to_string(rep.delta_mag) + ", mu=" +
                                        std::to_string(rep.mu) + ")");
        rep.verdict = mu_stable ? Verdict::Unconditional : Verdict::Conditional;
    }

    auto [source, load] = stability_circles(net);
    rep.source_circle = source;
    rep.load_circle = load;
    return rep;
}

} // namespace ampkit::stability
