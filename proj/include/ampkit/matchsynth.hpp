#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ampkit/complex_utils.hpp"
#include "ampkit/elements.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/twoport.hpp"

// Matching-network synthesis: two-element lumped L-sections and
// single-shunt-stub distributed networks that transform the z0 port
// termination into a prescribed reflection coefficient seen from the device.
// Every emitted solution is re-verified by analysis before it is returned.

namespace ampkit::synth {

enum class Placement { Shunt, Series };

struct PlacedElement {
    Placement placement = Placement::Series;
    ElementModel element;
};

// Elements ordered from the z0 port toward the device plane. The generic
// L-section has two entries (one shunt, one series); targets on the unit
// resistance/conductance circles degenerate to a single element.
struct LumpedSolution {
    std::vector<PlacedElement> elements;
    Complex achieved_gamma;
    double residual = 0.0;
};

enum class StubKind { Open, Short };

// Shunt stub at the z0 port node, series line of length line_len toward the
// device. Lengths are fractions of the guided wavelength in (0, 0.5].
struct StubSolution {
    double stub_len = 0.0;
    double line_len = 0.0;
    StubKind stub_kind = StubKind::Open;
    double z0 = 50.0;
    Complex achieved_gamma;
    double residual = 0.0;
};

namespace detail {

// Gamma looking back into port 2 of the chain with port 1 terminated in z0.
inline Complex looking_back_gamma(const std::vector<PlacedElement>& elements, double z0,
                                  double freq) {
    AbcdMatrix m = AbcdMatrix::identity(freq);
    for (const auto& pe : elements) m = cascade(m, element_abcd(pe.element, freq));
    // Impedance seen from the output side with a z0 source on the input side.
    const Complex den = m.c * z0 + m.a;
    if (std::abs(den) < tol::denom)
        throw DegenerateNetwork("looking_back_gamma: singular network");
    const Complex z_seen = (m.d * z0 + m.b) / den;
    return z_to_gamma(z_seen, z0);
}

inline ElementModel reactance_as_series_element(double x, double omega) {
    return x > 0.0 ? ElementModel::series(ComponentKind::Inductor, x / omega)
                   : ElementModel::series(ComponentKind::Capacitor, -1.0 / (omega * x));
}

inline ElementModel susceptance_as_shunt_element(double b, double omega) {
    return b > 0.0 ? ElementModel::shunt(ComponentKind::Capacitor, b / omega)
                   : ElementModel::shunt(ComponentKind::Inductor, -1.0 / (omega * b));
}

// A reactance this small relative to z0 is treated as absent (target sits on
// a unit circle and the section degenerates to one element).
inline constexpr double degenerate_rel = 1e-12;

} // namespace detail

inline Complex verify_network(const LumpedSolution& sol, double z0, double freq) {
    return detail::looking_back_gamma(sol.elements, z0, freq);
}

inline Complex verify_network(const StubSolution& sol, double z0, double freq) {
    std::vector<PlacedElement> chain;
    const ElementModel stub = sol.stub_kind == StubKind::Open
                                  ? ElementModel::open_stub(sol.z0, sol.stub_len)
                                  : ElementModel::short_stub(sol.z0, sol.stub_len);
    chain.push_back({Placement::Shunt, stub});
    chain.push_back({Placement::Series, ElementModel::line(sol.z0, sol.line_len)});
    return detail::looking_back_gamma(chain, z0, freq);
}

// All realizable two-element L-sections for the target. Solutions are listed
// shunt-first (+B, -B) then series-first (+X, -X); each is verified by
// cascading its element models against a z0 termination.
inline std::vector<LumpedSolution> synth_lumped(const Complex& target, double z0, double freq) {
    if (std::abs(target) >= 1.0)
        throw ReflectionOutOfDisk("synth_lumped: target outside the unit disk");
    if (std::abs(target) < tol::round_trip)
        throw AlreadyMatched("synth_lumped: target is the reference impedance itself");

    const double omega = 2.0 * pi * freq;
    const double y0 = 1.0 / z0;
    const Complex zt = gamma_to_z(target, z0);
    const double r = zt.real(), x = zt.imag();
    const Complex yt = 1.0 / zt;
    const double g = yt.real(), bt = yt.imag();

    std::vector<LumpedSolution> out;

    auto emit = [&](std::vector<PlacedElement> elements) {
        LumpedSolution sol;
        sol.elements = std::move(elements);
        sol.achieved_gamma = detail::looking_back_gamma(sol.elements, z0, freq);
        sol.residual = std::abs(sol.achieved_gamma - target);
        if (sol.residual > tol::synth_residual)
            throw InternalInconsistency("synth_lumped: solution fails verification, residual " +
                                        std::to_string(sol.residual));
        out.push_back(std::move(sol));
    };

    // Shunt at the port, series toward the device. Requires R <= z0.
    const double rad1 = y0 / r - y0 * y0;
    if (rad1 >= 0.0) {
        for (const double b : {std::sqrt(rad1), -std::sqrt(rad1)}) {
            const double x_series = x + b * r / y0;
            std::vector<PlacedElement> elems;
            if (std::abs(b) > detail::degenerate_rel * y0)
                elems.push_back({Placement::Shunt, detail::susceptance_as_shunt_element(b, omega)});
            if (std::abs(x_series) > detail::degenerate_rel * z0)
                elems.push_back(
                    {Placement::Series, detail::reactance_as_series_element(x_series, omega)});
            if (elems.empty()) continue;  // target == z0, excluded above
            emit(std::move(elems));
            if (rad1 == 0.0) break;  // both signs coincide
        }
    }

    // Series at the port, shunt at the device. Requires G <= 1/z0.
    const double rad2 = z0 / g - z0 * z0;
    if (rad2 >= 0.0) {
        for (const double x_series : {std::sqrt(rad2), -std::sqrt(rad2)}) {
            const double b_shunt = bt + x_series * g / z0;
            std::vector<PlacedElement> elems;
            if (std::abs(x_series) > detail::degenerate_rel * z0)
                elems.push_back(
                    {Placement::Series, detail::reactance_as_series_element(x_series, omega)});
            if (std::abs(b_shunt) > detail::degenerate_rel * y0)
                elems.push_back({Placement::Shunt, detail::susceptance_as_shunt_element(b_shunt, omega)});
            if (elems.empty()) continue;
            emit(std::move(elems));
            if (rad2 == 0.0) break;
        }
    }

    if (out.empty())
        throw NoRealizableSection("synth_lumped: no L-section topology realizes the target");
    return out;
}

// Single-stub synthesis. Rotating the target's reflection circle onto the
// unit-conductance circle fixes the series-line length; the stub then
// supplies the susceptance remaining at that node. Both principal node
// angles are returned, sorted by total length.
inline std::vector<StubSolution> synth_single_stub(const Complex& target, double z0,
                                                   StubKind kind = StubKind::Open) {
    const double rho = std::abs(target);
    if (rho >= 1.0)
        throw ReflectionOutOfDisk("synth_single_stub: target outside the unit disk");
    if (rho < tol::round_trip)
        throw AlreadyMatched("synth_single_stub: target is the reference impedance itself");

    const double theta_t = std::arg(target);
    const double theta_node = std::acos(-rho);  // on the unit-conductance circle

    auto canonical = [](double len) {
        len = std::fmod(len, 0.5);
        if (len < 0.0) len += 0.5;
        if (len < tol::stub_pole) len = 0.5;  // lambda/2 periodicity
        return len;
    };

    std::vector<StubSolution> out;
    for (const double tn : {theta_node, -theta_node}) {
        StubSolution sol;
        sol.stub_kind = kind;
        sol.z0 = z0;
        sol.line_len = canonical((tn - theta_t) / (4.0 * pi));

        const Complex node = std::polar(rho, tn);
        const Complex y_node = (1.0 - node) / (1.0 + node);
        const double b = y_node.imag();  // normalized susceptance the stub must add

        if (kind == StubKind::Open) {
            sol.stub_len = canonical(std::atan(b) / (2.0 * pi));
        } else {
            // -cot(beta*l) = b
            sol.stub_len = canonical(std::atan2(1.0, -b) / (2.0 * pi));
        }

        sol.achieved_gamma = verify_network(sol, z0, 1e9);  // electrical lengths, freq-free
        sol.residual = std::abs(sol.achieved_gamma - target);
        if (sol.residual > tol::synth_residual)
            throw NoSolution("synth_single_stub: solution fails verification, residual " +
                             std::to_string(sol.residual));
        out.push_back(sol);
    }

    std::sort(out.begin(), out.end(), [](const StubSolution& a, const StubSolution& b) {
        return a.line_len + a.stub_len < b.line_len + b.stub_len;
    });
    return out;
}

} // namespace ampkit::synth
