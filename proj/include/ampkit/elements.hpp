#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "ampkit/twoport.hpp"

// Ideal lossless element models: lumped reactances and transmission-line
// sections expressed as ABCD blocks.

namespace ampkit {

enum class ElementKind {
    SeriesImpedance,
    ShuntAdmittance,
    TransmissionLine,
    OpenStub,
    ShortStub,
};

enum class ComponentKind { Inductor, Capacitor, Resistor };

struct LumpedValue {
    ComponentKind component = ComponentKind::Resistor;
    double value = 0.0;  // H, F or ohm
};

struct LineValue {
    double z0 = 50.0;               // ohm
    double electrical_length = 0.0; // fraction of a guided wavelength
};

struct ElementModel {
    ElementKind kind = ElementKind::SeriesImpedance;
    std::variant<LumpedValue, LineValue> value;

    static ElementModel series(ComponentKind component, double v) {
        return {ElementKind::SeriesImpedance, LumpedValue{component, v}};
    }
    static ElementModel shunt(ComponentKind component, double v) {
        return {ElementKind::ShuntAdmittance, LumpedValue{component, v}};
    }
    static ElementModel line(double z0, double elen) {
        return {ElementKind::TransmissionLine, LineValue{z0, elen}};
    }
    static ElementModel open_stub(double z0, double elen) {
        return {ElementKind::OpenStub, LineValue{z0, elen}};
    }
    static ElementModel short_stub(double z0, double elen) {
        return {ElementKind::ShortStub, LineValue{z0, elen}};
    }

    const LumpedValue& lumped() const { return std::get<LumpedValue>(value); }
    const LineValue& distributed() const { return std::get<LineValue>(value); }
    bool is_distributed() const { return std::holds_alternative<LineValue>(value); }
};

namespace detail {

inline Complex lumped_series_impedance(const LumpedValue& lv, double omega) {
    switch (lv.component) {
    case ComponentKind::Inductor: return Complex(0.0, omega * lv.value);
    case ComponentKind::Capacitor: return Complex(0.0, -1.0 / (omega * lv.value));
    case ComponentKind::Resistor: return Complex(lv.value, 0.0);
    }
    return {};
}

inline Complex lumped_shunt_admittance(const LumpedValue& lv, double omega) {
    switch (lv.component) {
    case ComponentKind::Inductor: return Complex(0.0, -1.0 / (omega * lv.value));
    case ComponentKind::Capacitor: return Complex(0.0, omega * lv.value);
    case ComponentKind::Resistor: return Complex(1.0 / lv.value, 0.0);
    }
    return {};
}

} // namespace detail

// ABCD block of one element at the given frequency. Distributed elements use
// beta*l = 2*pi*electrical_length; the caller is responsible for scaling the
// electrical length if the element was designed at a different frequency.
inline AbcdMatrix element_abcd(const ElementModel& e, double freq) {
    if (!(freq > 0.0))
        throw Error("element_abcd: frequency must be positive");
    const double omega = 2.0 * pi * freq;
    AbcdMatrix m = AbcdMatrix::identity(freq);

    switch (e.kind) {
    case ElementKind::SeriesImpedance: {
        const LumpedValue& lv = e.lumped();
        if (!(lv.value > 0.0))
            throw Error("element_abcd: element value must be positive");
        m.b = detail::lumped_series_impedance(lv, omega);
        break;
    }
    case ElementKind::ShuntAdmittance: {
        const LumpedValue& lv = e.lumped();
        if (!(lv.value > 0.0))
            throw Error("element_abcd: element value must be positive");
        m.c = detail::lumped_shunt_admittance(lv, omega);
        break;
    }
    case ElementKind::TransmissionLine: {
        const LineValue& line = e.distributed();
        const double bl = 2.0 * pi * line.electrical_length;
        m.a = m.d = Complex(std::cos(bl), 0.0);
        m.b = Complex(0.0, line.z0 * std::sin(bl));
        m.c = Complex(0.0, std::sin(bl) / line.z0);
        break;
    }
    case ElementKind::OpenStub: {
        const LineValue& line = e.distributed();
        const double bl = 2.0 * pi * line.electrical_length;
        if (std::abs(std::cos(bl)) < tol::stub_pole)
            throw StubSingularity("element_abcd: open stub at a tan() pole");
        m.c = Complex(0.0, std::tan(bl) / line.z0);
        break;
    }
    case ElementKind::ShortStub: {
        const LineValue& line = e.distributed();
        const double bl = 2.0 * pi * line.electrical_length;
        if (std::abs(std::sin(bl)) < tol::stub_pole)
            throw StubSingularity("element_abcd: short stub at a cot() pole");
        m.c = Complex(0.0, -1.0 / (std::tan(bl) * line.z0));
        break;
    }
    }
    return m;
}

inline TwoPortS element_to_twoport(const ElementModel& e, double freq, double z0) {
    return abcd_to_s(element_abcd(e, freq), z0);
}

} // namespace ampkit
