#pragma once

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ampkit/config.hpp"
#include "ampkit/report.hpp"

// Full design flow: parse -> stability gate -> conjugate match -> network
// synthesis -> microstrip realization -> bias -> cascade verification.
// Verification uses ideal lossless element models; the microstrip geometry is
// reported alongside with a quasi-static, lossless caveat.

namespace ampkit::pipeline {

namespace detail {

// Element ABCD at an arbitrary frequency. Lumped values are physical (L, C
// fixed); distributed electrical lengths were synthesized at f0 and stretch
// proportionally with frequency, which is what a fixed physical length does.
inline AbcdMatrix element_abcd_at(const ElementModel& e, double freq, double f0) {
    if (!e.is_distributed()) return element_abcd(e, freq);
    ElementModel scaled = e;
    auto& lv = std::get<LineValue>(scaled.value);
    lv.electrical_length *= freq / f0;
    return element_abcd(scaled, freq);
}

inline AbcdMatrix chain_abcd_at(const std::vector<synth::PlacedElement>& elements, double freq,
                                double f0, bool reversed) {
    AbcdMatrix m = AbcdMatrix::identity(freq);
    if (reversed) {
        for (auto it = elements.rbegin(); it != elements.rend(); ++it)
            m = cascade(m, element_abcd_at(it->element, freq, f0));
    } else {
        for (const auto& pe : elements)
            m = cascade(m, element_abcd_at(pe.element, freq, f0));
    }
    return m;
}

inline std::vector<synth::PlacedElement> stub_as_elements(const synth::StubSolution& sol) {
    std::vector<synth::PlacedElement> chain;
    const ElementModel stub = sol.stub_kind == synth::StubKind::Open
                                  ? ElementModel::open_stub(sol.z0, sol.stub_len)
                                  : ElementModel::short_stub(sol.z0, sol.stub_len);
    chain.push_back({synth::Placement::Shunt, stub});
    chain.push_back({synth::Placement::Series, ElementModel::line(sol.z0, sol.line_len)});
    return chain;
}

} // namespace detail

// Sweep-verify a matched amplifier: input network, interpolated transistor
// and flipped output network cascaded at each frequency. Input/output element
// lists run from the z0 port toward the device, as synthesized.
inline std::vector<SweepRow> verify_cascade(const std::vector<synth::PlacedElement>& input_net,
                                            const std::vector<synth::PlacedElement>& output_net,
                                            const touchstone::TouchstoneDocument& doc,
                                            const std::vector<double>& freqs, double f0, double z0,
                                            const std::optional<match::NoiseParams>& noise
                                            = std::nullopt) {
    std::vector<SweepRow> rows;
    rows.reserve(freqs.size());
    for (const double f : freqs) {
        const TwoPortS dev = touchstone::sample_at(doc, f);
        const AbcdMatrix in_m = detail::chain_abcd_at(input_net, f, f0, /*reversed=*/false);
        const AbcdMatrix dev_m = s_to_abcd(dev);
        // Output network was synthesized looking from the device, so its
        // element order is reversed in the source-to-load chain.
        const AbcdMatrix out_m = detail::chain_abcd_at(output_net, f, f0, /*reversed=*/true);
        const TwoPortS total = abcd_to_s(cascade(cascade(in_m, dev_m), out_m), z0);

        SweepRow row;
        row.freq_hz = f;
        row.s11_db = db20(std::abs(total.s11));
        row.s11_deg = arg_deg(total.s11);
        row.s21_db = db20(std::abs(total.s21));
        row.s21_deg = arg_deg(total.s21);
        row.s22_db = db20(std::abs(total.s22));
        row.s22_deg = arg_deg(total.s22);
        row.k = stability::k_factor(total);
        row.mu = stability::mu_test(total);
        if (noise) {
            // Source reflection presented to the device: looking back into
            // the input network from its device-side port.
            const Complex z_seen = (in_m.d * z0 + in_m.b) / (in_m.c * z0 + in_m.a);
            row.nf_db = db10(match::noise_figure(z_to_gamma(z_seen, z0), *noise, z0));
        }
        rows.push_back(row);
    }
    return rows;
}

inline DesignReport run_design(const DesignConfig& cfg) {
    cfg.validate();
    if (cfg.sparam_source.empty())
        throw ConfigError("run_design: no S-parameter source given");

    std::ifstream in(cfg.sparam_source);
    if (!in) throw IoError("cannot open S-parameter file '" + cfg.sparam_source + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto doc = touchstone::parse_touchstone(ss.str());

    DesignReport rep;
    rep.source = cfg.sparam_source;
    rep.f0_hz = cfg.f0;
    rep.z0 = cfg.z0;
    rep.bias_annotation = doc.bias;
    rep.device = touchstone::sample_at(doc, cfg.f0);

    rep.stability = stability::classify(rep.device);
    if (rep.stability.verdict == stability::Verdict::Conditional) {
        // Gate: no synthesis products may exist for a conditionally stable
        // device; the report still carries the stability circles.
        rep.halted_conditional = true;
        return rep;
    }

    rep.match_design = match::conjugate_match(rep.device);
    rep.max_gain_db = db10(match::max_transducer_gain(rep.device));

    const bool want_lumped = cfg.style != NetworkStyle::Distributed;
    const bool want_stub = cfg.style != NetworkStyle::Lumped;

    PortNetworks input, output;
    input.target = rep.match_design->gamma_s;
    output.target = rep.match_design->gamma_l;
    if (want_lumped) {
        input.lumped = synth::synth_lumped(input.target, cfg.z0, cfg.f0);
        output.lumped = synth::synth_lumped(output.target, cfg.z0, cfg.f0);
    }
    if (want_stub) {
        input.stub = synth::synth_single_stub(input.target, cfg.z0);
        output.stub = synth::synth_single_stub(output.target, cfg.z0);
        input.microstrip = microstrip::realize_stub_network(input.stub.front(), cfg.substrate, cfg.f0);
        output.microstrip =
            microstrip::realize_stub_network(output.stub.front(), cfg.substrate, cfg.f0);
    }
    rep.input = std::move(input);
    rep.output = std::move(output);

    if (cfg.bias_spec) {
        BiasSection bs;
        bs.spec = *cfg.bias_spec;
        bs.exact = bias::design_bias(bs.spec);
        bs.series = cfg.resistor_series;
        bs.rounded = bias::round_to_series(bs.exact, bs.spec, cfg.resistor_series);
        rep.bias_design = bs;
    }

    if (cfg.noise) {
        NoiseSummary ns;
        ns.params = *cfg.noise;
        ns.f_min_db = db10(cfg.noise->f_min);
        ns.nf_at_match_db =
            db10(match::noise_figure(rep.match_design->gamma_s, *cfg.noise, cfg.z0));
        for (const double extra_db : {0.25, 0.5, 1.0, 2.0})
            ns.circles.push_back(
                match::noise_circle(undb10(ns.f_min_db + extra_db), *cfg.noise, cfg.z0));
        rep.noise = std::move(ns);
    }

    // Cascade verification with ideal elements. Distributed networks are
    // preferred when synthesized; a degenerate sweep at f0 is used when no
    // sweep is configured (single-point transistor data cannot be swept).
    const std::vector<synth::PlacedElement> in_elems =
        want_stub ? detail::stub_as_elements(rep.input->stub.front())
                  : rep.input->lumped.front().elements;
    const std::vector<synth::PlacedElement> out_elems =
        want_stub ? detail::stub_as_elements(rep.output->stub.front())
                  : rep.output->lumped.front().elements;

    std::vector<double> freqs;
    if (cfg.sweep) {
        const auto& sw = *cfg.sweep;
        for (int i = 0; i < sw.n_points; ++i) {
            const double t = sw.n_points == 1 ? 0.0 : double(i) / (sw.n_points - 1);
            freqs.push_back(sw.f_start + t * (sw.f_stop - sw.f_start));
        }
    } else {
        freqs = {cfg.f0, cfg.f0};
    }
    rep.verification = verify_cascade(in_elems, out_elems, doc, freqs, cfg.f0, cfg.z0, cfg.noise);

    // Cross-stage consistency at f0: residual-verified networks must deliver
    // the maximum transducer gain into matched ports.
    for (const auto& row : rep.verification) {
        if (std::abs(row.freq_hz - cfg.f0) <= tol::freq_match_hz) {
            rep.summary_gain_db = row.s21_db;
            if (std::abs(row.s21_db - *rep.max_gain_db) > 0.1)
                throw InternalInconsistency("verify_cascade: gain at f0 (" +
                                            std::to_string(row.s21_db) + " dB) deviates from G_T,max (" +
                                            std::to_string(*rep.max_gain_db) + " dB)");
            if (row.s11_db > -20.0 || row.s22_db > -20.0)
                throw InternalInconsistency("verify_cascade: port match at f0 worse than -20 dB");
            break;
        }
    }

    rep.deviations.push_back(
        {"verification model",
         "Cascade verification uses ideal lossless matching elements at the synthesized values; "
         "conductor/dielectric loss, junction discontinuities and layout parasitics are not "
         "modeled, so a fabricated realization will show lower gain than reported here."});
    rep.deviations.push_back(
        {"microstrip model",
         "Microstrip dimensions come from quasi-static closed forms (no dispersion); stub tee "
         "junctions are treated as ideal nodes."});
    rep.deviations.push_back(
        {"stability circles",
         "Circle centers and radii are computed from the closed-form expressions and "
         "cross-checked by dense scanning of the unit disk; they describe the bare device at f0, "
         "not a stabilized or biased assembly."});
    if (rep.bias_design)
        rep.deviations.push_back(
            {"bias network",
             "The bias resistors are reported for the DC operating point only and are not "
             "inserted into the RF cascade; chokes and blocking capacitors are placement notes "
             "without values."});
    if (rep.noise)
        rep.deviations.push_back(
            {"noise model",
             "Noise figure uses the two-port noise-parameter model (Fmin, gamma_opt, rn) supplied "
             "in the configuration; parameters are applied across the sweep band unchanged."});

    return rep;
}

enum class ReportForm { HumanText, MachineStructured, SweepTable, SmithGeometry };

// Writes the requested forms next to each other in out_dir, named
// <stem>.report / <stem>.sweep.csv / <stem>.smith.svg; human text, when
// requested, goes to <stem>.txt. Returns the paths written.
inline std::vector<std::string> emit_report(const DesignReport& rep,
                                            const std::set<ReportForm>& forms,
                                            const std::string& out_dir, const std::string& stem) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");

    std::vector<std::string> written;
    auto write_file = [&](const std::string& name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write '" + path.string() + "'");
        out << content;
        written.push_back(path.string());
    };

    if (forms.count(ReportForm::MachineStructured)) write_file(stem + ".report", report_json(rep));
    if (forms.count(ReportForm::SweepTable)) write_file(stem + ".sweep.csv", sweep_csv(rep));
    if (forms.count(ReportForm::SmithGeometry))
        write_file(stem + ".smith.svg", smith::render_svg(smith_geometry(rep)));
    if (forms.count(ReportForm::HumanText)) write_file(stem + ".txt", report_text(rep));
    return written;
}

} // namespace ampkit::pipeline
