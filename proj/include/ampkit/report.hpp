#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ampkit/bias.hpp"
#include "ampkit/complex_utils.hpp"
#include "ampkit/config.hpp"
#include "ampkit/match.hpp"
#include "ampkit/matchsynth.hpp"
#include "ampkit/microstrip.hpp"
#include "ampkit/smith_svg.hpp"
#include "ampkit/stability.hpp"
#include "ampkit/touchstone.hpp"

// Design report assembly and serialization: machine-readable JSON, human
// text, the delimited sweep table and the Smith-chart geometry.

namespace ampkit::pipeline {

struct SweepRow {
    double freq_hz = 0.0;
    double s11_db = 0.0, s11_deg = 0.0;
    double s21_db = 0.0, s21_deg = 0.0;
    double s22_db = 0.0, s22_deg = 0.0;
    double k = 0.0;
    double mu = 0.0;
    std::optional<double> nf_db;
};

struct Deviation {
    std::string topic;
    std::string detail;
};

struct PortNetworks {
    Complex target;  // gamma the network must present at the device plane
    std::vector<synth::LumpedSolution> lumped;
    std::vector<synth::StubSolution> stub;
    std::optional<microstrip::RealizedStubNetwork> microstrip;
};

struct NoiseSummary {
    match::NoiseParams params;
    double nf_at_match_db = 0.0;  // F at the selected source match
    double f_min_db = 0.0;
    std::vector<match::NoiseCircle> circles;
};

struct BiasSection {
    bias::BiasSpec spec;
    bias::BiasDesignResult exact;
    bias::BiasDesignResult rounded;
    bias::ESeries series = bias::ESeries::E24;
};

struct DesignReport {
    std::string source;
    double f0_hz = 0.0;
    double z0 = 50.0;
    touchstone::BiasAnnotation bias_annotation;
    TwoPortS device;  // sampled at f0
    stability::StabilityReport stability;
    bool halted_conditional = false;

    std::optional<match::MatchDesign> match_design;
    std::optional<double> max_gain_db;
    std::optional<PortNetworks> input;   // realizes gamma_s
    std::optional<PortNetworks> output;  // realizes gamma_l
    std::optional<BiasSection> bias_design;
    std::optional<NoiseSummary> noise;
    std::vector<SweepRow> verification;
    std::optional<double> summary_gain_db;  // cascade s21 at f0
    std::vector<Deviation> deviations;
};

// ---------------------------------------------------------------------------
// machine-readable form (JSON)

using json = nlohmann::ordered_json;

inline json complex_json(const Complex& c) {
    const Polar p = to_polar(c);
    return json{{"re", c.real()}, {"im", c.imag()}, {"mag", p.mag}, {"deg", p.deg}};
}

inline json circle_json(const stability::StabilityCircle& c) {
    return json{{"center", complex_json(c.center)},
                {"radius", c.radius},
                {"stable_region",
                 c.stable_region == stability::StableRegion::InsideCircle ? "inside" : "outside"}};
}

inline json stability_json(const stability::StabilityReport& st) {
    return json{
        {"delta", complex_json(st.delta)},
        {"delta_mag", st.delta_mag},
        {"k", std::isfinite(st.k) ? json(st.k) : json(st.k > 0 ? "inf" : "-inf")},
        {"mu", st.mu},
        {"mu_prime", st.mu_prime},
        {"verdict", st.verdict == stability::Verdict::Unconditional ? "unconditional" : "conditional"},
        {"boundary", st.boundary},
        {"unilateral", st.unilateral},
        {"source_circle", circle_json(st.source_circle)},
        {"load_circle", circle_json(st.load_circle)}};
}

inline json match_json(const match::MatchDesign& md) {
    return json{
        {"b1", md.b1},
        {"b2", md.b2},
        {"c1", complex_json(md.c1)},
        {"c2", complex_json(md.c2)},
        {"gamma_s_roots",
         json::array({complex_json(md.gamma_s_roots[0]), complex_json(md.gamma_s_roots[1])})},
        {"gamma_l_roots",
         json::array({complex_json(md.gamma_l_roots[0]), complex_json(md.gamma_l_roots[1])})},
        {"gamma_s", complex_json(md.gamma_s)},
        {"gamma_l", complex_json(md.gamma_l)},
        {"gains", json{{"gs", md.gains.gs},
                       {"g0", md.gains.g0},
                       {"gl", md.gains.gl},
                       {"gt", md.gains.gt},
                       {"gs_db", db10(md.gains.gs)},
                       {"g0_db", db10(md.gains.g0)},
                       {"gl_db", db10(md.gains.gl)},
                       {"gt_db", db10(md.gains.gt)}}}};
}

inline json element_json(const synth::PlacedElement& pe) {
    json j;
    j["placement"] = pe.placement == synth::Placement::Shunt ? "shunt" : "series";
    if (pe.element.is_distributed()) {
        const auto& lv = pe.element.distributed();
        j["kind"] = pe.element.kind == ElementKind::OpenStub    ? "open_stub"
                    : pe.element.kind == ElementKind::ShortStub ? "short_stub"
                                                                : "line";
        j["z0_ohm"] = lv.z0;
        j["length_frac"] = lv.electrical_length;
    } else {
        const auto& lv = pe.element.lumped();
        switch (lv.component) {
        case ComponentKind::Inductor:
            j["kind"] = "inductor";
            j["value_h"] = lv.value;
            break;
        case ComponentKind::Capacitor:
            j["kind"] = "capacitor";
            j["value_f"] = lv.value;
            break;
        case ComponentKind::Resistor:
            j["kind"] = "resistor";
            j["value_ohm"] = lv.value;
            break;
        }
    }
    return j;
}

inline json lumped_json(const synth::LumpedSolution& sol) {
    json elems = json::array();
    for (const auto& pe : sol.elements) elems.push_back(element_json(pe));
    return json{{"elements", elems},
                {"achieved_gamma", complex_json(sol.achieved_gamma)},
                {"residual", sol.residual}};
}

inline json stub_json(const synth::StubSolution& sol) {
    return json{{"line_len_frac", sol.line_len},
                {"stub_len_frac", sol.stub_len},
                {"stub_kind", sol.stub_kind == synth::StubKind::Open ? "open" : "short"},
                {"z0_ohm", sol.z0},
                {"achieved_gamma", complex_json(sol.achieved_gamma)},
                {"residual", sol.residual}};
}

inline json microstrip_line_json(const microstrip::MicrostripLine& line) {
    return json{{"w_mm", line.w},
                {"length_mm", line.length_mm},
                {"length_frac", line.electrical_length},
                {"z0_ohm", line.z0},
                {"eps_eff", line.eps_eff}};
}

inline json port_json(const PortNetworks& port) {
    json j;
    j["target_gamma"] = complex_json(port.target);
    json lumped = json::array();
    for (const auto& sol : port.lumped) lumped.push_back(lumped_json(sol));
    j["lumped"] = lumped;
    json stub = json::array();
    for (const auto& sol : port.stub) stub.push_back(stub_json(sol));
    j["stub"] = stub;
    if (port.microstrip) {
        j["microstrip"] = json{{"line", microstrip_line_json(port.microstrip->line)},
                               {"stub", microstrip_line_json(port.microstrip->stub)}};
    }
    return j;
}

inline json bias_result_json(const bias::BiasDesignResult& r) {
    return json{{"r1_ohm", r.r1},          {"r2_ohm", r.r2},
                {"r3_ohm", r.r3},          {"r4_ohm", r.r4},
                {"i_b_ma", r.i_b},         {"i_x_ma", r.i_x},
                {"verified_ic_ma", r.verified_ic}, {"verified_vce_v", r.verified_vce}};
}

inline std::string report_json(const DesignReport& rep) {
    json j;
    j["tool"] = "ampkit";
    j["source"] = rep.source;
    j["f0_hz"] = rep.f0_hz;
    j["z0_ohm"] = rep.z0;

    if (!rep.bias_annotation.empty()) {
        json b;
        if (rep.bias_annotation.vce_v) b["vce_v"] = *rep.bias_annotation.vce_v;
        if (rep.bias_annotation.ic_ma) b["ic_ma"] = *rep.bias_annotation.ic_ma;
        j["bias_annotation"] = b;
    }

    j["device"] = json{{"freq_hz", rep.device.freq},
                       {"s11", complex_json(rep.device.s11)},
                       {"s21", complex_json(rep.device.s21)},
                       {"s12", complex_json(rep.device.s12)},
                       {"s22", complex_json(rep.device.s22)},
                       {"z0_ohm", rep.device.z0}};

    j["stability"] = stability_json(rep.stability);
    j["halted_conditional"] = rep.halted_conditional;

    if (rep.match_design) j["match"] = match_json(*rep.match_design);
    if (rep.max_gain_db) j["max_gain_db"] = *rep.max_gain_db;
    if (rep.input) j["input_network"] = port_json(*rep.input);
    if (rep.output) j["output_network"] = port_json(*rep.output);

    if (rep.bias_design) {
        const auto& b = *rep.bias_design;
        j["bias"] = json{{"spec", json{{"v_supply_v", b.spec.v_supply},
                                       {"v_x_v", b.spec.v_x},
                                       {"v_ce_v", b.spec.v_ce},
                                       {"i_c_ma", b.spec.i_c},
                                       {"v_be_v", b.spec.v_be},
                                       {"beta", b.spec.beta},
                                       {"divider_ratio", b.spec.divider_ratio_k}}},
                         {"exact", bias_result_json(b.exact)},
                         {"series", bias::series_name(b.series)},
                         {"rounded", bias_result_json(b.rounded)}};
    }

    if (rep.noise) {
        const auto& n = *rep.noise;
        json circles = json::array();
        for (const auto& c : n.circles)
            circles.push_back(json{{"f_target_db", db10(c.f_target)},
                                   {"center", complex_json(c.center)},
                                   {"radius", c.radius}});
        j["noise"] = json{{"f_min_db", n.f_min_db},
                          {"r_n_ohm", n.params.r_n},
                          {"gamma_opt", complex_json(n.params.gamma_opt)},
                          {"nf_at_match_db", n.nf_at_match_db},
                          {"circles", circles}};
    }

    json sweep = json::array();
    for (const auto& row : rep.verification) {
        json r = json{{"freq_hz", row.freq_hz}, {"s11_db", row.s11_db}, {"s11_deg", row.s11_deg},
                      {"s21_db", row.s21_db},   {"s21_deg", row.s21_deg}, {"s22_db", row.s22_db},
                      {"s22_deg", row.s22_deg}, {"k", row.k},           {"mu", row.mu}};
        if (row.nf_db) r["nf_db"] = *row.nf_db;
        sweep.push_back(r);
    }
    j["verification"] = sweep;
    if (rep.summary_gain_db) j["summary"] = json{{"gain_db_at_f0", *rep.summary_gain_db}};

    json devs = json::array();
    for (const auto& d : rep.deviations) devs.push_back(json{{"topic", d.topic}, {"detail", d.detail}});
    j["deviations"] = devs;

    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// sweep table (CSV)

inline std::string sweep_csv(const DesignReport& rep) {
    const bool with_nf = !rep.verification.empty() && rep.verification.front().nf_db.has_value();
    std::string out = "freq_Hz,S11_dB,S11_deg,S21_dB,S21_deg,S22_dB,S22_deg,K,mu";
    if (with_nf) out += ",NF_dB";
    out += "\n";
    char buf[512];
    for (const auto& row : rep.verification) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g",
                      row.freq_hz, row.s11_db, row.s11_deg, row.s21_db, row.s21_deg, row.s22_db,
                      row.s22_deg, row.k, row.mu);
        out += buf;
        if (with_nf) {
            std::snprintf(buf, sizeof buf, ",%.9g", row.nf_db.value_or(0.0));
            out += buf;
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smith-chart geometry

inline smith::Geometry smith_geometry(const DesignReport& rep) {
    smith::Geometry geo;
    geo.circles.push_back({rep.stability.source_circle.center, rep.stability.source_circle.radius,
                           "source stability", "#c02020", true});
    geo.circles.push_back({rep.stability.load_circle.center, rep.stability.load_circle.radius,
                           "load stability", "#2040c0", true});
    if (rep.noise) {
        for (const auto& c : rep.noise->circles) {
            char label[64];
            std::snprintf(label, sizeof label, "NF %.2f dB", db10(c.f_target));
            geo.circles.push_back({c.center, c.radius, label, "#208040", false});
        }
    }
    if (rep.match_design) {
        geo.markers.push_back({rep.match_design->gamma_s, "Gs", "#c02020"});
        geo.markers.push_back({rep.match_design->gamma_l, "Gl", "#2040c0"});
    }
    if (rep.noise)
        geo.markers.push_back({rep.noise->params.gamma_opt, "Gopt", "#208040"});
    return geo;
}

// ---------------------------------------------------------------------------
// human-readable form

inline std::string report_text(const DesignReport& rep) {
    char buf[512];
    std::string out;
    auto line = [&](const char* fmt, auto... args) {
        if constexpr (sizeof...(args) == 0)
            std::snprintf(buf, sizeof buf, "%s", fmt);
        else
            std::snprintf(buf, sizeof buf, fmt, args...);
        out += buf;
        out += "\n";
    };
    auto polar_str = [](const Complex& c) {
        char b[96];
        const Polar p = to_polar(c);
        std::snprintf(b, sizeof b, "%.4f @ %.2f deg", p.mag, p.deg);
        return std::string(b);
    };

    line("=== amplifier design report ===");
    line("source      : %s", rep.source.c_str());
    line("f0          : %.6g GHz", rep.f0_hz / 1e9);
    line("z0          : %.6g ohm", rep.z0);
    if (!rep.bias_annotation.empty()) {
        std::string b = "bias point  :";
        if (rep.bias_annotation.vce_v) {
            std::snprintf(buf, sizeof buf, " Vce = %.4g V", *rep.bias_annotation.vce_v);
            b += buf;
        }
        if (rep.bias_annotation.ic_ma) {
            std::snprintf(buf, sizeof buf, " Ic = %.4g mA", *rep.bias_annotation.ic_ma);
            b += buf;
        }
        out += b + "\n";
    }

    out += "\n-- stability --\n";
    const auto& st = rep.stability;
    line("|delta| = %.4f   K = %.4f   mu = %.4f   mu' = %.4f", st.delta_mag, st.k, st.mu,
         st.mu_prime);
    line("verdict : %s%s",
         st.verdict == stability::Verdict::Unconditional ? "unconditionally stable"
                                                         : "conditionally stable",
         st.boundary ? " (boundary case)" : "");
    line("source circle: center %s, radius %.4f, stable %s",
         polar_str(st.source_circle.center).c_str(), st.source_circle.radius,
         st.source_circle.stable_region == stability::StableRegion::InsideCircle ? "inside"
                                                                                 : "outside");
    line("load circle  : center %s, radius %.4f, stable %s",
         polar_str(st.load_circle.center).c_str(), st.load_circle.radius,
         st.load_circle.stable_region == stability::StableRegion::InsideCircle ? "inside"
                                                                               : "outside");
    if (rep.halted_conditional) {
        out += "\nDesign halted: device is not unconditionally stable at f0.\n"
               "Add a stabilization network or change the bias point, then re-run.\n";
        return out;
    }

    if (rep.match_design) {
        const auto& md = *rep.match_design;
        out += "\n-- simultaneous conjugate match --\n";
        line("gamma_S = %s   (companion root %s)", polar_str(md.gamma_s).c_str(),
             polar_str(md.gamma_s_roots[1]).c_str());
        line("gamma_L = %s   (companion root %s)", polar_str(md.gamma_l).c_str(),
             polar_str(md.gamma_l_roots[1]).c_str());
        line("gains   : Gs = %.3f dB, G0 = %.3f dB, Gl = %.3f dB", db10(md.gains.gs),
             db10(md.gains.g0), db10(md.gains.gl));
        line("G_T,max = %.4f (%.3f dB)", md.gains.gt, db10(md.gains.gt));
    }

    auto port_text = [&](const char* name, const PortNetworks& port) {
        out += "\n-- ";
        out += name;
        out += " matching network --\n";
        line("target gamma = %s", polar_str(port.target).c_str());
        int idx = 0;
        for (const auto& sol : port.lumped) {
            std::string desc;
            for (const auto& pe : sol.elements) {
                if (!desc.empty()) desc += " + ";
                desc += pe.placement == synth::Placement::Shunt ? "shunt " : "series ";
                if (pe.element.is_distributed()) {
                    desc += "line";
                } else {
                    const auto& lv = pe.element.lumped();
                    if (lv.component == ComponentKind::Inductor) {
                        std::snprintf(buf, sizeof buf, "L = %.4g nH", lv.value * 1e9);
                    } else if (lv.component == ComponentKind::Capacitor) {
                        std::snprintf(buf, sizeof buf, "C = %.4g pF", lv.value * 1e12);
                    } else {
                        std::snprintf(buf, sizeof buf, "R = %.4g ohm", lv.value);
                    }
                    desc += buf;
                }
            }
            line("lumped[%d] : %s (residual %.2g)", idx++, desc.c_str(), sol.residual);
        }
        idx = 0;
        for (const auto& sol : port.stub) {
            line("stub[%d]   : series line %.4f lambda + %s stub %.4f lambda at %.4g ohm (residual %.2g)",
                 idx++, sol.line_len, sol.stub_kind == synth::StubKind::Open ? "open" : "short",
                 sol.stub_len, sol.z0, sol.residual);
        }
        if (port.microstrip) {
            const auto& ms = *port.microstrip;
            line("microstrip: line  w = %.4f mm, l = %.4f mm (%.4f lambda, eps_eff %.4f)",
                 ms.line.w, ms.line.length_mm, ms.line.electrical_length, ms.line.eps_eff);
            line("            stub  w = %.4f mm, l = %.4f mm (%.4f lambda)", ms.stub.w,
                 ms.stub.length_mm, ms.stub.electrical_length);
        }
    };
    if (rep.input) port_text("input", *rep.input);
    if (rep.output) port_text("output", *rep.output);

    if (rep.bias_design) {
        const auto& b = *rep.bias_design;
        out += "\n-- bias network --\n";
        line("spec    : Vo = %.3g V, Vx = %.3g V, Vce = %.3g V, Ic = %.3g mA, beta = %.3g",
             b.spec.v_supply, b.spec.v_x, b.spec.v_ce, b.spec.i_c, b.spec.beta);
        line("exact   : R1 = %.4g, R2 = %.4g, R3 = %.4g, R4 = %.4g ohm", b.exact.r1, b.exact.r2,
             b.exact.r3, b.exact.r4);
        line("%s     : R1 = %.4g, R2 = %.4g, R3 = %.4g, R4 = %.4g ohm", bias::series_name(b.series),
             b.rounded.r1, b.rounded.r2, b.rounded.r3, b.rounded.r4);
        line("verified: Ic = %.4g mA, Vce = %.4g V (exact), Ic = %.4g mA, Vce = %.4g V (rounded)",
             b.exact.verified_ic, b.exact.verified_vce, b.rounded.verified_ic,
             b.rounded.verified_vce);
        out += "RF isolation (chokes/blocking capacitors) is a placement note only;\n"
               "no values are assigned by this tool.\n";
    }

    if (rep.noise) {
        out += "\n-- noise --\n";
        line("Fmin = %.3f dB, NF at selected source match = %.3f dB", rep.noise->f_min_db,
             rep.noise->nf_at_match_db);
    }

    if (!rep.verification.empty()) {
        out += "\n-- cascade verification (ideal lossless elements) --\n";
        line("%-14s %-9s %-9s %-9s %-9s %-9s", "freq_Hz", "S11_dB", "S21_dB", "S22_dB", "K", "mu");
        for (const auto& row : rep.verification) {
            line("%-14.6g %-9.3f %-9.3f %-9.3f %-9.3f %-9.3f", row.freq_hz, row.s11_db, row.s21_db,
                 row.s22_db, row.k, row.mu);
        }
        if (rep.summary_gain_db) line("gain at f0: %.3f dB", *rep.summary_gain_db);
    }

    if (!rep.deviations.empty()) {
        out += "\n-- model scope notes --\n";
        for (const auto& d : rep.deviations) line("* %s: %s", d.topic.c_str(), d.detail.c_str());
    }
    return out;
}

} // namespace ampkit::pipeline
