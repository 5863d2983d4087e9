// ampkit command-line front end.
//
// Subcommands cover the individual design stages (stability, match, synth,
// microstrip, bias, verify) plus the full pipeline (design). Exit codes:
//   0  success
//   2  conditional-stability halt
//   3  parse error (touchstone or config)
//   4  infeasible synthesis
//   5  I/O failure

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "ampkit/ampkit.hpp"

namespace {

using namespace ampkit;

constexpr int kExitOk = 0;
constexpr int kExitConditional = 2;
constexpr int kExitParse = 3;
constexpr int kExitSynthesis = 4;
constexpr int kExitIo = 5;

struct CommonArgs {
    std::string sparams;
    std::string freq;
    std::string config;
    std::string out_dir = ".";
    std::string format = "human";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--sparams", args.sparams, "Touchstone .s2p file");
    cmd->add_option("--freq", args.freq, "design frequency, e.g. 3.2GHz");
    cmd->add_option("--config", args.config, "config file (key = value sections)");
    cmd->add_option("--out", args.out_dir, "output directory for report files");
    cmd->add_option("--format", args.format, "human | machine | both")
        ->check(CLI::IsMember({"human", "machine", "both"}));
}

pipeline::DesignConfig make_config(const CommonArgs& args) {
    pipeline::DesignConfig cfg;
    if (!args.config.empty()) cfg = pipeline::load_config(args.config);
    if (!args.sparams.empty()) cfg.sparam_source = args.sparams;
    if (!args.freq.empty()) cfg.f0 = pipeline::parse_frequency(args.freq);
    return cfg;
}

touchstone::TouchstoneDocument load_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return touchstone::parse_touchstone(ss.str());
}

TwoPortS device_at(const pipeline::DesignConfig& cfg) {
    if (cfg.sparam_source.empty()) throw ConfigError("--sparams (or config sparams=) is required");
    if (!(cfg.f0 > 0.0)) throw ConfigError("--freq (or config f0=) is required");
    return touchstone::sample_at(load_doc(cfg.sparam_source), cfg.f0);
}

std::string polar_str(const Complex& c) {
    char buf[96];
    const Polar p = to_polar(c);
    std::snprintf(buf, sizeof buf, "%.4f @ %.2f deg", p.mag, p.deg);
    return buf;
}

std::string stem_of(const pipeline::DesignConfig& cfg) {
    return std::filesystem::path(cfg.sparam_source).stem().string();
}

std::set<pipeline::ReportForm> forms_for(const std::string& format) {
    using pipeline::ReportForm;
    std::set<ReportForm> forms = {ReportForm::SweepTable, ReportForm::SmithGeometry};
    if (format == "human" || format == "both") forms.insert(ReportForm::HumanText);
    if (format == "machine" || format == "both") forms.insert(ReportForm::MachineStructured);
    return forms;
}

int cmd_stability(const CommonArgs& args) {
    const auto cfg = make_config(args);
    const auto dev = device_at(cfg);
    const auto rep = stability::classify(dev);
    if (args.format == "machine") {
        std::printf("%s\n", pipeline::stability_json(rep).dump(2).c_str());
        return rep.verdict == stability::Verdict::Unconditional ? kExitOk : kExitConditional;
    }
    std::printf("|delta| = %.4f\nK       = %.4f\nmu      = %.4f\nmu'     = %.4f\n", rep.delta_mag,
                rep.k, rep.mu, rep.mu_prime);
    std::printf("verdict : %s%s\n",
                rep.verdict == stability::Verdict::Unconditional ? "unconditionally stable"
                                                                 : "conditionally stable",
                rep.boundary ? " (boundary case)" : "");
    std::printf("source circle: center %s, radius %.4f (stable %s)\n",
                polar_str(rep.source_circle.center).c_str(), rep.source_circle.radius,
                rep.source_circle.stable_region == stability::StableRegion::InsideCircle
                    ? "inside"
                    : "outside");
    std::printf("load circle  : center %s, radius %.4f (stable %s)\n",
                polar_str(rep.load_circle.center).c_str(), rep.load_circle.radius,
                rep.load_circle.stable_region == stability::StableRegion::InsideCircle ? "inside"
                                                                                       : "outside");
    return rep.verdict == stability::Verdict::Unconditional ? kExitOk : kExitConditional;
}

int cmd_match(const CommonArgs& args) {
    const auto cfg = make_config(args);
    const auto dev = device_at(cfg);
    const auto md = match::conjugate_match(dev);
    if (args.format == "machine") {
        std::printf("%s\n", pipeline::match_json(md).dump(2).c_str());
        return kExitOk;
    }
    std::printf("gamma_S = %s (companion %s)\n", polar_str(md.gamma_s).c_str(),
                polar_str(md.gamma_s_roots[1]).c_str());
    std::printf("gamma_L = %s (companion %s)\n", polar_str(md.gamma_l).c_str(),
                polar_str(md.gamma_l_roots[1]).c_str());
    std::printf("Z_S = %s ohm\n", [&] {
        const Complex z = gamma_to_z(md.gamma_s, cfg.z0);
        char b[64];
        std::snprintf(b, sizeof b, "%.3f %+.3fj", z.real(), z.imag());
        return std::string(b);
    }().c_str());
    std::printf("Z_L = %s ohm\n", [&] {
        const Complex z = gamma_to_z(md.gamma_l, cfg.z0);
        char b[64];
        std::snprintf(b, sizeof b, "%.3f %+.3fj", z.real(), z.imag());
        return std::string(b);
    }().c_str());
    std::printf("Gs = %.3f dB, G0 = %.3f dB, Gl = %.3f dB\n", db10(md.gains.gs), db10(md.gains.g0),
                db10(md.gains.gl));
    std::printf("G_T,max = %.4f (%.3f dB)\n", md.gains.gt, db10(md.gains.gt));
    return kExitOk;
}

int cmd_synth(const CommonArgs& args, const std::string& style) {
    const auto cfg = make_config(args);
    const auto dev = device_at(cfg);
    const auto md = match::conjugate_match(dev);

    struct Port {
        const char* name;
        Complex target;
    };
    if (args.format == "machine") {
        pipeline::json j;
        for (const Port port : {Port{"input", md.gamma_s}, Port{"output", md.gamma_l}}) {
            pipeline::json p;
            p["target_gamma"] = pipeline::complex_json(port.target);
            if (style == "lumped" || style == "both") {
                p["lumped"] = pipeline::json::array();
                for (const auto& sol : synth::synth_lumped(port.target, cfg.z0, cfg.f0))
                    p["lumped"].push_back(pipeline::lumped_json(sol));
            }
            if (style == "stub" || style == "both") {
                p["stub"] = pipeline::json::array();
                for (const auto& sol : synth::synth_single_stub(port.target, cfg.z0))
                    p["stub"].push_back(pipeline::stub_json(sol));
            }
            j[port.name] = p;
        }
        std::printf("%s\n", j.dump(2).c_str());
        return kExitOk;
    }
    for (const Port port : {Port{"input", md.gamma_s}, Port{"output", md.gamma_l}}) {
        std::printf("%s network, target gamma = %s:\n", port.name, polar_str(port.target).c_str());
        if (style == "lumped" || style == "both") {
            int i = 0;
            for (const auto& sol : synth::synth_lumped(port.target, cfg.z0, cfg.f0)) {
                std::printf("  lumped[%d]:", i++);
                for (const auto& pe : sol.elements) {
                    const auto& lv = pe.element.lumped();
                    const char* place = pe.placement == synth::Placement::Shunt ? "shunt" : "series";
                    if (lv.component == ComponentKind::Inductor)
                        std::printf(" %s L = %.4g nH", place, lv.value * 1e9);
                    else
                        std::printf(" %s C = %.4g pF", place, lv.value * 1e12);
                }
                std::printf(" (residual %.2g)\n", sol.residual);
            }
        }
        if (style == "stub" || style == "both") {
            int i = 0;
            for (const auto& sol : synth::synth_single_stub(port.target, cfg.z0)) {
                std::printf("  stub[%d]: series line %.4f lambda, open stub %.4f lambda at %g ohm "
                            "(residual %.2g)\n",
                            i++, sol.line_len, sol.stub_len, sol.z0, sol.residual);
            }
        }
    }
    return kExitOk;
}

int cmd_microstrip(const CommonArgs& args, double z0_target, double len_frac) {
    pipeline::DesignConfig cfg = make_config(args);
    const auto line = microstrip::synthesize(z0_target, cfg.substrate, cfg.f0 > 0 ? cfg.f0 : 1e9);
    if (args.format == "machine") {
        pipeline::json j;
        j["substrate"] = pipeline::json{{"name", cfg.substrate.name},
                                        {"eps_r", cfg.substrate.eps_r},
                                        {"h_mm", cfg.substrate.h},
                                        {"t_um", cfg.substrate.t}};
        j["w_mm"] = line.w;
        j["z0_ohm"] = line.z0;
        j["eps_eff"] = line.eps_eff;
        if (len_frac > 0.0) {
            if (!(cfg.f0 > 0.0))
                throw ConfigError("--freq is required to convert --len-frac to mm");
            j["length_frac"] = len_frac;
            j["length_mm"] = microstrip::electrical_to_physical(len_frac, line.eps_eff, cfg.f0);
        }
        std::printf("%s\n", j.dump(2).c_str());
        return kExitOk;
    }
    std::printf("substrate : %s (eps_r %.4g, h %.4g mm, t %.4g um)\n",
                cfg.substrate.name.c_str(), cfg.substrate.eps_r, cfg.substrate.h, cfg.substrate.t);
    std::printf("width     : %.4f mm (w/h = %.4f)\n", line.w, line.w / cfg.substrate.h);
    std::printf("z0        : %.4f ohm, eps_eff = %.4f\n", line.z0, line.eps_eff);
    if (len_frac > 0.0) {
        if (!(cfg.f0 > 0.0)) throw ConfigError("--freq is required to convert --len-frac to mm");
        const double mm = microstrip::electrical_to_physical(len_frac, line.eps_eff, cfg.f0);
        std::printf("length    : %.4f lambda = %.4f mm at %.4g GHz\n", len_frac, mm, cfg.f0 / 1e9);
    }
    return kExitOk;
}

int cmd_bias(const CommonArgs& args, const bias::BiasSpec& spec, const std::string& series_name) {
    pipeline::DesignConfig cfg;
    if (!args.config.empty()) cfg = pipeline::load_config(args.config);
    const bias::BiasSpec use = cfg.bias_spec.value_or(spec);
    bias::ESeries series = cfg.bias_spec ? cfg.resistor_series : bias::ESeries::E24;
    if (series_name == "E12" || series_name == "e12") series = bias::ESeries::E12;
    else if (series_name == "E24" || series_name == "e24") series = bias::ESeries::E24;
    else if (series_name == "exact") series = bias::ESeries::Exact;

    const auto exact = bias::design_bias(use);
    const auto rounded = bias::round_to_series(exact, use, series);
    if (args.format == "machine") {
        pipeline::json j;
        j["spec"] = pipeline::json{{"v_supply_v", use.v_supply}, {"v_x_v", use.v_x},
                                   {"v_ce_v", use.v_ce},         {"i_c_ma", use.i_c},
                                   {"v_be_v", use.v_be},         {"beta", use.beta},
                                   {"divider_ratio", use.divider_ratio_k}};
        j["exact"] = pipeline::bias_result_json(exact);
        j["series"] = bias::series_name(series);
        j["rounded"] = pipeline::bias_result_json(rounded);
        std::printf("%s\n", j.dump(2).c_str());
        return kExitOk;
    }
    std::printf("spec    : Vo = %.4g V, Vx = %.4g V, Vce = %.4g V, Ic = %.4g mA, Vbe = %.4g V, "
                "beta = %.4g, Ix = %.4g Ib\n",
                use.v_supply, use.v_x, use.v_ce, use.i_c, use.v_be, use.beta, use.divider_ratio_k);
    std::printf("exact   : R1 = %.6g, R2 = %.6g, R3 = %.6g, R4 = %.6g ohm\n", exact.r1, exact.r2,
                exact.r3, exact.r4);
    std::printf("          Ib = %.4g mA, Ix = %.4g mA -> verified Ic = %.6g mA, Vce = %.6g V\n",
                exact.i_b, exact.i_x, exact.verified_ic, exact.verified_vce);
    std::printf("%-7s : R1 = %.6g, R2 = %.6g, R3 = %.6g, R4 = %.6g ohm\n",
                bias::series_name(series), rounded.r1, rounded.r2, rounded.r3, rounded.r4);
    std::printf("          verified Ic = %.6g mA, Vce = %.6g V\n", rounded.verified_ic,
                rounded.verified_vce);
    return kExitOk;
}

int cmd_design(const CommonArgs& args, bool verify_only) {
    auto cfg = make_config(args);
    const auto rep = pipeline::run_design(cfg);

    if (args.format == "human" || args.format == "both")
        std::fputs(pipeline::report_text(rep).c_str(), stdout);

    const auto forms = verify_only
                           ? std::set<pipeline::ReportForm>{pipeline::ReportForm::SweepTable}
                           : forms_for(args.format);
    const auto written = pipeline::emit_report(rep, forms, args.out_dir, stem_of(cfg));
    for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
    return rep.halted_conditional ? kExitConditional : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ampkit -- S-parameter driven microwave amplifier design"};
    app.require_subcommand(1);

    CommonArgs stability_args, match_args, synth_args, ms_args, bias_args, verify_args, design_args;
    std::string synth_style = "both";
    double ms_z0 = 50.0, ms_len_frac = 0.0;
    bias::BiasSpec bias_spec;
    std::string bias_series = "E24";

    auto* c_stability = app.add_subcommand("stability", "K-delta / mu classification and circles");
    add_common(c_stability, stability_args);

    auto* c_match = app.add_subcommand("match", "simultaneous conjugate match and gain");
    add_common(c_match, match_args);

    auto* c_synth = app.add_subcommand("synth", "matching network synthesis");
    add_common(c_synth, synth_args);
    c_synth->add_option("--style", synth_style, "lumped | stub | both")
        ->check(CLI::IsMember({"lumped", "stub", "both"}));

    auto* c_ms = app.add_subcommand("microstrip", "microstrip width/length realization");
    add_common(c_ms, ms_args);
    c_ms->add_option("--z0", ms_z0, "target characteristic impedance, ohm");
    c_ms->add_option("--len-frac", ms_len_frac, "electrical length to convert, fraction of lambda");

    auto* c_bias = app.add_subcommand("bias", "four-resistor bias network design");
    add_common(c_bias, bias_args);
    c_bias->add_option("--v-supply", bias_spec.v_supply, "supply voltage, V");
    c_bias->add_option("--v-x", bias_spec.v_x, "divider tap voltage, V");
    c_bias->add_option("--v-ce", bias_spec.v_ce, "collector-emitter voltage, V");
    c_bias->add_option("--i-c", bias_spec.i_c, "collector current, mA");
    c_bias->add_option("--v-be", bias_spec.v_be, "base-emitter voltage, V");
    c_bias->add_option("--beta", bias_spec.beta, "DC current gain");
    c_bias->add_option("--k", bias_spec.divider_ratio_k, "divider current ratio Ix/Ib");
    c_bias->add_option("--series", bias_series, "E12 | E24 | exact");

    auto* c_verify = app.add_subcommand("verify", "cascade verification sweep");
    add_common(c_verify, verify_args);

    auto* c_design = app.add_subcommand("design", "full design pipeline");
    add_common(c_design, design_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_stability->parsed()) return cmd_stability(stability_args);
        if (c_match->parsed()) return cmd_match(match_args);
        if (c_synth->parsed()) return cmd_synth(synth_args, synth_style);
        if (c_ms->parsed()) return cmd_microstrip(ms_args, ms_z0, ms_len_frac);
        if (c_bias->parsed()) return cmd_bias(bias_args, bias_spec, bias_series);
        if (c_verify->parsed()) return cmd_design(verify_args, /*verify_only=*/true);
        if (c_design->parsed()) return cmd_design(design_args, /*verify_only=*/false);
    } catch (const ampkit::ConditionalStabilityHalt& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConditional;
    } catch (const ampkit::PotentiallyUnstable& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConditional;
    } catch (const ampkit::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitParse;
    } catch (const ampkit::SynthesisError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSynthesis;
    } catch (const ampkit::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return kExitOk;
}
