// Acceptance suite: end-to-end checks of the documented design numbers and
// the library-wide property guarantees. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fail.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ampkit/ampkit.hpp"
#include "support/fixtures.hpp"

using namespace ampkit;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    std::vector<std::string> problems;

    void check(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void check_close(double got, double want, double tolerance, const std::string& what) {
        if (!(std::abs(got - want) <= tolerance)) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s: got %.6g, want %.6g +/- %.2g", what.c_str(), got,
                          want, tolerance);
            problems.push_back(buf);
        }
    }
    void finish(int number) {
        if (problems.empty()) {
            std::printf("[PASS] criterion %2d: %s\n", number, name.c_str());
        } else {
            ++g_failures;
            std::printf("[FAIL] criterion %2d: %s\n", number, name.c_str());
            for (const auto& p : problems) std::printf("       - %s\n", p.c_str());
        }
    }
};

void run(int number, const std::string& name, const std::function<void(Criterion&)>& body) {
    Criterion c;
    c.name = name;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.problems.push_back(std::string("exception: ") + e.what());
    }
    c.finish(number);
}

std::string data_path(const std::string& name) {
    return std::string(AMPKIT_TEST_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double wrap_deg(double d) {
    while (d > 180.0) d -= 360.0;
    while (d < -180.0) d += 360.0;
    return d;
}

// |gamma_in| and |gamma_out| stay inside the unit circle over a dense polar
// grid of passive terminations.
bool disk_scan(const TwoPortS& net, int n_radial, int n_angular) {
    for (int i = 0; i < n_radial; ++i) {
        const double r = (i + 0.5) / n_radial;
        for (int j = 0; j < n_angular; ++j) {
            const Complex gamma = std::polar(r, 2.0 * pi * j / n_angular);
            const Complex gin = net.s11 + net.s12 * net.s21 * gamma / (1.0 - net.s22 * gamma);
            if (std::abs(gin) >= 1.0 + 1e-9) return false;
            const Complex gout = net.s22 + net.s12 * net.s21 * gamma / (1.0 - net.s11 * gamma);
            if (std::abs(gout) >= 1.0 + 1e-9) return false;
        }
    }
    return true;
}

} // namespace

int main() {
    const TwoPortS dev = fixtures::bfp640();

    run(1, "determinant magnitude", [&](Criterion& c) {
        c.check_close(std::abs(stability::delta(dev)), 0.503, 0.005, "|delta|");
    });

    run(2, "mu-test, K and verdict equivalence", [&](Criterion& c) {
        const auto rep = stability::classify(dev);
        c.check_close(rep.mu, 1.0443, 0.003, "mu");
        c.check_close(rep.k, 1.025, 0.005, "K");
        c.check(rep.verdict == stability::Verdict::Unconditional, "verdict not unconditional");
        const bool k_delta = rep.k > 1.0 && rep.delta_mag < 1.0;
        c.check(k_delta == (rep.mu > 1.0), "K-delta and mu tests disagree");
    });

    run(3, "conjugate match roots", [&](Criterion& c) {
        const auto md = match::conjugate_match(dev);
        c.check_close(std::abs(md.gamma_s_roots[0]), 0.734, 0.01, "|gamma_S|");
        c.check_close(wrap_deg(arg_deg(md.gamma_s_roots[0]) - (-157.78)), 0.0, 0.5, "arg gamma_S");
        c.check_close(std::abs(md.gamma_s_roots[1]), 1.3575, 0.01, "|gamma_S companion|");
        c.check_close(wrap_deg(arg_deg(md.gamma_s_roots[1]) - (-157.7)), 0.0, 0.5,
                      "arg gamma_S companion");
        c.check_close(std::abs(md.gamma_l_roots[0]), 0.666, 0.01, "|gamma_L|");
        c.check_close(wrap_deg(arg_deg(md.gamma_l_roots[0]) - 57.62), 0.0, 0.5, "arg gamma_L");
        c.check_close(std::abs(md.gamma_l_roots[1]), 1.493, 0.01, "|gamma_L companion|");
        c.check_close(wrap_deg(arg_deg(md.gamma_l_roots[1]) - 57.62), 0.0, 0.5,
                      "arg gamma_L companion");
        c.check_close(std::abs(md.gamma_s_roots[0]) * std::abs(md.gamma_s_roots[1]), 1.0, 1e-3,
                      "gamma_S root product");
        c.check_close(std::abs(md.gamma_l_roots[0]) * std::abs(md.gamma_l_roots[1]), 1.0, 1e-3,
                      "gamma_L root product");
    });

    run(4, "gain blocks at the published match", [&](Criterion& c) {
        const auto g =
            match::gain_blocks(dev, fixtures::printed_gamma_s(), fixtures::printed_gamma_l());
        c.check_close(db10(g.gs), 3.36, 0.05, "G_S dB");
        c.check_close(db10(g.g0), 17.07, 0.05, "G_0 dB");
        c.check_close(db10(g.gl), -1.709, 0.05, "G_L dB");
        c.check_close(db10(g.gt), 18.721, 0.05, "G_T dB");
        const double k = stability::k_factor(dev);
        const double msg = std::abs(dev.s21) / std::abs(dev.s12) / (k + std::sqrt(k * k - 1.0));
        c.check_close(db10(g.gt), db10(msg), 0.01, "G_T vs K-form cross-check");
    });

    run(5, "distributed synthesis lengths", [&](Criterion& c) {
        const auto md = match::conjugate_match(dev);
        const auto input = synth::synth_single_stub(md.gamma_s, 50.0);
        const auto output = synth::synth_single_stub(md.gamma_l, 50.0);
        auto contains = [](const std::vector<synth::StubSolution>& sols, double line, double stub) {
            for (const auto& s : sols)
                if (std::abs(s.line_len - line) <= 0.002 && std::abs(s.stub_len - stub) <= 0.002)
                    return true;
            return false;
        };
        c.check(contains(input, 0.029, 0.181), "input network (0.029, 0.181) not enumerated");
        c.check(contains(output, 0.236, 0.169), "output network (0.236, 0.169) not enumerated");
    });

    run(6, "idealized cascade verification", [&](Criterion& c) {
        const auto doc = touchstone::parse_touchstone(slurp(data_path("bfp640_3p2ghz.s2p")));
        const auto md = match::conjugate_match(dev);
        const std::vector<double> freqs = {3.2e9};

        // distributed realization
        {
            const auto in_sol = synth::synth_single_stub(md.gamma_s, 50.0).front();
            const auto out_sol = synth::synth_single_stub(md.gamma_l, 50.0).front();
            std::vector<synth::PlacedElement> in_elems = {
                {synth::Placement::Shunt, ElementModel::open_stub(50.0, in_sol.stub_len)},
                {synth::Placement::Series, ElementModel::line(50.0, in_sol.line_len)}};
            std::vector<synth::PlacedElement> out_elems = {
                {synth::Placement::Shunt, ElementModel::open_stub(50.0, out_sol.stub_len)},
                {synth::Placement::Series, ElementModel::line(50.0, out_sol.line_len)}};
            const auto rows =
                pipeline::verify_cascade(in_elems, out_elems, doc, freqs, 3.2e9, 50.0);
            c.check_close(rows[0].s21_db, 18.72, 0.1, "distributed |s21| at f0");
            c.check(rows[0].s11_db <= -20.0, "distributed |s11| above -20 dB");
            c.check(rows[0].s22_db <= -20.0, "distributed |s22| above -20 dB");
        }
        // lumped realization
        {
            const auto in_sol = synth::synth_lumped(md.gamma_s, 50.0, 3.2e9).front();
            const auto out_sol = synth::synth_lumped(md.gamma_l, 50.0, 3.2e9).front();
            const auto rows = pipeline::verify_cascade(in_sol.elements, out_sol.elements, doc,
                                                       freqs, 3.2e9, 50.0);
            c.check_close(rows[0].s21_db, 18.72, 0.1, "lumped |s21| at f0");
            c.check(rows[0].s11_db <= -20.0, "lumped |s11| above -20 dB");
            c.check(rows[0].s22_db <= -20.0, "lumped |s22| above -20 dB");
        }
    });

    run(7, "bias design values", [&](Criterion& c) {
        bias::BiasSpec spec;
        spec.v_supply = 5.0;
        spec.v_x = 1.5;
        spec.v_ce = 2.0;
        spec.i_c = 20.0;
        spec.v_be = 0.8;
        spec.beta = 200.0;
        spec.divider_ratio_k = 50.0;
        const auto r = bias::design_bias(spec);
        c.check_close(r.r1, 300.0, 300.0 * 0.005, "R1");
        c.check_close(r.r2, 686.0, 686.0 * 0.005, "R2");
        c.check_close(r.r3, 7000.0, 7000.0 * 0.005, "R3");
        c.check_close(r.r4, 150.0, 150.0 * 0.005, "R4");
        const auto rounded = bias::round_to_series(r, spec, bias::ESeries::E24);
        c.check_close(rounded.r3, 6800.0, 1e-9, "R3 under E24");
        c.check_close(r.verified_ic, 20.0, 0.02, "verified Ic");
        c.check_close(r.verified_vce, 2.0, 0.002, "verified Vce");
    });

    run(8, "property suites", [&](Criterion& c) {
        // S <-> ABCD round trips.
        auto g = fixtures::rng(1009);
        for (int i = 0; i < 1000; ++i) {
            const TwoPortS net = fixtures::random_twoport(g);
            const TwoPortS back = abcd_to_s(s_to_abcd(net), net.z0);
            if (std::abs(back.s11 - net.s11) > 1e-12 || std::abs(back.s12 - net.s12) > 1e-12 ||
                std::abs(back.s21 - net.s21) > 1e-12 || std::abs(back.s22 - net.s22) > 1e-12) {
                c.check(false, "S<->ABCD round trip exceeded 1e-12");
                break;
            }
        }
        // Matching networks reproduce 500 random in-disk targets.
        bool synth_ok = true;
        for (int i = 0; i < 500 && synth_ok; ++i) {
            const Complex target = fixtures::random_in_disk(g, 0.95, 0.02);
            for (const auto& sol : synth::synth_lumped(target, 50.0, 3.2e9))
                if (sol.residual >= 1e-9) synth_ok = false;
            for (const auto& sol : synth::synth_single_stub(target, 50.0))
                if (sol.residual >= 1e-9) synth_ok = false;
        }
        c.check(synth_ok, "synthesis residual reached 1e-9");
        // Microstrip round trip over z0 in [20, 120].
        const auto sub = microstrip::Substrate::ro4003c();
        for (double z0 = 20.0; z0 <= 120.0; z0 += 1.0) {
            const auto line = microstrip::synthesize(z0, sub);
            if (std::abs(microstrip::analyze(line.w, sub).z0 - z0) >= 0.01) {
                c.check(false, "microstrip round trip above 0.01 ohm");
                break;
            }
        }
        // Noise circles reproduce their targets at 360 sampled points.
        match::NoiseParams np;
        np.f_min = undb10(0.85);
        np.gamma_opt = polar_deg(0.42, 64.0);
        np.r_n = 9.0;
        bool noise_ok = true;
        for (const double extra_db : {0.25, 0.5, 1.0, 2.0}) {
            const auto nc = match::noise_circle(undb10(0.85 + extra_db), np, 50.0);
            for (int i = 0; i < 360; ++i) {
                const Complex gamma = nc.center + nc.radius * std::polar(1.0, 2.0 * pi * i / 360.0);
                if (std::abs(match::noise_figure(gamma, np, 50.0) - nc.f_target) > 1e-9)
                    noise_ok = false;
            }
        }
        c.check(noise_ok, "noise circle point missed its target by over 1e-9");
        // Disk scans on 50 random unconditionally stable devices (1e6 points).
        for (int i = 0; i < 50; ++i) {
            const TwoPortS net = fixtures::random_stable_twoport(g);
            const auto verdict = stability::classify(net).verdict;
            if (verdict != stability::Verdict::Unconditional) {
                c.check(false, "stable generator produced a conditional device");
                break;
            }
            if (!disk_scan(net, 1000, 1000)) {
                c.check(false, "disk scan found an unstable termination");
                break;
            }
        }
    });

    run(9, "touchstone formats and reference file", [&](Criterion& c) {
        using namespace touchstone;
        const auto doc = parse_touchstone(slurp(data_path("bfp640_ma.s2p")));
        const auto& rec = doc.records.front();
        c.check_close(rec.s11.real(), -0.3013, 1e-3, "s11 re");
        c.check_close(rec.s11.imag(), 0.1411, 1e-3, "s11 im");
        c.check_close(rec.s12.real(), 0.055728, 1e-3, "s12 re");
        c.check_close(rec.s12.imag(), 0.0527, 1e-3, "s12 im");
        c.check_close(rec.s22.real(), 0.055297, 1e-3, "s22 re");
        c.check_close(rec.s22.imag(), -0.1283, 1e-3, "s22 im");

        auto g = fixtures::rng(1013);
        for (int iter = 0; iter < 10; ++iter) {
            TouchstoneDocument d;
            d.z0 = 50.0;
            double f = 0.5e9;
            for (int i = 0; i < 4; ++i) {
                TwoPortS r;
                r.freq = f;
                r.z0 = 50.0;
                r.s11 = fixtures::random_in_disk(g, 0.9, 0.05);
                r.s21 = fixtures::random_in_disk(g, 5.0, 0.1);
                r.s12 = fixtures::random_in_disk(g, 0.3, 0.01);
                r.s22 = fixtures::random_in_disk(g, 0.9, 0.05);
                d.records.push_back(r);
                f += 0.5e9;
            }
            for (const SFormat fmt : {SFormat::MA, SFormat::DB, SFormat::RI}) {
                const auto back = parse_touchstone(write_touchstone(d, fmt));
                for (size_t i = 0; i < d.records.size(); ++i) {
                    if (std::abs(back.records[i].s11 - d.records[i].s11) > 1e-9 ||
                        std::abs(back.records[i].s21 - d.records[i].s21) > 1e-9 ||
                        std::abs(back.records[i].s12 - d.records[i].s12) > 1e-9 ||
                        std::abs(back.records[i].s22 - d.records[i].s22) > 1e-9)
                        c.check(false, "cross-format round trip exceeded 1e-9");
                }
            }
        }
    });

    run(10, "documented non-reproducibles covered by oracles", [&](Criterion& c) {
        // Noise-model property stand-ins for the absent vendor parameters.
        match::NoiseParams np;
        np.f_min = undb10(1.34);  // reference design noise figure, standing in as Fmin
        np.gamma_opt = polar_deg(0.35, 50.0);
        np.r_n = 7.5;
        c.check_close(match::noise_figure(np.gamma_opt, np, 50.0), np.f_min, 1e-12,
                      "F(gamma_opt) == Fmin");
        const auto nc = match::noise_circle(np.f_min, np, 50.0);
        c.check_close(std::abs(nc.center - np.gamma_opt), 0.0, 1e-12, "Fmin circle center");
        c.check_close(nc.radius, 0.0, 1e-12, "Fmin circle radius");

        // Stability-circle values rest on the disk-scan oracle.
        c.check(disk_scan(dev, 1000, 1000), "reference device disk scan");
        const auto rep = stability::classify(dev);
        for (const auto* circle : {&rep.source_circle, &rep.load_circle}) {
            const double sep = std::abs(circle->center);
            c.check(circle->radius - sep > 1.0 || sep - circle->radius > 1.0,
                    "stability circle boundary crosses the unit disk");
        }

        // Lumped element values rest on the self-consistency oracle.
        const auto md = match::conjugate_match(dev);
        for (const Complex target : {md.gamma_s, md.gamma_l})
            for (const auto& sol : synth::synth_lumped(target, 50.0, 3.2e9))
                c.check(sol.residual < 1e-9, "lumped self-consistency residual");

        // The pipeline report records the model-scope deviations.
        pipeline::DesignConfig cfg;
        cfg.sparam_source = data_path("bfp640_3p2ghz.s2p");
        cfg.f0 = 3.2e9;
        const auto report = pipeline::run_design(cfg);
        c.check(!report.deviations.empty(), "deviations list empty");
    });

    std::printf("%s: %d/10 criteria passed\n", g_failures == 0 ? "OK" : "FAILED", 10 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
