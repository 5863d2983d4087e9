#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ampkit/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace ampkit;
using namespace ampkit::pipeline;
using Catch::Approx;

namespace {

std::string data_path(const std::string& name) {
    return std::string(AMPKIT_TEST_DATA_DIR) + "/" + name;
}

DesignConfig reference_config(NetworkStyle style = NetworkStyle::Both) {
    std::ifstream in(data_path("bfp640.cfg"));
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    DesignConfig cfg = parse_config(ss.str());
    cfg.sparam_source = data_path("bfp640_3p2ghz.s2p");
    cfg.style = style;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("frequency strings parse with units", "[pipeline]") {
    CHECK(parse_frequency("3.2GHz") == Approx(3.2e9));
    CHECK(parse_frequency("3.2 GHz") == Approx(3.2e9));
    CHECK(parse_frequency("3200MHz") == Approx(3.2e9));
    CHECK(parse_frequency("250 khz") == Approx(250e3));
    CHECK(parse_frequency("1.5e9") == Approx(1.5e9));
    CHECK_THROWS_AS(parse_frequency("fast"), ConfigError);
    CHECK_THROWS_AS(parse_frequency("3.2 parsec"), ConfigError);
}

TEST_CASE("config file parses all sections", "[pipeline]") {
    const DesignConfig cfg = reference_config();
    CHECK(cfg.f0 == Approx(3.2e9));
    CHECK(cfg.z0 == 50.0);
    CHECK(cfg.substrate.eps_r == Approx(3.38));
    CHECK(cfg.substrate.h == Approx(0.813));
    CHECK(cfg.substrate.t == Approx(17.0));
    REQUIRE(cfg.bias_spec.has_value());
    CHECK(cfg.bias_spec->beta == Approx(200.0));
    CHECK(cfg.resistor_series == bias::ESeries::E24);
    REQUIRE(cfg.noise.has_value());
    CHECK(cfg.noise->f_min == Approx(undb10(0.85)));
    CHECK(std::abs(cfg.noise->gamma_opt) == Approx(0.42));
}

TEST_CASE("config errors are diagnosed", "[pipeline]") {
    CHECK_THROWS_AS(parse_config("style = sideways\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("f0 3.2GHz\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[sweep]\nf_start = 1 GHz\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[noise]\nr_n = 9\n"), ConfigError);
}

TEST_CASE("full design run reproduces the reference numbers", "[pipeline]") {
    const DesignReport rep = run_design(reference_config());

    CHECK_FALSE(rep.halted_conditional);
    CHECK(rep.stability.verdict == stability::Verdict::Unconditional);
    CHECK(rep.stability.delta_mag == Approx(0.503).margin(0.005));
    CHECK(rep.stability.mu == Approx(1.0443).margin(0.003));

    REQUIRE(rep.match_design.has_value());
    CHECK(std::abs(rep.match_design->gamma_s) == Approx(0.734).margin(0.01));
    CHECK(arg_deg(rep.match_design->gamma_s) == Approx(-157.78).margin(0.5));
    REQUIRE(rep.max_gain_db.has_value());
    CHECK(*rep.max_gain_db == Approx(18.72).margin(0.05));

    REQUIRE(rep.input.has_value());
    REQUIRE(rep.output.has_value());
    REQUIRE_FALSE(rep.input->stub.empty());
    CHECK(rep.input->stub[0].line_len == Approx(0.029).margin(0.002));
    CHECK(rep.input->stub[0].stub_len == Approx(0.181).margin(0.002));
    CHECK(rep.output->stub[0].line_len == Approx(0.236).margin(0.002));
    CHECK(rep.output->stub[0].stub_len == Approx(0.169).margin(0.002));
    REQUIRE_FALSE(rep.input->lumped.empty());

    REQUIRE(rep.input->microstrip.has_value());
    CHECK(rep.input->microstrip->line.z0 == Approx(50.0).margin(0.01));

    REQUIRE(rep.bias_design.has_value());
    CHECK(rep.bias_design->exact.r1 == Approx(300.0).epsilon(0.005));
    CHECK(rep.bias_design->rounded.r3 == Approx(6800.0));

    REQUIRE(rep.noise.has_value());
    CHECK(rep.noise->f_min_db == Approx(0.85).margin(1e-9));
    CHECK(rep.noise->nf_at_match_db >= rep.noise->f_min_db);

    REQUIRE_FALSE(rep.verification.empty());
    REQUIRE(rep.summary_gain_db.has_value());
    CHECK(*rep.summary_gain_db == Approx(18.72).margin(0.1));
    CHECK(undb10(*rep.summary_gain_db) == Approx(74.59).epsilon(0.01));
    const auto& row = rep.verification.front();
    CHECK(row.s11_db < -20.0);
    CHECK(row.s22_db < -20.0);
    REQUIRE(row.nf_db.has_value());
    CHECK(*row.nf_db >= rep.noise->f_min_db);

    CHECK_FALSE(rep.deviations.empty());
}

TEST_CASE("lumped-only style verifies to the same gain", "[pipeline]") {
    const DesignReport rep = run_design(reference_config(NetworkStyle::Lumped));
    REQUIRE(rep.summary_gain_db.has_value());
    CHECK(*rep.summary_gain_db == Approx(18.72).margin(0.1));
    CHECK(rep.input->stub.empty());
    CHECK_FALSE(rep.input->microstrip.has_value());
}

TEST_CASE("conditionally stable devices halt the pipeline", "[pipeline]") {
    // A synthetic device with mu < 1 written to a temp file.
    const auto dir = std::filesystem::temp_directory_path() / "ampkit_gate_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "conditional.s2p").string();
    {
        std::ofstream out(path);
        out << "# GHz S RI R 50\n"
               "3.2  0.7 0.3  4.0 1.0  0.2 0.1  0.6 -0.3\n";
    }
    DesignConfig cfg = reference_config();
    cfg.sparam_source = path;

    const DesignReport rep = run_design(cfg);
    CHECK(rep.halted_conditional);
    CHECK(rep.stability.verdict == stability::Verdict::Conditional);
    // Gate property: nothing synthesized.
    CHECK_FALSE(rep.match_design.has_value());
    CHECK_FALSE(rep.input.has_value());
    CHECK_FALSE(rep.output.has_value());
    CHECK(rep.verification.empty());
    // Circles still reported for the designer.
    CHECK(rep.stability.load_circle.radius > 0.0);
}

TEST_CASE("identical configs produce byte-identical machine reports", "[pipeline]") {
    const DesignReport a = run_design(reference_config());
    const DesignReport b = run_design(reference_config());
    CHECK(report_json(a) == report_json(b));
    CHECK(sweep_csv(a) == sweep_csv(b));
    CHECK(smith::render_svg(smith_geometry(a)) == smith::render_svg(smith_geometry(b)));
}

TEST_CASE("machine report re-parses losslessly", "[pipeline]") {
    const DesignReport rep = run_design(reference_config());
    const auto j = nlohmann::json::parse(report_json(rep));

    CHECK(j["f0_hz"].get<double>() == rep.f0_hz);
    CHECK(j["stability"]["mu"].get<double>() == rep.stability.mu);
    CHECK(j["stability"]["delta_mag"].get<double>() == rep.stability.delta_mag);
    CHECK(j["match"]["gamma_s"]["re"].get<double>() == rep.match_design->gamma_s.real());
    CHECK(j["match"]["gains"]["gt"].get<double>() == rep.match_design->gains.gt);
    CHECK(j["input_network"]["stub"][0]["line_len_frac"].get<double>() ==
          rep.input->stub[0].line_len);
    CHECK(j["bias"]["exact"]["r3_ohm"].get<double>() == rep.bias_design->exact.r3);
    CHECK(j["verification"][0]["s21_db"].get<double>() == rep.verification[0].s21_db);
    CHECK(j["bias_annotation"]["vce_v"].get<double>() == *rep.bias_annotation.vce_v);
}

TEST_CASE("sweep table has the documented header and row shape", "[pipeline]") {
    const DesignReport rep = run_design(reference_config());
    const std::string csv = sweep_csv(rep);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "freq_Hz,S11_dB,S11_deg,S21_dB,S21_deg,S22_dB,S22_deg,K,mu,NF_dB");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 9);
    }
    CHECK(rows == static_cast<int>(rep.verification.size()));

    // Without noise parameters the NF column disappears.
    DesignConfig no_noise = reference_config();
    no_noise.noise.reset();
    const std::string csv2 = sweep_csv(run_design(no_noise));
    std::istringstream in2(csv2);
    std::getline(in2, header);
    CHECK(header == "freq_Hz,S11_dB,S11_deg,S21_dB,S21_deg,S22_dB,S22_deg,K,mu");
}

TEST_CASE("smith geometry covers circles and match points", "[pipeline]") {
    const DesignReport rep = run_design(reference_config());
    const auto geo = smith_geometry(rep);
    REQUIRE(geo.circles.size() >= 2 + 4);  // stability + noise ladder
    REQUIRE(geo.markers.size() >= 2);

    // Both stability circles enclose the unit disk for this device.
    CHECK(geo.circles[0].radius - std::abs(geo.circles[0].center) > 1.0);
    CHECK(geo.circles[1].radius - std::abs(geo.circles[1].center) > 1.0);

    const std::string svg = smith::render_svg(geo);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("stability") != std::string::npos);
}

TEST_CASE("emit_report writes the documented file set", "[pipeline]") {
    const DesignReport rep = run_design(reference_config());
    const auto dir = std::filesystem::temp_directory_path() / "ampkit_emit_test";
    std::filesystem::remove_all(dir);

    const auto written = emit_report(rep,
                                     {ReportForm::MachineStructured, ReportForm::SweepTable,
                                      ReportForm::SmithGeometry, ReportForm::HumanText},
                                     dir.string(), "bfp640");
    REQUIRE(written.size() == 4);
    CHECK(std::filesystem::exists(dir / "bfp640.report"));
    CHECK(std::filesystem::exists(dir / "bfp640.sweep.csv"));
    CHECK(std::filesystem::exists(dir / "bfp640.smith.svg"));
    CHECK(std::filesystem::exists(dir / "bfp640.txt"));

    CHECK(slurp((dir / "bfp640.report").string()) == report_json(rep));
    CHECK(slurp((dir / "bfp640.sweep.csv").string()) == sweep_csv(rep));

    const std::string text = report_text(rep);
    CHECK(text.find("unconditionally stable") != std::string::npos);
    CHECK(text.find("G_T,max") != std::string::npos);
}

TEST_CASE("verify_cascade needs in-band sweep frequencies", "[pipeline]") {
    DesignConfig cfg = reference_config();
    cfg.sweep = SweepSpec{3.0e9, 3.4e9, 5};  // single-point data cannot be swept
    CHECK_THROWS_AS(run_design(cfg), OutOfBand);
}

TEST_CASE("multi-point data sweeps across the band", "[pipeline]") {
    // Synthetic smooth device data bracketing f0: gain rolls off with
    // frequency, phases advance linearly.
    touchstone::TouchstoneDocument doc;
    doc.z0 = 50.0;
    const TwoPortS ref = fixtures::bfp640();
    for (int i = 0; i <= 8; ++i) {
        const double f = 2.8e9 + i * 0.1e9;
        const double scale = 3.2e9 / f;
        TwoPortS rec;
        rec.freq = f;
        rec.z0 = 50.0;
        rec.s11 = ref.s11 * std::polar(1.0, -0.1 * i);
        rec.s21 = ref.s21 * scale * std::polar(1.0, -0.3 * i);
        rec.s12 = ref.s12 * std::polar(1.0, 0.05 * i);
        rec.s22 = ref.s22 * std::polar(1.0, -0.08 * i);
        doc.records.push_back(rec);
    }
    const auto dir = std::filesystem::temp_directory_path() / "ampkit_sweep_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "multipoint.s2p").string();
    {
        std::ofstream out(path);
        out << touchstone::write_touchstone(doc, touchstone::SFormat::RI);
    }

    DesignConfig cfg = reference_config(NetworkStyle::Distributed);
    cfg.sparam_source = path;
    cfg.noise.reset();
    cfg.sweep = SweepSpec{2.9e9, 3.5e9, 13};
    const DesignReport rep = run_design(cfg);

    REQUIRE(rep.verification.size() == 13);
    // The f0 row delivers the maximum gain into matched ports; off-frequency
    // rows must not exceed it.
    double f0_gain = 0.0;
    for (const auto& row : rep.verification) {
        REQUIRE(std::isfinite(row.s21_db));
        REQUIRE(std::isfinite(row.k));
        if (std::abs(row.freq_hz - 3.2e9) < 1.0) f0_gain = row.s21_db;
    }
    REQUIRE(rep.summary_gain_db.has_value());
    CHECK(f0_gain == Approx(*rep.summary_gain_db));
    for (const auto& row : rep.verification) REQUIRE(row.s21_db <= f0_gain + 1e-6);

    // Interpolated sampling matches a direct record at a grid point.
    const TwoPortS at_record = touchstone::sample_at(doc, 3.0e9);
    CHECK(std::abs(at_record.s21 - doc.records[2].s21) < 1e-15);
}

TEST_CASE("cascade gain equals the match design over random devices", "[pipeline]") {
    auto g = fixtures::rng(151);
    for (int i = 0; i < 20; ++i) {
        const TwoPortS dev = fixtures::random_stable_twoport(g, 1e9);
        const auto md = match::conjugate_match(dev);
        touchstone::TouchstoneDocument doc;
        doc.z0 = 50.0;
        doc.records = {dev};

        const auto in_sol = synth::synth_single_stub(md.gamma_s, 50.0).front();
        const auto out_sol = synth::synth_single_stub(md.gamma_l, 50.0).front();
        std::vector<synth::PlacedElement> in_elems = {
            {synth::Placement::Shunt, ElementModel::open_stub(50.0, in_sol.stub_len)},
            {synth::Placement::Series, ElementModel::line(50.0, in_sol.line_len)}};
        std::vector<synth::PlacedElement> out_elems = {
            {synth::Placement::Shunt, ElementModel::open_stub(50.0, out_sol.stub_len)},
            {synth::Placement::Series, ElementModel::line(50.0, out_sol.line_len)}};

        const auto rows =
            verify_cascade(in_elems, out_elems, doc, {1e9}, 1e9, 50.0);
        REQUIRE(rows[0].s21_db == Approx(db10(md.gains.gt)).margin(1e-6));
        REQUIRE(rows[0].s11_db < -100.0);
        REQUIRE(rows[0].s22_db < -100.0);
    }
}

TEST_CASE("degenerate sweep around f0 yields a well-formed table", "[pipeline]") {
    DesignConfig cfg = reference_config();
    cfg.sweep = SweepSpec{3.2e9, 3.2e9, 2};
    const DesignReport rep = run_design(cfg);
    REQUIRE(rep.verification.size() == 2);
    CHECK(rep.verification[0].freq_hz == rep.verification[1].freq_hz);
    CHECK(rep.verification[0].s21_db == Approx(rep.verification[1].s21_db));
}
