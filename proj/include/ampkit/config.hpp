#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "ampkit/bias.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/match.hpp"
#include "ampkit/microstrip.hpp"

// Design configuration: CLI flags and/or a flat "key = value" config file
// with [substrate], [bias], [noise] and [sweep] sections. See the README for
// the grammar.

namespace ampkit::pipeline {

enum class NetworkStyle { Lumped, Distributed, Both };

struct SweepSpec {
    double f_start = 0.0;  // Hz
    double f_stop = 0.0;   // Hz
    int n_points = 2;
};

struct DesignConfig {
    std::string sparam_source;
    double f0 = 0.0;   // Hz
    double z0 = 50.0;  // ohm
    microstrip::Substrate substrate = microstrip::Substrate::ro4003c();
    std::optional<bias::BiasSpec> bias_spec;
    bias::ESeries resistor_series = bias::ESeries::E24;
    std::optional<match::NoiseParams> noise;
    NetworkStyle style = NetworkStyle::Both;
    std::optional<SweepSpec> sweep;

    void validate() const {
        if (!(f0 > 0.0)) throw ConfigError("config: design frequency must be positive");
        if (!(z0 > 0.0)) throw ConfigError("config: z0 must be positive");
        if (sweep) {
            if (sweep->n_points < 2) throw ConfigError("config: sweep needs at least 2 points");
            if (sweep->f_start > sweep->f_stop)
                throw ConfigError("config: sweep start above stop");
        }
    }
};

// "3.2 GHz", "3200MHz", "3.2e9" (bare numbers are Hz).
inline double parse_frequency(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) throw ConfigError("frequency: empty value");

    size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("frequency: cannot parse '" + text + "'");
    }
    std::string unit = s.substr(pos);
    std::transform(unit.begin(), unit.end(), unit.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    double scale = 1.0;
    if (unit.empty() || unit == "hz") scale = 1.0;
    else if (unit == "khz") scale = 1e3;
    else if (unit == "mhz") scale = 1e6;
    else if (unit == "ghz") scale = 1e9;
    else throw ConfigError("frequency: unknown unit '" + unit + "' in '" + text + "'");
    const double f = value * scale;
    if (!(f > 0.0)) throw ConfigError("frequency: must be positive, got '" + text + "'");
    return f;
}

namespace detail {

struct IniData {
    // section -> key -> value; top-level keys live under the "" section.
    std::map<std::string, std::map<std::string, std::string>> sections;

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        auto s = sections.find(section);
        if (s == sections.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    }
    bool has_section(const std::string& section) const { return sections.count(section) > 0; }
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline IniData parse_ini(const std::string& text) {
    IniData ini;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            ini.sections[section];
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        ini.sections[section][key] = value;
    }
    return ini;
}

inline double to_number(const std::string& value, const std::string& key) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' is not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw ConfigError("config: '" + key + "' is not a number: '" + value + "'");
    return v;
}

} // namespace detail

inline DesignConfig parse_config(const std::string& text) {
    const auto ini = detail::parse_ini(text);
    DesignConfig cfg;

    if (auto v = ini.get("", "sparams")) cfg.sparam_source = *v;
    if (auto v = ini.get("", "f0")) cfg.f0 = parse_frequency(*v);
    if (auto v = ini.get("", "z0")) cfg.z0 = detail::to_number(*v, "z0");
    if (auto v = ini.get("", "style")) {
        if (*v == "lumped") cfg.style = NetworkStyle::Lumped;
        else if (*v == "distributed") cfg.style = NetworkStyle::Distributed;
        else if (*v == "both") cfg.style = NetworkStyle::Both;
        else throw ConfigError("config: style must be lumped, distributed or both");
    }

    if (ini.has_section("substrate")) {
        microstrip::Substrate def = microstrip::Substrate::ro4003c();
        const double eps_r = ini.get("substrate", "eps_r") ? detail::to_number(*ini.get("substrate", "eps_r"), "eps_r") : def.eps_r;
        const double h = ini.get("substrate", "h_mm") ? detail::to_number(*ini.get("substrate", "h_mm"), "h_mm") : def.h;
        const double t = ini.get("substrate", "t_um") ? detail::to_number(*ini.get("substrate", "t_um"), "t_um") : def.t;
        const std::string name = ini.get("substrate", "name").value_or(def.name);
        cfg.substrate = microstrip::Substrate(eps_r, h, t, name);
    }

    if (ini.has_section("bias")) {
        bias::BiasSpec spec;
        if (auto v = ini.get("bias", "v_supply")) spec.v_supply = detail::to_number(*v, "v_supply");
        if (auto v = ini.get("bias", "v_x")) spec.v_x = detail::to_number(*v, "v_x");
        if (auto v = ini.get("bias", "v_ce")) spec.v_ce = detail::to_number(*v, "v_ce");
        if (auto v = ini.get("bias", "i_c_ma")) spec.i_c = detail::to_number(*v, "i_c_ma");
        if (auto v = ini.get("bias", "v_be")) spec.v_be = detail::to_number(*v, "v_be");
        if (auto v = ini.get("bias", "beta")) spec.beta = detail::to_number(*v, "beta");
        if (auto v = ini.get("bias", "divider_ratio")) spec.divider_ratio_k = detail::to_number(*v, "divider_ratio");
        if (auto v = ini.get("bias", "series")) {
            if (*v == "E12" || *v == "e12") cfg.resistor_series = bias::ESeries::E12;
            else if (*v == "E24" || *v == "e24") cfg.resistor_series = bias::ESeries::E24;
            else if (*v == "exact") cfg.resistor_series = bias::ESeries::Exact;
            else throw ConfigError("config: series must be E12, E24 or exact");
        }
        cfg.bias_spec = spec;
    }

    if (ini.has_section("noise")) {
        match::NoiseParams np;
        if (auto v = ini.get("noise", "f_min_db")) np.f_min = undb10(detail::to_number(*v, "f_min_db"));
        else if (auto w = ini.get("noise", "f_min")) np.f_min = detail::to_number(*w, "f_min");
        else throw ConfigError("config: [noise] needs f_min_db or f_min");
        const auto mag = ini.get("noise", "gamma_opt_mag");
        const auto deg = ini.get("noise", "gamma_opt_deg");
        if (!mag || !deg) throw ConfigError("config: [noise] needs gamma_opt_mag and gamma_opt_deg");
        np.gamma_opt = polar_deg(detail::to_number(*mag, "gamma_opt_mag"),
                                 detail::to_number(*deg, "gamma_opt_deg"));
        if (auto v = ini.get("noise", "r_n")) np.r_n = detail::to_number(*v, "r_n");
        else throw ConfigError("config: [noise] needs r_n");
        if (auto v = ini.get("noise", "freq")) np.freq = parse_frequency(*v);
        if (np.f_min < 1.0) throw ConfigError("config: noise f_min below 1 (0 dB)");
        if (std::abs(np.gamma_opt) >= 1.0) throw ConfigError("config: |gamma_opt| must be < 1");
        if (np.r_n < 0.0) throw ConfigError("config: r_n must be >= 0");
        cfg.noise = np;
    }

    if (ini.has_section("sweep")) {
        SweepSpec sw;
        const auto fs = ini.get("sweep", "f_start");
        const auto fe = ini.get("sweep", "f_stop");
        if (!fs || !fe) throw ConfigError("config: [sweep] needs f_start and f_stop");
        sw.f_start = parse_frequency(*fs);
        sw.f_stop = parse_frequency(*fe);
        if (auto v = ini.get("sweep", "n_points"))
            sw.n_points = static_cast<int>(detail::to_number(*v, "n_points"));
        cfg.sweep = sw;
    }

    // f0/sparams may still come from CLI flags; full validation happens in
    // run_design once the config is final.
    return cfg;
}

inline DesignConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace ampkit::pipeline
