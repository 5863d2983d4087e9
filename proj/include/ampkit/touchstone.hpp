#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ampkit/complex_utils.hpp"
#include "ampkit/errors.hpp"
#include "ampkit/twoport.hpp"

// Touchstone v1 two-port reader/writer. Files are normalized on ingest:
// frequencies to Hz, values to rectangular form, regardless of the option
// line. Data rows carry S11 S21 S12 S22 (the two-port column order of the
// Touchstone standard).

namespace ampkit::touchstone {

enum class FreqUnit { Hz, kHz, MHz, GHz };
enum class SFormat { MA, DB, RI };

inline double freq_unit_scale(FreqUnit u) {
    switch (u) {
    case FreqUnit::Hz: return 1.0;
    case FreqUnit::kHz: return 1e3;
    case FreqUnit::MHz: return 1e6;
    case FreqUnit::GHz: return 1e9;
    }
    return 1.0;
}

inline const char* freq_unit_name(FreqUnit u) {
    switch (u) {
    case FreqUnit::Hz: return "Hz";
    case FreqUnit::kHz: return "kHz";
    case FreqUnit::MHz: return "MHz";
    case FreqUnit::GHz: return "GHz";
    }
    return "Hz";
}

// Bias point parsed from comment lines; S-parameters are only valid at the
// bias they were measured at, so reports echo this when present.
struct BiasAnnotation {
    std::optional<double> vce_v;
    std::optional<double> ic_ma;

    bool empty() const { return !vce_v && !ic_ma; }
};

struct TouchstoneDocument {
    FreqUnit freq_unit = FreqUnit::GHz;
    SFormat format = SFormat::MA;
    double z0 = 50.0;
    std::vector<TwoPortS> records;  // strictly increasing freq, Hz/RI internal
    BiasAnnotation bias;

    double min_freq() const { return records.front().freq; }
    double max_freq() const { return records.back().freq; }
};

namespace detail {

inline std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

inline double parse_number(const std::string& tok, int line_no) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
    }
    if (pos != tok.size())
        throw ParseError("line " + std::to_string(line_no) + ": '" + tok + "' is not a number");
    return v;
}

// Scans a comment for "<token> <number>" with the token at a word boundary;
// e.g. "! bias: Vce = 2.0 V, Ic = 20 mA".
inline std::optional<double> scan_comment_token(const std::string& comment, const std::string& token) {
    const std::string lc = [&] {
        std::string s = comment;
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    }();
    size_t pos = 0;
    while ((pos = lc.find(token, pos)) != std::string::npos) {
        const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(lc[pos - 1]));
        const size_t end = pos + token.size();
        const bool right_ok = end >= lc.size() || !std::isalnum(static_cast<unsigned char>(lc[end]));
        if (left_ok && right_ok) {
            // First parseable number after the token.
            for (size_t i = end; i < lc.size(); ++i) {
                const char c = lc[i];
                if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
                    try {
                        return std::stod(comment.substr(i));
                    } catch (const std::exception&) {
                        break;
                    }
                }
            }
        }
        pos = end;
    }
    return std::nullopt;
}

inline Complex decode_pair(SFormat fmt, double v1, double v2) {
    switch (fmt) {
    case SFormat::MA: return polar_deg(v1, v2);
    case SFormat::DB: return polar_deg(undb20(v1), v2);
    case SFormat::RI: return Complex(v1, v2);
    }
    return {};
}

inline std::pair<double, double> encode_pair(SFormat fmt, const Complex& c) {
    switch (fmt) {
    case SFormat::MA: return {std::abs(c), arg_deg(c)};
    case SFormat::DB: return {db20(std::abs(c)), arg_deg(c)};
    case SFormat::RI: return {c.real(), c.imag()};
    }
    return {0.0, 0.0};
}

struct OptionLine {
    FreqUnit unit = FreqUnit::GHz;
    SFormat format = SFormat::MA;
    double z0 = 50.0;
};

inline OptionLine parse_option_line(const std::string& line, int line_no) {
    OptionLine opt;
    auto tokens = split_ws(line.substr(1));  // past '#'
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw MalformedOptionLine("line " + std::to_string(line_no) + ": " + why + " in option line '" +
                                  line + "'");
    };
    if (i < tokens.size()) {
        const std::string t = upper(tokens[i]);
        if (t == "HZ") { opt.unit = FreqUnit::Hz; ++i; }
        else if (t == "KHZ") { opt.unit = FreqUnit::kHz; ++i; }
        else if (t == "MHZ") { opt.unit = FreqUnit::MHz; ++i; }
        else if (t == "GHZ") { opt.unit = FreqUnit::GHz; ++i; }
    }
    if (i < tokens.size()) {
        const std::string t = upper(tokens[i]);
        if (t == "S") { ++i; }
        else if (t == "Y" || t == "Z" || t == "H" || t == "G")
            throw UnsupportedParamType("line " + std::to_string(line_no) + ": parameter type '" +
                                       tokens[i] + "' is not supported; only S-parameter files are read");
    }
    if (i < tokens.size()) {
        const std::string t = upper(tokens[i]);
        if (t == "MA") { opt.format = SFormat::MA; ++i; }
        else if (t == "DB") { opt.format = SFormat::DB; ++i; }
        else if (t == "RI") { opt.format = SFormat::RI; ++i; }
    }
    if (i < tokens.size()) {
        if (upper(tokens[i]) != "R") fail("unexpected token '" + tokens[i] + "'");
        ++i;
        if (i >= tokens.size()) fail("'R' without a reference impedance");
        opt.z0 = parse_number(tokens[i], line_no);
        if (!(opt.z0 > 0.0)) fail("reference impedance must be positive");
        ++i;
    }
    if (i != tokens.size()) fail("trailing token '" + tokens[i] + "'");
    return opt;
}

} // namespace detail

inline TouchstoneDocument parse_touchstone(const std::string& text) {
    TouchstoneDocument doc;
    bool have_option = false;
    detail::OptionLine opt;  // defaults: GHz S MA R 50

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // Strip trailing '!' comment on data lines.
        std::string body = line;
        const size_t excl = body.find('!');
        std::string comment;
        if (excl != std::string::npos) {
            comment = body.substr(excl + 1);
            body = body.substr(0, excl);
        }
        if (!comment.empty()) {
            // Negative values cannot be a usable bias annotation; skip them.
            if (auto v = detail::scan_comment_token(comment, "vce"); v && *v >= 0.0)
                doc.bias.vce_v = v;
            if (auto v = detail::scan_comment_token(comment, "ic"); v && *v >= 0.0)
                doc.bias.ic_ma = v;
        }
        // Blank after comment removal?
        const size_t first = body.find_first_not_of(" \t");
        if (first == std::string::npos) continue;

        if (body[first] == '[') {
            const std::string kw = body.substr(first);
            throw UnsupportedVersion("line " + std::to_string(line_no) + ": keyword '" +
                                     kw.substr(0, kw.find(']') + 1) +
                                     "' marks a Touchstone v2 file; only v1 is supported");
        }
        if (body[first] == '#') {
            if (have_option)
                throw MalformedOptionLine("line " + std::to_string(line_no) +
                                          ": second option line encountered");
            if (!doc.records.empty())
                throw MalformedOptionLine("line " + std::to_string(line_no) +
                                          ": option line must precede the data rows");
            opt = detail::parse_option_line(body.substr(first), line_no);
            have_option = true;
            continue;
        }

        auto tokens = detail::split_ws(body);
        if (tokens.size() != 9)
            throw WrongColumnCount("line " + std::to_string(line_no) + ": expected 9 columns, got " +
                                   std::to_string(tokens.size()));
        double v[9];
        for (size_t k = 0; k < 9; ++k) v[k] = detail::parse_number(tokens[k], line_no);

        const double freq_hz = v[0] * freq_unit_scale(opt.unit);
        TwoPortS rec;
        rec.freq = freq_hz;
        rec.z0 = opt.z0;
        rec.s11 = detail::decode_pair(opt.format, v[1], v[2]);
        rec.s21 = detail::decode_pair(opt.format, v[3], v[4]);
        rec.s12 = detail::decode_pair(opt.format, v[5], v[6]);
        rec.s22 = detail::decode_pair(opt.format, v[7], v[8]);

        if (!doc.records.empty() && !(freq_hz > doc.records.back().freq))
            throw NonMonotonicFrequency("line " + std::to_string(line_no) +
                                        ": frequency does not increase (" + std::to_string(freq_hz) +
                                        " Hz after " + std::to_string(doc.records.back().freq) + " Hz)");
        doc.records.push_back(rec);
    }

    if (doc.records.empty())
        throw EmptyDocument("touchstone input contains no data rows");
    doc.freq_unit = opt.unit;
    doc.format = opt.format;
    doc.z0 = opt.z0;
    return doc;
}

// Exact record within 1 Hz; linear interpolation in magnitude and unwrapped
// phase between bracketing records otherwise.
inline TwoPortS sample_at(const TouchstoneDocument& doc, double freq) {
    if (doc.records.empty())
        throw EmptyDocument("sample_at: document has no records");
    if (freq < doc.min_freq() - tol::freq_match_hz || freq > doc.max_freq() + tol::freq_match_hz)
        throw OutOfBand("sample_at: " + std::to_string(freq) + " Hz outside [" +
                        std::to_string(doc.min_freq()) + ", " + std::to_string(doc.max_freq()) + "] Hz");

    for (const auto& rec : doc.records)
        if (std::abs(rec.freq - freq) <= tol::freq_match_hz) return rec;

    size_t hi = 1;
    while (doc.records[hi].freq < freq) ++hi;
    const TwoPortS& a = doc.records[hi - 1];
    const TwoPortS& b = doc.records[hi];
    const double t = (freq - a.freq) / (b.freq - a.freq);

    auto lerp_param = [&](const Complex& ca, const Complex& cb) {
        const double mag = std::abs(ca) + t * (std::abs(cb) - std::abs(ca));
        double pa = std::arg(ca);
        double dp = std::arg(cb) - pa;
        while (dp > pi) dp -= 2.0 * pi;
        while (dp <= -pi) dp += 2.0 * pi;
        return std::polar(mag, pa + t * dp);
    };

    TwoPortS out;
    out.freq = freq;
    out.z0 = a.z0;
    out.s11 = lerp_param(a.s11, b.s11);
    out.s21 = lerp_param(a.s21, b.s21);
    out.s12 = lerp_param(a.s12, b.s12);
    out.s22 = lerp_param(a.s22, b.s22);
    return out;
}

inline std::string write_touchstone(const TouchstoneDocument& doc, SFormat format) {
    if (doc.records.empty())
        throw EmptyDocument("write_touchstone: document has no records");

    char buf[512];
    std::string out;
    if (doc.bias.vce_v || doc.bias.ic_ma) {
        out += "! bias:";
        if (doc.bias.vce_v) {
            std::snprintf(buf, sizeof buf, " Vce = %.10g V", *doc.bias.vce_v);
            out += buf;
        }
        if (doc.bias.ic_ma) {
            std::snprintf(buf, sizeof buf, "%s Ic = %.10g mA", doc.bias.vce_v ? "," : "", *doc.bias.ic_ma);
            out += buf;
        }
        out += "\n";
    }
    const char* fmt_name = format == SFormat::MA ? "MA" : format == SFormat::DB ? "DB" : "RI";
    std::snprintf(buf, sizeof buf, "# %s S %s R %.10g\n", freq_unit_name(doc.freq_unit), fmt_name, doc.z0);
    out += buf;

    const double scale = freq_unit_scale(doc.freq_unit);
    for (const auto& rec : doc.records) {
        const Complex params[4] = {rec.s11, rec.s21, rec.s12, rec.s22};
        std::snprintf(buf, sizeof buf, "%.12g", rec.freq / scale);
        out += buf;
        for (const auto& p : params) {
            const auto [v1, v2] = detail::encode_pair(format, p);
            std::snprintf(buf, sizeof buf, "  %.12g %.12g", v1, v2);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

} // namespace ampkit::touchstone
