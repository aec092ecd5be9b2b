#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "sisi/errors.hpp"
#include "sisi/format.hpp"
#include "sisi/ode.hpp"
#include "sisi/params.hpp"

namespace sisi {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_number(std::string_view text, std::size_t line, std::size_t column) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError(line, column, "expected a decimal or scientific number, got '" + std::string(text) + "'");
    return value;
}

}  // namespace detail

/// Parameters, initial condition and run settings for one CLI invocation.
/// Defaults reproduce the low-transmission Indonesia scenario.
struct Scenario {
    ModelParams params = calibration::params(calibration::kBetaLow, calibration::kUpsilon);
    State initial = calibration::kInitial;
    double t_end = 200000.0;
    double stride = 400.0;
    std::string label;

    SimConfig sim_config() const {
        SimConfig cfg;
        cfg.t_end = t_end;
        cfg.initial = initial;
        cfg.output_stride = stride;
        return cfg;
    }

    void validate() const {
        params.validate();
        sim_config().validate();
        if (label.find_first_of("#\n") != std::string::npos || detail::trim(label) != label)
            throw ValidationError("label", "must be a single line without '#' or surrounding whitespace");
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};


/// Parses the flat `key = value` format: one assignment per line, `#` starts
/// a comment, blank lines ignored. Missing keys keep their defaults; unknown
/// or repeated keys are rejected. The result is validated.
inline Scenario parse_scenario(std::string_view text) {
    Scenario sc;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view raw = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        const auto hash = raw.find('#');
        const std::string_view body = detail::trim(raw.substr(0, hash));
        if (body.empty()) continue;

        const auto eq = raw.find('=');
        if (eq == std::string_view::npos || (hash != std::string_view::npos && eq > hash))
            throw ParseError(line_no, static_cast<std::size_t>(body.data() - raw.data()) + 1, "expected 'key = value'");
        const std::string_view key = detail::trim(raw.substr(0, eq));
        const std::string_view value = detail::trim(raw.substr(eq + 1, hash == std::string_view::npos ? hash : hash - eq - 1));
        const std::size_t key_col = static_cast<std::size_t>(body.data() - raw.data()) + 1;
        const std::size_t value_col =
            value.empty() ? eq + 2 : static_cast<std::size_t>(value.data() - raw.data()) + 1;

        if (key.empty()) throw ParseError(line_no, key_col, "missing key before '='");
        if (value.empty()) throw ParseError(line_no, value_col, "missing value for '" + std::string(key) + "'");
        if (!seen.insert(std::string(key)).second)
            throw ParseError(line_no, key_col, "duplicate key '" + std::string(key) + "'");

        if (key == "label") {
            sc.label = std::string(value);
            continue;
        }
        const double number = detail::parse_number(value, line_no, value_col);
        if (const auto param = param_from_key(key)) {
            sc.params.ref(*param) = number;
        } else if (key == "s0") {
            sc.initial.S = number;
        } else if (key == "i1_0") {
            sc.initial.I1 = number;
        } else if (key == "s1_0") {
            sc.initial.S1 = number;
        } else if (key == "i2_0") {
            sc.initial.I2 = number;
        } else if (key == "t_end") {
            sc.t_end = number;
        } else if (key == "stride") {
            sc.stride = number;
        } else {
            throw ValidationError(std::string(key), "unknown key");
        }
    }
    sc.validate();
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

/// Writes every key at full precision, so parse_scenario(dump) == scenario.
inline void dump_scenario(std::ostream& os, const Scenario& sc) {
    if (!sc.label.empty()) os << "label = " << sc.label << '\n';
    for (ParamName p : kAllParams) os << key_of(p) << " = " << full_precision(sc.params.get(p)) << '\n';
    os << "s0 = " << full_precision(sc.initial.S) << '\n'
       << "i1_0 = " << full_precision(sc.initial.I1) << '\n'
       << "s1_0 = " << full_precision(sc.initial.S1) << '\n'
       << "i2_0 = " << full_precision(sc.initial.I2) << '\n'
       << "t_end = " << full_precision(sc.t_end) << '\n'
       << "stride = " << full_precision(sc.stride) << '\n';
}

}  // namespace sisi
