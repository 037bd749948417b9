// config.hpp — run configuration: flat `key = value` files, `--set`
// overrides, resolution of symbolic values, and the resolved echo.
//
//   # comment
//   spectral.omega1_rad_per_ps = 2676
//   spectral.xi_rad            = pi/4
//   drive.tau_ps               = window-end
//
// Angles accept `pi` expressions of the form [k*]pi[/m]. `window-end`
// resolves to 2 pi / (dw |dn|) after every override has been applied.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pqsl/errors.hpp"
#include "pqsl/spectral.hpp"

namespace pqsl::harness {

enum class SweepVariable { xi, alpha, tau };
enum class OutputFormat { csv, json };

inline const char* to_string(SweepVariable v) noexcept {
    switch (v) {
        case SweepVariable::xi: return "xi";
        case SweepVariable::alpha: return "alpha";
        case SweepVariable::tau: return "tau";
    }
    return "?";
}

inline const char* to_string(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

struct Sweep {
    SweepVariable variable{SweepVariable::xi};
    double start{0.0};
    double stop{std::numbers::pi / 2};
    std::size_t points{201};
};

struct Tolerances {
    double quadrature_rel{1e-10};
    double root_abs{1e-12};       // bisection bracket width, in units of tau
    double epsilon_floor{1e-13};  // |kappa| clamp for the RHP logarithm
};

struct OutputSpec {
    OutputFormat format{OutputFormat::csv};
    std::string path;  // empty: standard output
};

struct RunConfig {
    SpectralParams spectral{};
    double alpha{std::numbers::pi / 4};
    double tau{0.0};  // ps, resolved
    bool tau_is_window_end{true};
    std::optional<Sweep> sweep;
    Tolerances tolerances{};
    OutputSpec output{};
};

/// Key/value pairs in insertion-independent (sorted) order.
using KeyValues = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::optional<double> parse_plain(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace detail

/// Parses a number or a `[k*]pi[/m]` expression.
inline double parse_number(const std::string& key, const std::string& raw) {
    const std::string s = detail::trim(raw);
    auto fail = [&]() -> double { throw ConfigError("config key '" + key + "': cannot parse '" + raw + "' as a number"); };
    if (auto v = detail::parse_plain(s)) return *v;
    const auto at = s.find("pi");
    if (at == std::string::npos) return fail();
    double factor = 1.0;
    std::string head = s.substr(0, at);
    if (!head.empty()) {
        if (head == "-") {
            factor = -1.0;
        } else {
            if (head.back() != '*') return fail();
            head.pop_back();
            const auto v = detail::parse_plain(detail::trim(head));
            if (!v) return fail();
            factor = *v;
        }
    }
    std::string tail = s.substr(at + 2);
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') return fail();
        const auto v = detail::parse_plain(detail::trim(std::string_view(tail).substr(1)));
        if (!v || *v == 0.0) return fail();
        divisor = *v;
    }
    return factor * std::numbers::pi / divisor;
}

inline std::string format_double(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

/// The reference configuration: peaks at 2676 and 2692 rad/ps, sigma 1.8
/// rad/ps, dn = 0.01, alpha = xi = pi/4, tau = window-end.
inline KeyValues default_key_values() {
    return {
        {"spectral.omega1_rad_per_ps", "2676"},
        {"spectral.omega2_rad_per_ps", "2692"},
        {"spectral.sigma_rad_per_ps", "1.8"},
        {"spectral.xi_rad", "pi/4"},
        {"spectral.delta_n", "0.01"},
        {"state.alpha_rad", "pi/4"},
        {"drive.tau_ps", "window-end"},
        {"tolerances.quadrature_rel", "1e-10"},
        {"tolerances.root_abs", "1e-12"},
        {"tolerances.epsilon_floor", "1e-13"},
        {"output.format", "csv"},
        {"output.path", ""},
    };
}

inline bool is_known_key(const std::string& k) {
    static const std::vector<std::string> extra = {"sweep.variable", "sweep.start", "sweep.stop", "sweep.points"};
    const auto d = default_key_values();
    return d.count(k) > 0 || std::find(extra.begin(), extra.end(), k) != extra.end();
}

/// Applies one `key = value` assignment. `where` names the source for errors.
inline void assign(KeyValues& kv, std::string_view line, const std::string& where) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value', got '" + std::string(line) + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (!is_known_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    kv[key] = value;
}

inline void merge_text(KeyValues& kv, std::istream& in, const std::string& source) {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (detail::trim(line).empty()) continue;
        assign(kv, line, source + ":" + std::to_string(n));
    }
}

inline void merge_file(KeyValues& kv, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    merge_text(kv, in, path);
}

inline SweepVariable parse_variable(const std::string& s) {
    if (s == "xi") return SweepVariable::xi;
    if (s == "alpha") return SweepVariable::alpha;
    if (s == "tau") return SweepVariable::tau;
    throw ConfigError("sweep.variable must be one of xi, alpha, tau (got '" + s + "')");
}

/// Turns raw key/values into a validated RunConfig.
inline RunConfig resolve(const KeyValues& kv) {
    auto get = [&](const std::string& k) -> std::string {
        const auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing config key '" + k + "'");
        return it->second;
    };
    auto num = [&](const std::string& k) { return parse_number(k, get(k)); };

    RunConfig c;
    c.spectral.omega1 = num("spectral.omega1_rad_per_ps");
    c.spectral.omega2 = num("spectral.omega2_rad_per_ps");
    c.spectral.sigma = num("spectral.sigma_rad_per_ps");
    c.spectral.xi = num("spectral.xi_rad");
    c.spectral.delta_n = num("spectral.delta_n");
    try {
        c.spectral.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    c.alpha = num("state.alpha_rad");
    if (!std::isfinite(c.alpha)) throw ConfigError("state.alpha_rad must be finite");

    auto time_value = [&](const std::string& k) {
        const std::string v = detail::trim(get(k));
        return v == "window-end" ? c.spectral.window_end() : parse_number(k, v);
    };
    c.tau_is_window_end = detail::trim(get("drive.tau_ps")) == "window-end";
    c.tau = time_value("drive.tau_ps");
    if (!(c.tau > 0.0) || !std::isfinite(c.tau)) throw ConfigError("drive.tau_ps must be > 0");

    c.tolerances.quadrature_rel = num("tolerances.quadrature_rel");
    c.tolerances.root_abs = num("tolerances.root_abs");
    c.tolerances.epsilon_floor = num("tolerances.epsilon_floor");
    if (!(c.tolerances.quadrature_rel > 0.0 && c.tolerances.quadrature_rel < 1.0))
        throw ConfigError("tolerances.quadrature_rel must lie in (0, 1)");
    if (!(c.tolerances.root_abs >= 0.0 && c.tolerances.root_abs < 1.0))
        throw ConfigError("tolerances.root_abs must lie in [0, 1)");
    if (!(c.tolerances.epsilon_floor > 0.0 && c.tolerances.epsilon_floor < 1.0))
        throw ConfigError("tolerances.epsilon_floor must lie in (0, 1)");

    const std::string fmt = detail::trim(get("output.format"));
    if (fmt == "csv")
        c.output.format = OutputFormat::csv;
    else if (fmt == "json")
        c.output.format = OutputFormat::json;
    else
        throw ConfigError("output.format must be csv or json (got '" + fmt + "')");
    c.output.path = detail::trim(get("output.path"));

    const bool any_sweep = kv.count("sweep.variable") || kv.count("sweep.start") || kv.count("sweep.stop") ||
                           kv.count("sweep.points");
    if (any_sweep) {
        Sweep s;
        s.variable = parse_variable(detail::trim(get("sweep.variable")));
        auto bound = [&](const std::string& k) {
            return s.variable == SweepVariable::tau ? time_value(k) : num(k);
        };
        s.start = bound("sweep.start");
        s.stop = bound("sweep.stop");
        const double pts = num("sweep.points");
        if (!(pts >= 2.0) || pts != std::floor(pts) || pts > 1e7)
            throw ConfigError("sweep.points must be an integer >= 2");
        s.points = static_cast<std::size_t>(pts);
        auto in_domain = [&](double v) {
            switch (s.variable) {
                case SweepVariable::xi: return v >= -1e-12 && v <= std::numbers::pi / 2 + 1e-12;
                case SweepVariable::alpha: return std::isfinite(v);
                case SweepVariable::tau: return v > 0.0 && std::isfinite(v);
            }
            return false;
        };
        if (!in_domain(s.start) || !in_domain(s.stop))
            throw ConfigError(std::string("sweep range outside the domain of ") + to_string(s.variable));
        c.sweep = s;
    }
    return c;
}

/// Resolved configuration as key/values with 17-digit numbers; feeding the
/// result back through resolve() reproduces the same RunConfig.
inline KeyValues echo(const RunConfig& c) {
    KeyValues kv{
        {"spectral.omega1_rad_per_ps", format_double(c.spectral.omega1)},
        {"spectral.omega2_rad_per_ps", format_double(c.spectral.omega2)},
        {"spectral.sigma_rad_per_ps", format_double(c.spectral.sigma)},
        {"spectral.xi_rad", format_double(c.spectral.xi)},
        {"spectral.delta_n", format_double(c.spectral.delta_n)},
        {"state.alpha_rad", format_double(c.alpha)},
        {"drive.tau_ps", format_double(c.tau)},
        {"tolerances.quadrature_rel", format_double(c.tolerances.quadrature_rel)},
        {"tolerances.root_abs", format_double(c.tolerances.root_abs)},
        {"tolerances.epsilon_floor", format_double(c.tolerances.epsilon_floor)},
        {"output.format", to_string(c.output.format)},
        {"output.path", c.output.path},
    };
    if (c.sweep) {
        kv["sweep.variable"] = to_string(c.sweep->variable);
        kv["sweep.start"] = format_double(c.sweep->start);
        kv["sweep.stop"] = format_double(c.sweep->stop);
        kv["sweep.points"] = std::to_string(c.sweep->points);
    }
    return kv;
}

inline std::string to_text(const KeyValues& kv) {
    std::ostringstream out;
    for (const auto& [k, v] : kv) out << k << " = " << v << '\n';
    return out.str();
}

/// Defaults, then an optional file, then `--set` overrides in order.
inline RunConfig load(const std::string& path, const std::vector<std::string>& overrides) {
    KeyValues kv = default_key_values();
    if (!path.empty()) merge_file(kv, path);
    for (const auto& o : overrides) assign(kv, o, "--set");
    return resolve(kv);
}

}  // namespace pqsl::harness
