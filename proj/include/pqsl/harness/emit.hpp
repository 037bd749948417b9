// emit.hpp — CSV and JSON serialization of sweep rows.

#pragma once

#include <array>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqsl/errors.hpp"
#include "pqsl/harness/config.hpp"
#include "pqsl/harness/sweep.hpp"
#include "pqsl/version.hpp"

namespace pqsl::harness {

inline const char* variable_column(SweepVariable v) noexcept {
    switch (v) {
        case SweepVariable::xi: return "xi_rad";
        case SweepVariable::alpha: return "alpha_rad";
        case SweepVariable::tau: return "tau_ps";
    }
    return "xi_rad";
}

inline SweepVariable row_variable(const RunConfig& cfg) {
    return cfg.sweep ? cfg.sweep->variable : SweepVariable::xi;
}

inline constexpr std::array<const char*, 9> kValueColumns = {
    "tau1_ps", "tau2_ps", "tau_inf_ps", "tau_qsl_ps", "n_blp", "n_rhp", "rhp_saturated", "kappa_tau_abs",
    "bures_angle_rad"};

inline std::string csv_header(SweepVariable v) {
    std::string h = variable_column(v);
    for (const char* c : kValueColumns) {
        h += ',';
        h += c;
    }
    return h;
}

inline std::string to_csv(const std::vector<SweepRow>& rows, SweepVariable v) {
    if (rows.empty()) throw Error("emit: no rows to write");
    std::string out = csv_header(v) + '\n';
    for (const auto& r : rows) {
        out += format_double(r.value);
        for (double x : {r.tau1, r.tau2, r.tau_inf, r.tau_qsl, r.n_blp, r.n_rhp}) out += ',' + format_double(x);
        out += r.rhp_saturated ? ",1" : ",0";
        out += ',' + format_double(r.kappa_tau_abs);
        out += ',' + format_double(r.bures_angle);
        out += '\n';
    }
    return out;
}

/// Columns as arrays plus a metadata object with the resolved config.
inline nlohmann::json to_json(const std::vector<SweepRow>& rows, const RunConfig& cfg) {
    if (rows.empty()) throw Error("emit: no rows to write");
    using nlohmann::json;
    json cols = json::object();
    auto column = [&](const char* name, auto get) {
        json a = json::array();
        for (const auto& r : rows) a.push_back(get(r));
        cols[name] = std::move(a);
    };
    column(variable_column(row_variable(cfg)), [](const SweepRow& r) { return r.value; });
    column("tau1_ps", [](const SweepRow& r) { return r.tau1; });
    column("tau2_ps", [](const SweepRow& r) { return r.tau2; });
    column("tau_inf_ps", [](const SweepRow& r) { return r.tau_inf; });
    column("tau_qsl_ps", [](const SweepRow& r) { return r.tau_qsl; });
    column("n_blp", [](const SweepRow& r) { return r.n_blp; });
    column("n_rhp", [](const SweepRow& r) { return r.n_rhp; });
    column("rhp_saturated", [](const SweepRow& r) { return r.rhp_saturated; });
    column("kappa_tau_abs", [](const SweepRow& r) { return r.kappa_tau_abs; });
    column("bures_angle_rad", [](const SweepRow& r) { return r.bures_angle; });
    column("degenerate", [](const SweepRow& r) { return r.degenerate; });

    json config = json::object();
    for (const auto& [k, v] : echo(cfg)) config[k] = v;
    return json{{"metadata", {{"tool", "photon-qsl"}, {"version", kVersion}, {"config", config}}},
                {"columns", cols}};
}

/// Inverse of to_json for the row data.
inline std::vector<SweepRow> rows_from_json(const nlohmann::json& j) {
    const auto& cols = j.at("columns");
    std::string var = "xi_rad";
    for (const char* name : {"xi_rad", "alpha_rad", "tau_ps"})
        if (cols.contains(name)) var = name;
    const std::size_t n = cols.at(var).size();
    std::vector<SweepRow> rows(n);
    for (std::size_t k = 0; k < n; ++k) {
        SweepRow& r = rows[k];
        r.value = cols.at(var)[k].get<double>();
        r.tau1 = cols.at("tau1_ps")[k].get<double>();
        r.tau2 = cols.at("tau2_ps")[k].get<double>();
        r.tau_inf = cols.at("tau_inf_ps")[k].get<double>();
        r.tau_qsl = cols.at("tau_qsl_ps")[k].get<double>();
        r.n_blp = cols.at("n_blp")[k].get<double>();
        r.n_rhp = cols.at("n_rhp")[k].get<double>();
        r.rhp_saturated = cols.at("rhp_saturated")[k].get<bool>();
        r.kappa_tau_abs = cols.at("kappa_tau_abs")[k].get<double>();
        r.bures_angle = cols.at("bures_angle_rad")[k].get<double>();
        r.degenerate = cols.at("degenerate")[k].get<bool>();
    }
    return rows;
}

inline std::string render(const std::vector<SweepRow>& rows, const RunConfig& cfg) {
    if (cfg.output.format == OutputFormat::json) return to_json(rows, cfg).dump(2) + '\n';
    return to_csv(rows, row_variable(cfg));
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

/// Writes the rendered rows to cfg.output.path. A CSV is accompanied by
/// `<path>.cfg` holding the resolved configuration, which `--config` accepts
/// back; JSON embeds it in its metadata.
inline void emit(const std::vector<SweepRow>& rows, const RunConfig& cfg) {
    if (cfg.output.path.empty()) throw IoError("emit: output path is empty");
    write_file(cfg.output.path, render(rows, cfg));
    if (cfg.output.format == OutputFormat::csv) {
        RunConfig echoed = cfg;
        write_file(cfg.output.path + ".cfg", "# photon-qsl " + std::string(kVersion) + " resolved configuration\n" +
                                                 to_text(echo(echoed)));
    }
}

}  // namespace pqsl::harness
