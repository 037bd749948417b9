// cli.hpp — `photon-qsl` command line: point, sweep, critical, check.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical error, 3 I/O error.

#pragma once

#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqsl/errors.hpp"
#include "pqsl/harness/config.hpp"
#include "pqsl/harness/critical.hpp"
#include "pqsl/harness/emit.hpp"
#include "pqsl/harness/self_check.hpp"
#include "pqsl/harness/sweep.hpp"
#include "pqsl/version.hpp"

namespace pqsl::harness {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericalError = 2, kIoError = 3 };

struct CliOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string output;
    std::string format;
    unsigned threads{0};
};

inline RunConfig config_from(const CliOptions& o) {
    std::vector<std::string> sets = o.overrides;
    if (!o.output.empty()) sets.push_back("output.path = " + o.output);
    if (!o.format.empty()) sets.push_back("output.format = " + o.format);
    return load(o.config_path, sets);
}

inline void deliver(const std::vector<SweepRow>& rows, const RunConfig& cfg, std::ostream& out) {
    if (cfg.output.path.empty())
        out << render(rows, cfg);
    else
        emit(rows, cfg);
}

/// Maps a library exception to an exit code, printing the message.
inline int report_error(std::ostream& err) {
    try {
        throw;
    } catch (const SweepError& e) {
        err << "error: " << e.what() << '\n';
        try {
            e.rethrow_cause();
        } catch (const ConfigError&) {
            return kConfigError;
        } catch (const IoError&) {
            return kIoError;
        } catch (...) {
            return kNumericalError;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << '\n';
        return kNumericalError;
    }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum speed limit and non-Markovianity of a dephasing photon polarization qubit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CliOptions o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "key = value configuration file");
        sub->add_option("--set", o.overrides, "override a key, e.g. --set spectral.xi_rad=pi/8")->allow_extra_args(false);
        sub->add_option("--output", o.output, "output file (default: standard output)");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App* point = app.add_subcommand("point", "evaluate every quantity at the configured point");
    CLI::App* sweep = app.add_subcommand("sweep", "linear sweep over xi, alpha or tau (default: xi in [0, pi/2], 201 points)");
    CLI::App* critical = app.add_subcommand("critical", "critical peak-weight angles, closed form vs bisection");
    CLI::App* check = app.add_subcommand("check", "run the built-in oracle self-tests");
    for (CLI::App* s : {point, sweep, critical, check}) add_common(s);
    sweep->add_option("--threads", o.threads, "worker threads (0 = hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kConfigError;
    }

    try {
        RunConfig cfg = config_from(o);
        if (point->parsed()) {
            cfg.sweep.reset();
            deliver({run_point(cfg)}, cfg, out);
        } else if (sweep->parsed()) {
            if (!cfg.sweep) cfg.sweep = Sweep{};
            deliver(run_sweep(cfg, o.threads), cfg, out);
        } else if (critical->parsed()) {
            const std::string text = format_report(solve_critical(cfg));
            if (cfg.output.path.empty())
                out << text;
            else
                write_file(cfg.output.path, text);
        } else if (check->parsed()) {
            const auto results = run_self_checks(cfg);
            out << format_checks(results);
            for (const auto& r : results)
                if (!r.passed) return kNumericalError;
        }
    } catch (...) {
        return report_error(err);
    }
    return kOk;
}

}  // namespace pqsl::harness
