// sweep.hpp — single-point evaluation and the parallel grid sweep.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "pqsl/dephasing.hpp"
#include "pqsl/errors.hpp"
#include "pqsl/harness/config.hpp"
#include "pqsl/nonmarkov.hpp"
#include "pqsl/qsl.hpp"
#include "pqsl/roots.hpp"

namespace pqsl::harness {

struct SweepRow {
    double value{0.0};  // the swept variable (xi for single points)
    double tau1{0.0};
    double tau2{0.0};
    double tau_inf{0.0};
    double tau_qsl{0.0};
    double n_blp{0.0};
    double n_rhp{0.0};
    bool rhp_saturated{false};
    double kappa_tau_abs{0.0};
    double bures_angle{0.0};
    bool degenerate{false};
};

namespace detail {

/// Runs f, re-raising library errors with `quantity` in the message while
/// keeping their type.
template <class F>
auto with_context(const std::string& quantity, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ToleranceError& e) {
        throw e.with_context(quantity);
    } catch (const CuspError& e) {
        throw CuspError(quantity + ": " + e.what(), e.time());
    } catch (const NumericalDomainError& e) {
        throw NumericalDomainError(quantity + ": " + e.what());
    } catch (const ParameterError& e) {
        throw ParameterError(quantity + ": " + e.what());
    }
}

inline SweepRow evaluate(const SpectralParams& p, double alpha, double tau, const Tolerances& tol) {
    SweepRow row;
    row.value = p.xi;
    const QslOptions qopt{tol.quadrature_rel, QslOptions{}.nodes_per_carrier_period};
    ScanOptions sopt;
    sopt.root_rel = tol.root_abs;

    const QslBounds b = with_context("qsl_time", [&] { return qsl_time(p, PureStateAngle{alpha}, tau, qopt); });
    row.tau1 = b.tau1;
    row.tau2 = b.tau2;
    row.tau_inf = b.tau_inf;
    row.tau_qsl = b.tau_qsl;
    row.bures_angle = b.bures_angle;
    row.degenerate = b.degenerate;
    row.n_blp = with_context("blp", [&] { return blp(p, tau, sopt); });
    const RhpResult r = with_context("rhp", [&] { return rhp(p, tau, tol.epsilon_floor, sopt); });
    row.n_rhp = r.value;
    row.rhp_saturated = r.saturated;
    row.kappa_tau_abs = with_context("kappa", [&] { return abs_kappa(p, tau); });
    return row;
}

}  // namespace detail

/// Evaluates every quantity at the configured point. The config must not
/// carry a sweep section.
inline SweepRow run_point(const RunConfig& cfg) {
    if (cfg.sweep) throw ConfigError("run_point: configuration has a sweep section");
    return detail::evaluate(cfg.spectral, cfg.alpha, cfg.tau, cfg.tolerances);
}

/// Configuration for one grid point of the sweep.
inline RunConfig grid_config(const RunConfig& cfg, std::size_t k) {
    RunConfig c = cfg;
    const Sweep& s = *cfg.sweep;
    const double v = roots::grid_point(s.start, s.stop, s.points, k);
    switch (s.variable) {
        case SweepVariable::xi: c.spectral.xi = v; break;
        case SweepVariable::alpha: c.alpha = v; break;
        case SweepVariable::tau: c.tau = v; break;
    }
    c.sweep.reset();
    return c;
}

inline double grid_value(const RunConfig& cfg, std::size_t k) {
    const Sweep& s = *cfg.sweep;
    return roots::grid_point(s.start, s.stop, s.points, k);
}

/// Raised when a grid point fails; carries the failing grid value.
class SweepError : public Error {
public:
    SweepError(const std::string& what, double grid_value, std::exception_ptr cause)
        : Error(what), grid_value_(grid_value), cause_(std::move(cause)) {}
    double grid_value() const noexcept { return grid_value_; }
    /// Rethrows the original error.
    [[noreturn]] void rethrow_cause() const { std::rethrow_exception(cause_); }

private:
    double grid_value_;
    std::exception_ptr cause_;
};

/// Evaluates the inclusive linear grid; rows come back in grid order whatever
/// the thread count. threads == 0 uses the hardware concurrency.
inline std::vector<SweepRow> run_sweep(const RunConfig& cfg, unsigned threads = 1) {
    if (!cfg.sweep) throw ConfigError("run_sweep: configuration has no sweep section");
    const std::size_t n = cfg.sweep->points;
    std::vector<SweepRow> rows(n);
    std::vector<std::exception_ptr> errors(n);

    auto work = [&](std::size_t k) {
        try {
            const RunConfig c = grid_config(cfg, k);
            rows[k] = run_point(c);
            rows[k].value = grid_value(cfg, k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t k = 0; k < n; ++k) work(k);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < n; k = next++) work(k);
            });
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (!errors[k]) continue;
        std::string msg = "sweep aborted at " + std::string(to_string(cfg.sweep->variable)) + " = " +
                          format_double(grid_value(cfg, k));
        try {
            std::rethrow_exception(errors[k]);
        } catch (const std::exception& e) {
            msg += ": " + std::string(e.what());
        } catch (...) {
        }
        throw SweepError(msg, grid_value(cfg, k), errors[k]);
    }
    return rows;
}

}  // namespace pqsl::harness
