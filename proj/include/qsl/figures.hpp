#pragma once

// Data behind the four figures: orthogonality times for uniform and random
// coefficients, and the normalized and shifted complexity rates over the
// default sweep ranges.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "qsl/io.hpp"
#include "qsl/speed_limit.hpp"

namespace qsl::figures {

/// Evaluates f(0..count-1) on up to `jobs` threads. Results are stored by
/// index, so the output order never depends on scheduling.
template <typename F>
auto parallel_map(std::size_t count, unsigned jobs, F&& f)
{
    using R = decltype(f(std::size_t{}));
    std::vector<R> out(count);
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += jobs) out[i] = f(i);
        });
    workers.clear();  // joins
    return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n)
{
    if (n == 1) return {a};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = b;
    return v;
}

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// --- Figure 1 ---------------------------------------------------------------

struct Fig1Params {
    std::vector<std::size_t> states{20, 100};
    double mass = 1.0;
    double lambda = 3e-3;
    double omega_e = 0.3;
    double omega_min = 0.1;
    double omega_max = 5.0;
    std::size_t omega_points = 50;
    std::size_t draws = 4;
    std::uint64_t seed = 20240601;
};

inline OscillatorConfig fig1_config(const Fig1Params& p, double omega)
{
    return {p.mass, omega, 1.0, 2.0 * p.mass * p.omega_e, p.lambda};
}

/// pi/(2E) with E = sum |c_n|^2 E_n, or NaN when E <= 0.
inline double ml_time_or_nan(const StateCoefficients& c, const PerturbativeSpectrum& s)
{
    const double e = average_energy_exact(c, s);
    return e > 0.0 ? margolus_levitin_time(e) : nan;
}

/// Orthogonality time vs omega: large-N bound, uniform exact sum, and one column per random draw.
inline io::Table figure1(const Fig1Params& p, unsigned jobs = 1)
{
    io::Table t;
    t.header = {"N", "omega", "tau_bound", "tau_ml_uniform"};
    for (std::size_t d = 0; d < p.draws; ++d) t.header.push_back("tau_ml_random_" + std::to_string(d + 1));
    const auto omegas = linspace(p.omega_min, p.omega_max, p.omega_points);
    for (std::size_t n : p.states) {
        const auto draws = random_coefficients(n, p.seed, p.draws);
        const auto uniform = StateCoefficients::uniform(n);
        auto rows = parallel_map(omegas.size(), jobs, [&](std::size_t i) {
            const auto cfg = fig1_config(p, omegas[i]);
            const auto spectrum = closed_form_spectrum(cfg, n);
            std::vector<io::Cell> row{static_cast<std::int64_t>(n), omegas[i]};
            row.emplace_back(check_field_constraint(cfg, n) ? tau_bound(cfg, n) : nan);
            row.emplace_back(ml_time_or_nan(uniform, spectrum));
            for (const auto& c : draws) row.emplace_back(ml_time_or_nan(c, spectrum));
            return row;
        });
        for (auto& r : rows) t.add_row(std::move(r));
    }
    return t;
}

/// Largest relative deviation of the random-draw orthogonality time from the uniform one.
inline double fig1_max_deviation(const Fig1Params& p, std::size_t n, double omega)
{
    const auto cfg = fig1_config(p, omega);
    const auto spectrum = closed_form_spectrum(cfg, n);
    const double ref = ml_time_or_nan(StateCoefficients::uniform(n), spectrum);
    double worst = 0.0;
    for (const auto& c : random_coefficients(n, p.seed, p.draws))
        worst = std::max(worst, std::abs(ml_time_or_nan(c, spectrum) - ref) / ref);
    return worst;
}

// --- Figure 2 ---------------------------------------------------------------

struct Fig2Params {
    std::size_t states = 100;
    double omega_e = 0.65;
    std::vector<double> omega_lambdas{8e-3, 1e-2};  ///< the critical value is added as a third series
    std::vector<double> masses{0.5, 1.0, 2.0};
    double omega_min = 0.1;
    double omega_max = 5.0;
    std::size_t omega_points = 50;
};

inline std::vector<double> fig2_series(const Fig2Params& p)
{
    auto series = p.omega_lambdas;
    const double n = static_cast<double>(p.states);
    series.push_back(2.0 * std::abs(p.omega_e) / std::sqrt(1.0 + 2.0 * n * n));
    std::sort(series.begin(), series.end());
    return series;
}

/// rate_norm vs omega per (omega_lambda, m). Points violating the field constraint carry NaN rates.
inline io::Table figure2(const Fig2Params& p, unsigned jobs = 1)
{
    io::Table t;
    t.header = {"omega_lambda", "m", "omega", "field_constraint_ok", "rate_norm", "rate_delta"};
    const auto omegas = linspace(p.omega_min, p.omega_max, p.omega_points);
    for (double wl : fig2_series(p)) {
        for (double m : p.masses) {
            auto rows = parallel_map(omegas.size(), jobs, [&](std::size_t i) {
                const auto cfg = OscillatorConfig::from_frequencies(m, omegas[i], p.omega_e, wl);
                const bool ok = check_field_constraint(cfg, p.states);
                double norm = nan, delta = nan;
                if (ok) {
                    const BoundReport r = complexity_rate_bound(cfg, p.states);
                    norm = r.rate_norm;
                    delta = r.rate_delta;
                }
                return std::vector<io::Cell>{wl, m, omegas[i], std::int64_t{ok}, norm, delta};
            });
            for (auto& r : rows) t.add_row(std::move(r));
        }
    }
    return t;
}

// --- Figure 3 ---------------------------------------------------------------

struct Fig3Params {
    std::size_t states = 100;
    double mass = 1.0;
    double omega = 1.0;
    std::vector<double> omega_lambdas{5e-3, 8e-3, 1e-2};
    double omega_e_min = 0.0;
    double omega_e_max = 1.0;
    std::size_t omega_e_points = 101;
};

/// rate_norm vs omega_e for each fixed omega_lambda; each curve crosses 1 at
/// omega_e = omega_lambda sqrt(1 + 2 N^2) / 2.
inline io::Table figure3(const Fig3Params& p, unsigned jobs = 1)
{
    io::Table t;
    t.header = {"omega_lambda", "omega_e", "omega_e_critical", "field_constraint_ok", "rate_norm"};
    const auto wes = linspace(p.omega_e_min, p.omega_e_max, p.omega_e_points);
    const double n = static_cast<double>(p.states);
    for (double wl : p.omega_lambdas) {
        const double we_crit = wl * std::sqrt(1.0 + 2.0 * n * n) / 2.0;
        auto rows = parallel_map(wes.size(), jobs, [&](std::size_t i) {
            const auto cfg = OscillatorConfig::from_frequencies(p.mass, p.omega, wes[i], wl);
            const bool ok = check_field_constraint(cfg, p.states);
            const double norm = ok ? complexity_rate_bound(cfg, p.states).rate_norm : nan;
            return std::vector<io::Cell>{wl, wes[i], we_crit, std::int64_t{ok}, norm};
        });
        for (auto& r : rows) t.add_row(std::move(r));
    }
    return t;
}

// --- Figure 4 ---------------------------------------------------------------

struct Fig4Params {
    std::size_t states = 100;
    double mass = 1.0;
    double omega = 1.0;
    double omega_lambda_tilde_max = 0.02;
    double omega_e_tilde_max = 1.0;
    std::size_t points = 41;
    std::size_t zero_set_points = 21;
};

/// rate_delta over the (omega_lambda / omega, omega_e / omega) grid.
inline io::Table figure4(const Fig4Params& p, unsigned jobs = 1)
{
    io::Table t;
    t.header = {"omega_lambda_tilde", "omega_e_tilde", "field_constraint_ok", "rate_delta"};
    const auto wls = linspace(0.0, p.omega_lambda_tilde_max, p.points);
    const auto wes = linspace(0.0, p.omega_e_tilde_max, p.points);
    auto rows = parallel_map(wls.size() * wes.size(), jobs, [&](std::size_t k) {
        const double wl = wls[k / wes.size()];
        const double we = wes[k % wes.size()];
        const auto cfg = OscillatorConfig::from_frequencies(p.mass, p.omega, we * p.omega, wl * p.omega);
        const bool ok = check_field_constraint(cfg, p.states);
        const double delta = ok ? complexity_rate_bound(cfg, p.states).rate_delta : nan;
        return std::vector<io::Cell>{wl, we, std::int64_t{ok}, delta};
    });
    for (auto& r : rows) t.add_row(std::move(r));
    return t;
}

/// rate_delta along omega_lambda_tilde sqrt(1 + 2 N^2) = 2 omega_e_tilde.
inline io::Table figure4_zero_set(const Fig4Params& p)
{
    io::Table t;
    t.header = {"omega_lambda_tilde", "omega_e_tilde", "rate_delta"};
    const double n = static_cast<double>(p.states);
    for (double we : linspace(0.0, p.omega_e_tilde_max, p.zero_set_points)) {
        const double wl = 2.0 * we / std::sqrt(1.0 + 2.0 * n * n);
        const auto cfg = OscillatorConfig::from_frequencies(p.mass, p.omega, we * p.omega, wl * p.omega);
        t.add_row({wl, we, complexity_rate_bound(cfg, p.states).rate_delta});
    }
    return t;
}

}  // namespace qsl::figures
