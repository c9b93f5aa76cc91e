#pragma once

// Orthogonality times, Margolus-Levitin / Lloyd bounds and the complexity-rate
// bound for the charged quartic oscillator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/oscillator.hpp"

namespace qsl {

using complex = std::complex<double>;

enum class CoefficientKind { uniform, random, custom };

inline const char* to_string(CoefficientKind k) noexcept
{
    switch (k) {
    case CoefficientKind::uniform: return "uniform";
    case CoefficientKind::random: return "random";
    default: return "custom";
    }
}

/// Normalized amplitudes c_0..c_{N-1} over energy eigenstates, N >= 2.
class StateCoefficients {
public:
    static constexpr double normalization_tolerance = 1e-12;

    StateCoefficients(std::vector<complex> amplitudes, CoefficientKind kind, std::optional<std::uint64_t> seed = {})
        : amplitudes_(std::move(amplitudes)), kind_(kind), seed_(seed)
    {
        if (amplitudes_.size() < 2) throw std::invalid_argument("StateCoefficients: need at least 2 amplitudes");
        double norm = 0.0;
        for (const auto& c : amplitudes_) norm += std::norm(c);
        if (std::abs(norm - 1.0) > normalization_tolerance)
            throw std::invalid_argument("StateCoefficients: amplitudes are not normalized");
    }

    static StateCoefficients uniform(std::size_t n)
    {
        if (n < 2) throw std::invalid_argument("StateCoefficients: need at least 2 amplitudes");
        return {std::vector<complex>(n, complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0)), CoefficientKind::uniform};
    }

    /// Real amplitudes sqrt(w_n / sum w). Weights must be non-negative with a positive sum.
    static StateCoefficients from_weights(const std::vector<double>& weights,
                                          CoefficientKind kind = CoefficientKind::custom,
                                          std::optional<std::uint64_t> seed = {})
    {
        double total = 0.0;
        for (double w : weights) {
            if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("StateCoefficients: weights must be non-negative");
            total += w;
        }
        if (!(total > 0.0)) throw std::invalid_argument("StateCoefficients: weights sum to zero");
        std::vector<complex> amps;
        amps.reserve(weights.size());
        for (double w : weights) amps.emplace_back(std::sqrt(w / total), 0.0);
        return {std::move(amps), kind, seed};
    }

    std::size_t size() const noexcept { return amplitudes_.size(); }
    const std::vector<complex>& amplitudes() const noexcept { return amplitudes_; }
    CoefficientKind kind() const noexcept { return kind_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }

    /// |c_n|^2
    std::vector<double> weights() const
    {
        std::vector<double> w;
        w.reserve(amplitudes_.size());
        for (const auto& c : amplitudes_) w.push_back(std::norm(c));
        return w;
    }

private:
    std::vector<complex> amplitudes_;
    CoefficientKind kind_;
    std::optional<std::uint64_t> seed_;
};

/// `count` draws of |c_n|^2 from a flat Dirichlet distribution (normalized
/// standard exponentials), phases zero. One mt19937_64 stream seeded with
/// `seed` feeds all draws in order, and the uniform-to-exponential map is
/// spelled out so the sequence does not depend on the standard library.
inline std::vector<StateCoefficients> random_coefficients(std::size_t n, std::uint64_t seed, std::size_t count)
{
    if (n < 2) throw std::invalid_argument("random_coefficients: N must be >= 2");
    if (count < 1) throw std::invalid_argument("random_coefficients: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<StateCoefficients> out;
    out.reserve(count);
    std::vector<double> w(n);
    for (std::size_t draw = 0; draw < count; ++draw) {
        for (auto& v : w) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
            v = -std::log1p(-u);
        }
        out.push_back(StateCoefficients::from_weights(w, CoefficientKind::random, seed));
    }
    return out;
}

namespace detail {

inline void require_levels(const StateCoefficients& c, const PerturbativeSpectrum& s, const char* where)
{
    if (s.size() < c.size())
        throw std::invalid_argument(std::string(where) + ": spectrum has fewer levels than coefficients");
}

}  // namespace detail

/// sum |c_n|^2 E_n
inline double average_energy_exact(const StateCoefficients& c, const PerturbativeSpectrum& s)
{
    detail::require_levels(c, s, "average_energy_exact");
    double e = 0.0;
    const auto& amps = c.amplitudes();
    for (std::size_t n = 0; n < amps.size(); ++n) e += std::norm(amps[n]) * s[n];
    return e;
}

/// Average energy measured from the ground level E_0 of the same spectrum.
inline double average_energy_ground_referenced(const StateCoefficients& c, const PerturbativeSpectrum& s)
{
    return average_energy_exact(c, s) - s[0];
}

/// Large-N average over the uniform state, as printed:
/// N omega/2 + lambda/(4 m^2 omega^2) + N^2 lambda/(2 m^2 omega^2) - 2 m omega_e^2/omega^2.
/// The exact finite sum carries an extra 3 lambda N/(4 m^2 omega^2).
inline double average_energy_largeN(const OscillatorConfig& c, std::size_t states)
{
    if (!check_field_constraint(c, states))
        throw std::domain_error("average_energy_largeN: field constraint violated (non-positive energy regime)");
    const double n = static_cast<double>(states);
    const double m = c.mass();
    const double w = c.omega();
    const double quartic = c.lambda() / (m * m * w * w);
    return n * w / 2.0 + quartic / 4.0 + n * n * quartic / 2.0 + c.stark_shift();
}

/// pi / (2 E); the Margolus-Levitin orthogonality time.
inline double margolus_levitin_time(double energy) noexcept { return std::numbers::pi / (2.0 * energy); }

/// S(tau) = sum |c_n|^2 exp(-i E_n tau)
inline complex survival_amplitude(const StateCoefficients& c, const PerturbativeSpectrum& s, double tau)
{
    detail::require_levels(c, s, "survival_amplitude");
    const auto& amps = c.amplitudes();
    double re = 0.0;
    double im = 0.0;
    for (std::size_t n = 0; n < amps.size(); ++n) {
        const double w = std::norm(amps[n]);
        const double phase = s[n] * tau;
        re += w * std::cos(phase);
        im -= w * std::sin(phase);
    }
    return {re, im};
}

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> magnitudes;
    std::optional<std::pair<double, double>> first_zero;  ///< (tau, |S(tau)|)
};

/// |S| on the uniform grid tau_i = i tau_max / grid, i = 0..grid.
inline SurvivalCurve survival_curve(const StateCoefficients& c, const PerturbativeSpectrum& s, double tau_max,
                                    std::size_t grid)
{
    if (!(tau_max > 0.0)) throw std::invalid_argument("survival_curve: tau_max must be positive");
    if (grid < 1) throw std::invalid_argument("survival_curve: grid must be >= 1");
    SurvivalCurve curve;
    curve.times.reserve(grid + 1);
    curve.magnitudes.reserve(grid + 1);
    for (std::size_t i = 0; i <= grid; ++i) {
        const double t = tau_max * static_cast<double>(i) / static_cast<double>(grid);
        curve.times.push_back(t);
        curve.magnitudes.push_back(std::abs(survival_amplitude(c, s, t)));
    }
    return curve;
}

struct OrthogonalityOptions {
    double tau_max = 0.0;  ///< 0 selects default_tau_max
    std::size_t grid_points = 10000;
    double epsilon = 1e-6;
    double relative_width = 1e-10;
};

struct OrthogonalityResult {
    std::optional<double> tau;           ///< refined first time with |S| <= epsilon
    double abs_s = 1.0;                  ///< |S| at tau when found
    double global_min_tau = 0.0;         ///< grid minimizer of |S| over (0, tau_max]
    double global_min_abs_s = 1.0;
    std::size_t minima_examined = 0;
    double tau_max = 0.0;
};

/// 4 pi over the smallest gap between consecutive levels among the first N.
inline double default_tau_max(const PerturbativeSpectrum& s, std::size_t states)
{
    if (states < 2 || s.size() < states) throw std::invalid_argument("default_tau_max: need at least 2 levels");
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n < states; ++n) gap = std::min(gap, std::abs(s[n] - s[n - 1]));
    if (!(gap > 0.0)) throw std::invalid_argument("default_tau_max: degenerate levels");
    return 4.0 * std::numbers::pi / gap;
}

namespace detail {

/// Golden-section minimization of f on [a, b] until b - a <= rel * (a + b) / 2.
template <typename F>
double golden_section_minimize(F&& f, double a, double b, double rel)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 500 && (b - a) > rel * 0.5 * std::abs(a + b); ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

/// First orthogonality time. Scans |S| on a uniform grid over (0, tau_max],
/// visits local minima in order of increasing tau, refines each by golden
/// section on |S|^2 and returns the first whose refined |S| <= epsilon.
/// Absence is a valid outcome; the grid's global minimum is always reported.
inline OrthogonalityResult find_orthogonality_time(const StateCoefficients& c, const PerturbativeSpectrum& s,
                                                   const OrthogonalityOptions& opt = {})
{
    if (opt.grid_points < 100) throw std::invalid_argument("find_orthogonality_time: grid_points must be >= 100");
    if (!(opt.epsilon > 0.0)) throw std::invalid_argument("find_orthogonality_time: epsilon must be positive");
    detail::require_levels(c, s, "find_orthogonality_time");

    OrthogonalityResult result;
    result.tau_max = opt.tau_max > 0.0 ? opt.tau_max : default_tau_max(s, c.size());
    const SurvivalCurve curve = survival_curve(c, s, result.tau_max, opt.grid_points);
    const auto& t = curve.times;
    const auto& f = curve.magnitudes;

    result.global_min_tau = t[1];
    result.global_min_abs_s = f[1];
    for (std::size_t i = 2; i < f.size(); ++i) {
        if (f[i] < result.global_min_abs_s) {
            result.global_min_abs_s = f[i];
            result.global_min_tau = t[i];
        }
    }

    const auto sq = [&](double tau) { return std::norm(survival_amplitude(c, s, tau)); };
    for (std::size_t i = 1; i < f.size(); ++i) {
        const bool right_ok = i + 1 == f.size() || f[i] <= f[i + 1];
        if (!(f[i] < f[i - 1] && right_ok)) continue;
        ++result.minima_examined;
        const double hi = i + 1 < f.size() ? t[i + 1] : t[i];
        const double tau = detail::golden_section_minimize(sq, t[i - 1], hi, opt.relative_width);
        const double mag = std::abs(survival_amplitude(c, s, tau));
        if (mag <= opt.epsilon) {
            result.tau = tau;
            result.abs_s = mag;
            break;
        }
    }
    return result;
}

/// Lower bound on the orthogonality time of the uniform N-state superposition:
/// pi / (N omega + m wl^2/omega^2 + 2 m N^2 wl^2/omega^2 - 4 m we^2/omega^2).
inline double tau_bound(const OscillatorConfig& c, std::size_t states)
{
    if (!check_field_constraint(c, states)) throw std::domain_error("tau_bound: field constraint violated");
    const double n = static_cast<double>(states);
    const double m = c.mass();
    const double w2 = c.omega() * c.omega();
    const double wl2 = c.omega_lambda_sq();
    const double we = c.omega_e();
    const double denom = n * c.omega() + m * wl2 / w2 + 2.0 * m * n * n * wl2 / w2 - 4.0 * m * we * we / w2;
    if (!(denom > 0.0)) throw std::domain_error("tau_bound: non-positive energy denominator");
    return std::numbers::pi / denom;
}

struct CriticalPoint {
    double omega_lambda = 0.0;  ///< 2 |omega_e| / sqrt(1 + 2 N^2)
    double lambda = 0.0;        ///< 2 m q^2 E^2 / (1 + 2 N^2)
};

inline CriticalPoint critical_point(const OscillatorConfig& c, std::size_t states)
{
    if (states < 1) throw std::invalid_argument("critical_point: N must be >= 1");
    const double n = static_cast<double>(states);
    const double factor = 1.0 + 2.0 * n * n;
    const double qe = c.field_coupling();
    return {2.0 * std::abs(c.omega_e()) / std::sqrt(factor), 2.0 * c.mass() * qe * qe / factor};
}

/// pi C' = N omega + (m wl^2 + 2 m N^2 wl^2 - 4 m we^2) / omega^2, without the field check.
inline double rate_bracket(const OscillatorConfig& c, std::size_t states) noexcept
{
    const double n = static_cast<double>(states);
    const double m = c.mass();
    const double w = c.omega();
    const double wl2 = c.omega_lambda_sq();
    const double we = c.omega_e();
    return n * w + (m * wl2 + 2.0 * m * n * n * wl2 - 4.0 * m * we * we) / (w * w);
}

struct BoundReport {
    std::size_t states = 0;
    double avg_energy = 0.0;             ///< large-N closed form
    double avg_energy_exact = 0.0;       ///< finite sum over the uniform state
    double avg_energy_gap = 0.0;         ///< exact - large-N
    double avg_energy_ground_ref = 0.0;  ///< exact - E_0
    double tau_ml = 0.0;                 ///< pi / (2 avg_energy)
    double tau_ml_ground = 0.0;          ///< pi / (2 avg_energy_ground_ref)
    double tau_bound = 0.0;
    std::optional<double> tau_numeric;
    double rate_bound = 0.0;  ///< 1 / tau_bound
    double rate_norm = 0.0;   ///< pi C' / (N omega)
    double rate_delta = 0.0;  ///< (pi C' - N omega) / m
    double omega_lambda_tilde = 0.0;
    double omega_e_tilde = 0.0;
    double omega_lambda_critical = 0.0;
    double lambda_critical = 0.0;
};

/// Upper bound on the complexity rate, C' <= 1/tau_bound, and its normalized forms.
inline BoundReport complexity_rate_bound(const OscillatorConfig& c, std::size_t states)
{
    if (states < 2) throw std::invalid_argument("complexity_rate_bound: N must be >= 2");
    BoundReport r;
    r.states = states;
    r.avg_energy = average_energy_largeN(c, states);
    const PerturbativeSpectrum spectrum = closed_form_spectrum(c, states);
    const auto uniform = StateCoefficients::uniform(states);
    r.avg_energy_exact = average_energy_exact(uniform, spectrum);
    r.avg_energy_ground_ref = r.avg_energy_exact - spectrum[0];
    r.avg_energy_gap = r.avg_energy_exact - r.avg_energy;
    r.tau_ml = margolus_levitin_time(r.avg_energy);
    r.tau_ml_ground = r.avg_energy_ground_ref > 0.0 ? margolus_levitin_time(r.avg_energy_ground_ref)
                                                    : std::numeric_limits<double>::infinity();

    const double w = c.omega();
    const double harmonic = static_cast<double>(states) * w;
    const double bracket = rate_bracket(c, states);
    r.tau_bound = tau_bound(c, states);
    r.rate_bound = bracket / std::numbers::pi;
    r.rate_norm = bracket / harmonic;
    r.rate_delta = (bracket - harmonic) / c.mass();
    r.omega_lambda_tilde = c.omega_lambda() / w;
    r.omega_e_tilde = c.omega_e() / w;
    const CriticalPoint cp = critical_point(c, states);
    r.omega_lambda_critical = cp.omega_lambda;
    r.lambda_critical = cp.lambda;
    return r;
}

/// Shifted rate (pi C' - N omega)/m at fixed (m, omega, omega_e, N) as a function of omega_lambda.
inline double rate_delta_at(double mass, double omega, double omega_e, double omega_lambda, std::size_t states)
{
    const auto c = OscillatorConfig::from_frequencies(mass, omega, omega_e, omega_lambda);
    return (rate_bracket(c, states) - static_cast<double>(states) * omega) / mass;
}

struct BisectionResult {
    double root = 0.0;
    int iterations = 0;
};

/// Root of the shifted rate in omega_lambda by bisection. The function is
/// increasing in omega_lambda >= 0 and negative at 0 whenever omega_e != 0.
inline BisectionResult bisect_critical_omega_lambda(double mass, double omega, double omega_e, std::size_t states,
                                                    double rel_tol = 1e-15)
{
    const auto f = [&](double wl) { return rate_delta_at(mass, omega, omega_e, wl, states); };
    double lo = 0.0;
    if (f(lo) >= 0.0) return {0.0, 0};
    double hi = 2.0 * std::abs(omega_e) + 1.0;
    int iterations = 0;
    while (f(hi) <= 0.0 && iterations < 200) {
        hi *= 2.0;
        ++iterations;
    }
    for (int k = 0; k < 300 && (hi - lo) > rel_tol * hi; ++k, ++iterations) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), iterations};
}

}  // namespace qsl
