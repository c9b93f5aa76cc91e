#pragma once

// Charged quartic oscillator H = p^2/2m + m omega^2 x^2/2 + q E x + lambda x^4
// in natural units (hbar = 1).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl/ladder.hpp"
#include "qsl/matrix.hpp"

namespace qsl {

/// Physical parameters. Immutable once constructed; the constructor rejects
/// non-positive mass or frequency and negative anharmonicity.
class OscillatorConfig {
public:
    OscillatorConfig(double mass, double omega, double charge, double electric_field, double lambda)
        : mass_(mass), omega_(omega), charge_(charge), field_(electric_field), lambda_(lambda)
    {
        if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("OscillatorConfig: m must be positive");
        if (!(omega > 0.0) || !std::isfinite(omega))
            throw std::invalid_argument("OscillatorConfig: omega must be positive");
        if (!(lambda >= 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("OscillatorConfig: lambda must be non-negative");
        if (!std::isfinite(charge) || !std::isfinite(electric_field))
            throw std::invalid_argument("OscillatorConfig: q and E_field must be finite");
    }

    /// Builds a configuration from the derived frequency scales, with q = 1,
    /// E_field = 2 m omega_e and lambda = 2 m^3 omega_lambda^2.
    static OscillatorConfig from_frequencies(double mass, double omega, double omega_e, double omega_lambda)
    {
        if (omega_lambda < 0.0) throw std::invalid_argument("OscillatorConfig: omega_lambda must be non-negative");
        return {mass, omega, 1.0, 2.0 * mass * omega_e, 2.0 * mass * mass * mass * omega_lambda * omega_lambda};
    }

    double mass() const noexcept { return mass_; }
    double omega() const noexcept { return omega_; }
    double charge() const noexcept { return charge_; }
    double electric_field() const noexcept { return field_; }
    double lambda() const noexcept { return lambda_; }

    /// q E, the linear coupling.
    double field_coupling() const noexcept { return charge_ * field_; }
    /// Signed field frequency q E / (2 m).
    double omega_e() const noexcept { return field_coupling() / (2.0 * mass_); }
    /// sqrt(lambda / (2 m^3)).
    double omega_lambda() const noexcept { return std::sqrt(omega_lambda_sq()); }
    double omega_lambda_sq() const noexcept { return lambda_ / (2.0 * mass_ * mass_ * mass_); }

    /// Level-independent Stark shift -2 m omega_e^2 / omega^2.
    double stark_shift() const noexcept
    {
        const double we = omega_e();
        return -2.0 * mass_ * we * we / (omega_ * omega_);
    }

    OscillatorConfig with_mass(double m) const { return {m, omega_, charge_, field_, lambda_}; }
    OscillatorConfig with_omega(double w) const { return {mass_, w, charge_, field_, lambda_}; }

    friend bool operator==(const OscillatorConfig&, const OscillatorConfig&) = default;

private:
    double mass_;
    double omega_;
    double charge_;
    double field_;
    double lambda_;
};

/// Perturbative level omega (n + 1/2) + 3 lambda (2n^2 + 2n + 1)/(4 m^2 omega^2) - 2 m omega_e^2/omega^2.
inline double energy_level(const OscillatorConfig& c, std::size_t level)
{
    const double n = static_cast<double>(level);
    const double w = c.omega();
    const double m = c.mass();
    return w * (n + 0.5) + 3.0 * c.lambda() / (4.0 * m * m * w * w) * (2.0 * n * n + 2.0 * n + 1.0) + c.stark_shift();
}

/// Right-hand side of the non-negative-energy condition on omega_e:
/// sqrt(lambda (1/2 + N^2) + m^2 N omega^3) / (2 m^{3/2}).
inline double field_constraint_limit(const OscillatorConfig& c, std::size_t states)
{
    const double n = static_cast<double>(states);
    const double m = c.mass();
    const double w = c.omega();
    return std::sqrt(c.lambda() * (0.5 + n * n) + m * m * n * w * w * w) / (2.0 * std::pow(m, 1.5));
}

/// True when |omega_e| lies strictly below field_constraint_limit.
inline bool check_field_constraint(const OscillatorConfig& c, std::size_t states)
{
    if (states < 1) throw std::invalid_argument("check_field_constraint: N must be >= 1");
    return std::abs(c.omega_e()) < field_constraint_limit(c, states);
}

/// H in the unperturbed eigenbasis: diag omega(n + 1/2) + q E X_1 + lambda X_4, symmetrized.
inline Matrix build_hamiltonian_matrix(const OscillatorConfig& c, std::size_t basis)
{
    if (basis < 2) throw std::invalid_argument("build_hamiltonian_matrix: basis size must be >= 2");
    std::vector<double> diag(basis);
    for (std::size_t n = 0; n < basis; ++n) diag[n] = c.omega() * (static_cast<double>(n) + 0.5);
    Matrix h = Matrix::diagonal(diag);
    if (c.field_coupling() != 0.0) h.add_scaled(x_power_matrix(1, basis, c.mass(), c.omega()).entries, c.field_coupling());
    if (c.lambda() != 0.0 && basis >= 5) {
        h.add_scaled(x_power_matrix(4, basis, c.mass(), c.omega()).entries, c.lambda());
    } else if (c.lambda() != 0.0) {
        // x_power_matrix needs basis >= p + 1; truncate a larger exact block instead.
        h.add_scaled(x_power_matrix(4, 5, c.mass(), c.omega()).entries.block(basis, basis), c.lambda());
    }
    return symmetrized(h);
}

enum class SpectrumSource { closed_form, numeric_diagonalization };

inline const char* to_string(SpectrumSource s) noexcept
{
    return s == SpectrumSource::closed_form ? "closed_form" : "numeric_diagonalization";
}

struct PerturbativeSpectrum {
    std::vector<double> levels;
    SpectrumSource source = SpectrumSource::closed_form;
    std::size_t basis_size = 0;  ///< 0 for closed-form levels

    std::size_t size() const noexcept { return levels.size(); }
    double operator[](std::size_t n) const noexcept { return levels[n]; }
};

inline PerturbativeSpectrum closed_form_spectrum(const OscillatorConfig& c, std::size_t count)
{
    PerturbativeSpectrum s;
    s.levels.reserve(count);
    for (std::size_t n = 0; n < count; ++n) s.levels.push_back(energy_level(c, n));
    return s;
}

}  // namespace qsl
