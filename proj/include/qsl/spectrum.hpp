#pragma once

// Numeric spectrum of the truncated Hamiltonian and its comparison with the
// perturbative level formula.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qsl/errors.hpp"
#include "qsl/jacobi.hpp"
#include "qsl/oscillator.hpp"

namespace qsl {

struct SpectrumOptions {
    JacobiOptions jacobi{};
    double doubling_tolerance = 1e-8;  ///< max abs change allowed when the basis doubles
};

inline std::size_t minimum_basis(std::size_t n_levels) noexcept { return 4 * n_levels + 20; }

/// Lowest `n_levels` eigenvalues of the truncated Hamiltonian, verified by
/// recomputing at twice the basis size.
inline PerturbativeSpectrum numeric_spectrum(const OscillatorConfig& c, std::size_t n_levels, std::size_t basis,
                                             const SpectrumOptions& opt = {})
{
    if (n_levels < 1) throw std::invalid_argument("numeric_spectrum: n_levels must be >= 1");
    if (basis < minimum_basis(n_levels))
        throw std::invalid_argument("numeric_spectrum: basis size must be at least 4 * n_levels + 20 (" +
                                    std::to_string(minimum_basis(n_levels)) + ")");

    const auto solve = [&](std::size_t size) {
        EigenResult r = symmetric_eigenvalues(build_hamiltonian_matrix(c, size), opt.jacobi);
        if (!r.converged)
            throw ConvergenceError("numeric_spectrum: Jacobi did not converge at basis " + std::to_string(size) +
                                   " (off-diagonal norm " + std::to_string(r.offdiag_norm) + ")");
        return r;
    };

    const EigenResult base = solve(basis);
    const EigenResult doubled = solve(2 * basis);
    double max_change = 0.0;
    for (std::size_t n = 0; n < n_levels; ++n)
        max_change = std::max(max_change, std::abs(base.eigenvalues[n] - doubled.eigenvalues[n]));
    if (!(max_change <= opt.doubling_tolerance))
        throw TruncationError("numeric_spectrum: levels moved by " + std::to_string(max_change) +
                              " when doubling basis " + std::to_string(basis));

    PerturbativeSpectrum s;
    s.levels.assign(base.eigenvalues.begin(), base.eigenvalues.begin() + static_cast<std::ptrdiff_t>(n_levels));
    s.source = SpectrumSource::numeric_diagonalization;
    s.basis_size = basis;
    return s;
}

struct LevelComparison {
    std::size_t n = 0;
    double closed = 0.0;
    double numeric = 0.0;
    double abs_err = 0.0;
};

inline std::vector<LevelComparison> compare_spectra(const OscillatorConfig& c, std::size_t n_levels,
                                                    std::size_t basis = 0, const SpectrumOptions& opt = {})
{
    if (basis == 0) basis = minimum_basis(n_levels);
    const PerturbativeSpectrum numeric = numeric_spectrum(c, n_levels, basis, opt);
    std::vector<LevelComparison> rows;
    rows.reserve(n_levels);
    for (std::size_t n = 0; n < n_levels; ++n) {
        const double closed = energy_level(c, n);
        rows.push_back({n, closed, numeric[n], std::abs(closed - numeric[n])});
    }
    return rows;
}

}  // namespace qsl
