#pragma once

// Matrix elements of powers of the position operator in the harmonic
// oscillator eigenbasis, x = (a + a^dagger) / sqrt(2 m omega), together with
// the tabulated closed forms for diagonal elements and second-order sums.

#include <cmath>
#include <cstddef>
#include <string>

#include "qsl/errors.hpp"
#include "qsl/matrix.hpp"

namespace qsl {

namespace detail {

inline void require_positive_scales(double mass, double omega, const char* where)
{
    if (!(mass > 0.0) || !(omega > 0.0))
        throw std::invalid_argument(std::string(where) + ": mass and omega must be positive");
}

inline void require_positive_power(int p, const char* where)
{
    if (p < 1) throw std::invalid_argument(std::string(where) + ": power must be >= 1");
}

}  // namespace detail

/// Tridiagonal matrix of (a + a^dagger) on the lowest `basis` Fock states.
inline Matrix ladder_sum_matrix(std::size_t basis)
{
    Matrix out = Matrix::square(basis);
    for (std::size_t n = 1; n < basis; ++n) {
        const double v = std::sqrt(static_cast<double>(n));
        out(n - 1, n) = v;
        out(n, n - 1) = v;
    }
    return out;
}

/// (a + a^dagger)^p restricted to the lowest `basis` states.
///
/// The product is formed in a working basis of basis + p states and then
/// truncated. Each factor only couples neighbouring levels, so states above
/// the working basis can never reach the retained block in p steps and every
/// retained entry is exact. Multiplication by the tridiagonal factor is done
/// row-by-row, so entries outside the band stay exactly 0.0. The two
/// triangles round differently, so the lower one is copied from the upper.
inline Matrix ladder_sum_power(int p, std::size_t basis)
{
    detail::require_positive_power(p, "ladder_sum_power");
    if (basis == 0) throw std::invalid_argument("ladder_sum_power: empty basis");
    const std::size_t work = basis + static_cast<std::size_t>(p);

    std::vector<double> sq(work);
    for (std::size_t n = 0; n < work; ++n) sq[n] = std::sqrt(static_cast<double>(n));

    Matrix acc = ladder_sum_matrix(work);
    for (int step = 1; step < p; ++step) {
        Matrix next = Matrix::square(work);
        // (X * A)(i, j) = sqrt(i) A(i-1, j) + sqrt(i+1) A(i+1, j)
        for (std::size_t i = 0; i < work; ++i) {
            for (std::size_t j = 0; j < work; ++j) {
                double v = 0.0;
                if (i > 0) v += sq[i] * acc(i - 1, j);
                if (i + 1 < work) v += sq[i + 1] * acc(i + 1, j);
                next(i, j) = v;
            }
        }
        acc = std::move(next);
    }
    Matrix out = acc.block(basis, basis);
    for (std::size_t i = 0; i < basis; ++i)
        for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
    return out;
}

/// Closed-form <row|(a + a^dagger)^k|col> for k in {1, 2, 3}.
inline double ladder_element_closed(int k, std::size_t row, std::size_t col)
{
    const double n = static_cast<double>(col);
    const auto delta = [&](long offset) { return static_cast<long>(row) - static_cast<long>(col) == offset; };
    switch (k) {
    case 1:
        return (delta(-1) ? std::sqrt(n) : 0.0) + (delta(1) ? std::sqrt(n + 1) : 0.0);
    case 2:
        return (delta(0) ? 2 * n + 1 : 0.0) + (delta(-2) ? std::sqrt(n - 1) * std::sqrt(n) : 0.0) +
               (delta(2) ? std::sqrt(n + 1) * std::sqrt(n + 2) : 0.0);
    case 3:
        // The two n+1 terms of the tabulated form combine to 3 (n+1)^{3/2}.
        return (delta(-1) ? 3 * n * std::sqrt(n) : 0.0) + (delta(1) ? 3 * std::sqrt(n + 1) * n + 3 * std::sqrt(n + 1) : 0.0) +
               (delta(-3) ? std::sqrt(n - 2) * std::sqrt(n - 1) * std::sqrt(n) : 0.0) +
               (delta(3) ? std::sqrt(n + 1) * std::sqrt(n + 2) * std::sqrt(n + 3) : 0.0);
    default:
        throw UnsupportedPower("ladder_element_closed: no closed form for (a + a^dagger)^" + std::to_string(k));
    }
}

/// Truncated matrix of x^p. `scale` = (2 m omega)^{-p/2} is already folded into `entries`.
struct XPowerMatrix {
    int power = 0;
    std::size_t basis_size = 0;
    double scale = 1.0;
    Matrix entries;

    double operator()(std::size_t i, std::size_t j) const noexcept { return entries(i, j); }
    double diagonal(std::size_t n) const noexcept { return entries(n, n); }
};

inline XPowerMatrix x_power_matrix(int p, std::size_t basis, double mass, double omega)
{
    detail::require_positive_power(p, "x_power_matrix");
    detail::require_positive_scales(mass, omega, "x_power_matrix");
    if (basis < static_cast<std::size_t>(p) + 1)
        throw std::invalid_argument("x_power_matrix: basis size must be at least p + 1");
    const double scale = std::pow(2.0 * mass * omega, -0.5 * p);
    Matrix entries = ladder_sum_power(p, basis);
    entries *= scale;
    return {p, basis, scale, std::move(entries)};
}

/// Tabulated <n|x^p|n> for p in {2, 4, 6, 8, 10}.
inline double diagonal_closed_form(int p, std::size_t level, double mass, double omega)
{
    detail::require_positive_scales(mass, omega, "diagonal_closed_form");
    const double n = static_cast<double>(level);
    const double mw = mass * omega;
    switch (p) {
    case 2:
        return (2 * n + 1) / (2 * mw);
    case 4:
        return 3 * (2 * n * n + 2 * n + 1) / (4 * mw * mw);
    case 6:
        return 5 * (2 * n + 1) * (2 * n * n + 2 * n + 3) / (8 * std::pow(mw, 3));
    case 8:
        return 35 * (2 * std::pow(n, 4) + 4 * std::pow(n, 3) + 10 * n * n + 8 * n + 3) / (16 * std::pow(mw, 4));
    case 10:
        return 63 * (2 * n + 1) * (2 * std::pow(n, 4) + 4 * std::pow(n, 3) + 18 * n * n + 16 * n + 15) /
               (32 * std::pow(mw, 5));
    default:
        throw UnsupportedPower("diagonal_closed_form: no tabulated <n|x^" + std::to_string(p) + "|n>");
    }
}

/// Tabulated sum_{k != n} |<k|x^p|n>|^2 / (E_k - E_n) for p in {1, 3, 5, 7}.
inline double second_order_sum_closed(int p, std::size_t level, double mass, double omega)
{
    detail::require_positive_scales(mass, omega, "second_order_sum_closed");
    const double n = static_cast<double>(level);
    const double denom = std::pow(2.0 * mass * omega, p) * omega;
    switch (p) {
    case 1:
        return 1.0 / denom;
    case 3:
        return (30 * n * n + 30 * n + 11) / denom;
    case 5:
        return (630 * std::pow(n, 4) + 1260 * std::pow(n, 3) + 2030 * n * n + 1400 * n + 449) / denom;
    case 7:
        return 3 *
               (4004 * std::pow(n, 6) + 12012 * std::pow(n, 5) + 42350 * std::pow(n, 4) + 64680 * std::pow(n, 3) +
                81788 * n * n + 51450 * n + 14793) /
               denom;
    default:
        throw UnsupportedPower("second_order_sum_closed: no tabulated sum for x^" + std::to_string(p));
    }
}

/// Brute-force second-order sum with E_k - E_n = (k - n) omega. Only |k - n| <= p
/// contributes, so any basis >= n + p + 1 gives the converged value.
inline double second_order_sum_numeric(int p, std::size_t level, double mass, double omega, std::size_t basis)
{
    detail::require_positive_power(p, "second_order_sum_numeric");
    if (p % 2 == 0) throw std::invalid_argument("second_order_sum_numeric: power must be odd");
    if (basis < level + static_cast<std::size_t>(p) + 1)
        throw std::invalid_argument("second_order_sum_numeric: basis size must be at least n + p + 1");
    const XPowerMatrix x = x_power_matrix(p, basis, mass, omega);
    double sum = 0.0;
    for (std::size_t k = 0; k < basis; ++k) {
        if (k == level) continue;
        const double element = x(k, level);
        const double gap = (static_cast<double>(k) - static_cast<double>(level)) * omega;
        sum += element * element / gap;
    }
    return sum;
}

enum class Provenance { closed_form, numeric_fallback };

inline const char* to_string(Provenance p) noexcept
{
    return p == Provenance::closed_form ? "closed_form" : "numeric_fallback";
}

struct Evaluated {
    double value = 0.0;
    Provenance source = Provenance::closed_form;
};

inline bool has_diagonal_closed_form(int p) noexcept { return p == 2 || p == 4 || p == 6 || p == 8 || p == 10; }
inline bool has_second_order_closed_form(int p) noexcept { return p == 1 || p == 3 || p == 5 || p == 7; }

/// <n|x^p|n>, from the table when tabulated and from the exact truncated matrix otherwise.
inline Evaluated diagonal_value(int p, std::size_t level, double mass, double omega)
{
    if (has_diagonal_closed_form(p)) return {diagonal_closed_form(p, level, mass, omega), Provenance::closed_form};
    detail::require_positive_power(p, "diagonal_value");
    const std::size_t basis = level + static_cast<std::size_t>(p) + 1;
    return {x_power_matrix(p, basis, mass, omega).diagonal(level), Provenance::numeric_fallback};
}

inline Evaluated second_order_sum(int p, std::size_t level, double mass, double omega)
{
    if (has_second_order_closed_form(p))
        return {second_order_sum_closed(p, level, mass, omega), Provenance::closed_form};
    const std::size_t basis = level + static_cast<std::size_t>(p) + 1;
    return {second_order_sum_numeric(p, level, mass, omega, basis), Provenance::numeric_fallback};
}

enum class CorrectionKind { odd_order_2, even_order_1 };

/// Lowest non-vanishing energy shift of level n under coupling * x^p.
/// Odd powers: -coupling^2 * (second-order sum). Even powers: coupling * <n|x^p|n>.
inline Evaluated perturbation_correction(CorrectionKind kind, int p, double coupling, std::size_t level, double mass,
                                         double omega)
{
    detail::require_positive_power(p, "perturbation_correction");
    if (coupling < 0.0) throw std::invalid_argument("perturbation_correction: coupling must be non-negative");
    const bool odd = p % 2 == 1;
    if (odd != (kind == CorrectionKind::odd_order_2))
        throw std::invalid_argument("perturbation_correction: power parity does not match correction kind");
    if (odd) {
        Evaluated s = second_order_sum(p, level, mass, omega);
        return {-coupling * coupling * s.value, s.source};
    }
    Evaluated d = diagonal_value(p, level, mass, omega);
    return {coupling * d.value, d.source};
}

}  // namespace qsl
