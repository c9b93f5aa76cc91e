#pragma once

// Cyclic Jacobi eigenvalue solver for dense real symmetric matrices.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qsl/matrix.hpp"

namespace qsl {

struct JacobiOptions {
    double offdiag_tolerance = 1e-12;  ///< relative to the input Frobenius norm
    int max_sweeps = 100;
    double symmetry_tolerance = 1e-14;  ///< relative
};

struct EigenResult {
    std::vector<double> eigenvalues;  ///< ascending
    std::size_t basis_size = 0;
    bool converged = false;
    double offdiag_norm = 0.0;
    int sweeps = 0;
};

namespace detail {

inline double offdiag_norm(const Matrix& a)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) acc += a(i, j) * a(i, j);
    return std::sqrt(2.0 * acc);
}

}  // namespace detail

/// All eigenvalues of a symmetric matrix. Works on a private copy; non-convergence
/// is reported through `converged`, never silently.
inline EigenResult symmetric_eigenvalues(const Matrix& input, const JacobiOptions& opt = {})
{
    if (!input.is_square()) throw std::invalid_argument("symmetric_eigenvalues: matrix is not square");
    const std::size_t n = input.rows();
    const double norm = input.frobenius_norm();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(input(i, j) - input(j, i)) > opt.symmetry_tolerance * norm)
                throw std::invalid_argument("symmetric_eigenvalues: matrix is not symmetric");

    Matrix a = input;
    EigenResult result;
    result.basis_size = n;
    const double target = opt.offdiag_tolerance * norm;

    double off = detail::offdiag_norm(a);
    while (off > target && result.sweeps < opt.max_sweeps) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                // Large |theta|: theta^2 would overflow, t ~ 1/(2 theta).
                const double t = std::abs(theta) > 1e150
                                     ? 0.5 / theta
                                     : (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    const double new_rp = arp - s * (arq + tau * arp);
                    const double new_rq = arq + s * (arp - tau * arq);
                    a(r, p) = new_rp;
                    a(p, r) = new_rp;
                    a(r, q) = new_rq;
                    a(q, r) = new_rq;
                }
            }
        }
        ++result.sweeps;
        off = detail::offdiag_norm(a);
    }

    result.offdiag_norm = off;
    result.converged = off <= target;
    result.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
    std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
    return result;
}

}  // namespace qsl
