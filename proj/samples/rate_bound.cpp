// Complexity-rate bound for the parameters of the right panel of the mass sweep,
// followed by a comparison of the perturbative levels with exact diagonalization.

#include <qsl/qsl.hpp>

#include <fmt/format.h>

int main()
{
    const std::size_t n = 100;
    const auto config = qsl::OscillatorConfig::from_frequencies(/*mass=*/1.0, /*omega=*/1.0, /*omega_e=*/0.65,
                                                                /*omega_lambda=*/1e-2);
    const qsl::BoundReport r = qsl::complexity_rate_bound(config, n);
    fmt::print("tau_bound    = {:.10g}\n", r.tau_bound);
    fmt::print("rate_bound   = {:.10g}\n", r.rate_bound);
    fmt::print("rate_norm    = {:.10g}\n", r.rate_norm);
    fmt::print("rate_delta   = {:.10g}\n", r.rate_delta);
    fmt::print("critical w_l = {:.10g}\n", r.omega_lambda_critical);

    const qsl::OscillatorConfig quartic(1.0, 1.0, 0.0, 0.0, 1e-3);
    for (const auto& row : qsl::compare_spectra(quartic, 4, 64))
        fmt::print("n={}  closed={:.12f}  numeric={:.12f}  |diff|={:.3e}\n", row.n, row.closed, row.numeric, row.abs_err);
}
