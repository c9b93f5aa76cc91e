#include <gtest/gtest.h>

#include <qsl/speed_limit.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace {

using namespace qsl;
constexpr double pi = std::numbers::pi;

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

PerturbativeSpectrum harmonic(double omega, std::size_t n) { return closed_form_spectrum({1, omega, 0, 0, 0}, n); }

TEST(StateCoefficients, Invariants)
{
    const auto u = StateCoefficients::uniform(7);
    double norm = 0;
    for (double w : u.weights()) norm += w;
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_EQ(u.kind(), CoefficientKind::uniform);
    EXPECT_THROW(StateCoefficients::uniform(1), std::invalid_argument);
    EXPECT_THROW(StateCoefficients({{0.5, 0}, {0.5, 0}}, CoefficientKind::custom), std::invalid_argument);
    EXPECT_THROW(StateCoefficients::from_weights({0, 0}), std::invalid_argument);
    EXPECT_THROW(StateCoefficients::from_weights({1, -1}), std::invalid_argument);
}

TEST(AverageEnergyExact, Examples)
{
    EXPECT_DOUBLE_EQ(average_energy_exact(StateCoefficients::uniform(2), harmonic(1, 2)), 1.0);
    EXPECT_NEAR(average_energy_exact(StateCoefficients::uniform(100), harmonic(1, 100)), 50.0, 1e-12);
    const auto s = closed_form_spectrum({1, 1, 1, 0.2, 1e-3}, 4);
    EXPECT_DOUBLE_EQ(average_energy_exact(StateCoefficients::from_weights({1, 0, 0, 0}), s), s[0]);
    EXPECT_THROW(average_energy_exact(StateCoefficients::uniform(5), s), std::invalid_argument);
}

TEST(AverageEnergyLargeN, Examples)
{
    EXPECT_DOUBLE_EQ(average_energy_largeN({1, 1, 0, 0, 0}, 100), 50.0);
    EXPECT_NEAR(average_energy_largeN({1, 1, 0, 0, 3e-3}, 100), 65.00075, 1e-12);
    EXPECT_THROW(average_energy_largeN(OscillatorConfig::from_frequencies(1, 1, 10, 0), 1), std::domain_error);
}

TEST(AverageEnergyLargeN, EqualsBruteForceUniformSum)
{
    // Direct summation of the perturbative levels over the uniform state; the
    // closed form is exact for every N, not only asymptotically.
    for (std::size_t n : {2u, 5u, 20u, 100u, 333u})
        for (double lambda : {0.0, 3e-3, 0.2})
            for (double m : {0.5, 1.0, 2.0}) {
                const OscillatorConfig c(m, 1.3, 0.4, 0.25, lambda);
                double sum = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double kk = static_cast<double>(k);
                    sum += 1.3 * (kk + 0.5) + 3 * lambda / (4 * m * m * 1.69) * (2 * kk * kk + 2 * kk + 1) +
                           c.stark_shift();
                }
                EXPECT_LT(rel_err(sum / n, average_energy_largeN(c, n)), 1e-12) << n << " " << lambda << " " << m;
            }
}

TEST(SurvivalAmplitude, Examples)
{
    const auto s = closed_form_spectrum({1, 1, 1, 0.3, 1e-3}, 6);
    const auto c = StateCoefficients::uniform(6);
    const complex at0 = survival_amplitude(c, s, 0.0);
    EXPECT_DOUBLE_EQ(at0.real(), 1.0);
    EXPECT_EQ(at0.imag(), 0.0);
    EXPECT_NEAR(std::abs(survival_amplitude(StateCoefficients::uniform(2), harmonic(1, 2), pi)), 0.0, 1e-15);
    const auto single = StateCoefficients::from_weights({0, 1, 0});
    for (double t : {0.3, 2.0, 17.5}) EXPECT_NEAR(std::abs(survival_amplitude(single, s, t)), 1.0, 1e-15);
}

TEST(SurvivalCurve, MagnitudesStayInUnitInterval)
{
    const auto s = closed_form_spectrum({1, 1, 1, 0.6, 3e-3}, 20);
    for (const auto& c : random_coefficients(20, 5, 3)) {
        const SurvivalCurve curve = survival_curve(c, s, 20.0, 500);
        EXPECT_NEAR(curve.magnitudes[0], 1.0, 1e-12);
        for (double m : curve.magnitudes) {
            EXPECT_GE(m, 0.0);
            EXPECT_LE(m, 1.0 + 1e-12);
        }
        EXPECT_TRUE(std::is_sorted(curve.times.begin(), curve.times.end()));
    }
}

TEST(OrthogonalityTime, HarmonicUniformFirstZero)
{
    for (std::size_t n : {2u, 3u, 20u, 100u})
        for (double w : {0.5, 1.0, 2.5}) {
            const auto s = harmonic(w, n);
            const auto c = StateCoefficients::uniform(n);
            const OrthogonalityResult r = find_orthogonality_time(c, s);
            ASSERT_TRUE(r.tau.has_value()) << n;
            EXPECT_NEAR(*r.tau, 2 * pi / (n * w), 1e-8) << n << " " << w;
            EXPECT_LE(r.abs_s, 1e-6);
            EXPECT_LE(margolus_levitin_time(average_energy_exact(c, s)), *r.tau);
        }
}

TEST(OrthogonalityTime, TwoLevelConventions)
{
    const auto s = harmonic(1.0, 2);
    const auto c = StateCoefficients::uniform(2);
    const auto r = find_orthogonality_time(c, s);
    ASSERT_TRUE(r.tau);
    EXPECT_NEAR(*r.tau, pi, 1e-8);
    // Raw average (zero-point included) gives pi/2; ground-referenced gives pi, which is tight.
    EXPECT_NEAR(margolus_levitin_time(average_energy_exact(c, s)), pi / 2, 1e-15);
    EXPECT_NEAR(margolus_levitin_time(average_energy_ground_referenced(c, s)), pi, 4e-15);
}

TEST(OrthogonalityTime, SingleEigenstateNeverOrthogonal)
{
    const auto r = find_orthogonality_time(StateCoefficients::from_weights({1, 0, 0}), harmonic(1, 3));
    EXPECT_FALSE(r.tau.has_value());
    EXPECT_NEAR(r.global_min_abs_s, 1.0, 1e-12);
}

TEST(OrthogonalityTime, ValidatesOptions)
{
    OrthogonalityOptions opt;
    opt.grid_points = 99;
    EXPECT_THROW(find_orthogonality_time(StateCoefficients::uniform(2), harmonic(1, 2), opt), std::invalid_argument);
    EXPECT_NEAR(default_tau_max(harmonic(2.0, 5), 5), 2 * pi, 1e-15);
}

TEST(OrthogonalityTime, MargolusLevitinHoldsWheneverZeroFound)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    int found = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 9;
        const OscillatorConfig c(0.5 + u(rng), 0.5 + u(rng), 1.0, 0.4 * u(rng), 0.01 * u(rng));
        const auto s = closed_form_spectrum(c, n);
        const auto coeffs = trial % 2 ? StateCoefficients::uniform(n) : random_coefficients(n, trial, 1)[0];
        const auto r = find_orthogonality_time(coeffs, s);
        if (!r.tau) continue;
        ++found;
        const double e = average_energy_exact(coeffs, s);
        if (e > 0) EXPECT_GE(*r.tau, margolus_levitin_time(e) - 1e-9);
        const double g = average_energy_ground_referenced(coeffs, s);
        EXPECT_GE(*r.tau, margolus_levitin_time(g) - 1e-9);
    }
    EXPECT_GT(found, 5);
}

TEST(TauBound, Examples)
{
    EXPECT_DOUBLE_EQ(tau_bound({1, 2, 0, 0, 0}, 10), pi / 20);
    const auto fig2 = OscillatorConfig::from_frequencies(1, 1, 0.65, 1e-2);
    EXPECT_LT(rel_err(tau_bound(fig2, 100), pi / 100.3101), 1e-12);
    EXPECT_THROW(tau_bound(OscillatorConfig::from_frequencies(1, 1, 10, 0), 1), std::domain_error);
}

TEST(TauBound, IdentityWithLargeNEnergy)
{
    std::size_t checked = 0;
    for (double m : {0.3, 0.7, 1.0, 2.0, 4.5})
        for (double w : {0.2, 0.5, 1.0, 3.0, 10.0})
            for (std::size_t n : {2u, 7u, 30u, 100u, 1000u}) {
                const OscillatorConfig c(m, w, 0.8, 0.3, 2e-3);
                if (!check_field_constraint(c, n)) continue;
                EXPECT_LT(rel_err(tau_bound(c, n) * 2 * average_energy_largeN(c, n), pi), 1e-12);
                ++checked;
            }
    EXPECT_GE(checked, 100u);
}

TEST(ComplexityRate, HarmonicLimit)
{
    const BoundReport r = complexity_rate_bound({1.3, 0.9, 0, 0, 0}, 40);
    EXPECT_DOUBLE_EQ(r.rate_bound, 40 * 0.9 / pi);
    EXPECT_EQ(r.rate_norm, 1.0);
    EXPECT_EQ(r.rate_delta, 0.0);
    EXPECT_LT(rel_err(r.rate_bound, 1.0 / r.tau_bound), 1e-14);
    EXPECT_NEAR(r.tau_ml, pi / (2 * r.avg_energy), 1e-18);
}

TEST(ComplexityRate, ShiftedRateClosedFormAndMassIndependence)
{
    const std::size_t n = 100;
    for (double wl : {8e-3, 1e-2, 3e-2})
        for (double we : {0.1, 0.65})
            for (double w : {0.7, 1.0, 2.0}) {
                const double expected = (wl * wl * (1 + 2.0 * n * n) - 4 * we * we) / (w * w);
                double first = 0;
                for (double m : {0.5, 1.0, 2.0, 5.0}) {
                    const auto c = OscillatorConfig::from_frequencies(m, w, we, wl);
                    if (!check_field_constraint(c, n)) continue;
                    const BoundReport r = complexity_rate_bound(c, n);
                    EXPECT_LT(rel_err(r.rate_delta, expected), 1e-12);
                    if (first == 0) first = r.rate_delta;
                    EXPECT_LT(rel_err(r.rate_delta, first), 1e-12);
                }
            }
}

TEST(ComplexityRate, RateNormIsOneAtCriticalPoint)
{
    const std::size_t n = 100;
    const double wl_crit = 2 * 0.65 / std::sqrt(1 + 2.0 * n * n);
    EXPECT_NEAR(wl_crit, 9.192e-3, 1e-6);
    for (double m : {0.5, 1.0, 2.0})
        for (double w : {0.1, 1.0, 5.0}) {
            const auto c = OscillatorConfig::from_frequencies(m, w, 0.65, wl_crit);
            if (!check_field_constraint(c, n)) continue;
            EXPECT_NEAR(complexity_rate_bound(c, n).rate_norm, 1.0, 1e-12);
        }
}

TEST(ComplexityRate, RequiresFieldConstraint)
{
    EXPECT_THROW(complexity_rate_bound(OscillatorConfig::from_frequencies(1, 1, 10, 0), 2), std::domain_error);
    EXPECT_THROW(complexity_rate_bound({1, 1, 0, 0, 0}, 1), std::invalid_argument);
}

TEST(CriticalPoint, Examples)
{
    const auto zero = critical_point({1, 1, 0, 0, 1e-3}, 100);
    EXPECT_EQ(zero.omega_lambda, 0.0);
    EXPECT_EQ(zero.lambda, 0.0);
    const auto cp = critical_point(OscillatorConfig::from_frequencies(1, 1, 0.65, 0), 100);
    EXPECT_NEAR(cp.omega_lambda, 1.3 / std::sqrt(20001.0), 1e-15);
    EXPECT_GT(cp.omega_lambda, 8e-3);
    EXPECT_LT(cp.omega_lambda, 1e-2);
    // Negative field gives the same critical point.
    const auto neg = critical_point(OscillatorConfig::from_frequencies(1, 1, -0.65, 0), 100);
    EXPECT_EQ(neg.omega_lambda, cp.omega_lambda);
}

TEST(CriticalPoint, LambdaAndOmegaFormsAgree)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const OscillatorConfig c(u(rng), u(rng), u(rng) - 1.5, u(rng), 0.0);
        const std::size_t n = 1 + trial * 7;
        const auto cp = critical_point(c, n);
        const double m = c.mass();
        EXPECT_LT(rel_err(2 * m * m * m * cp.omega_lambda * cp.omega_lambda, cp.lambda), 1e-12);
    }
}

TEST(CriticalPoint, BisectionFindsClosedForm)
{
    const auto root = bisect_critical_omega_lambda(1, 1, 0.65, 100);
    EXPECT_LT(rel_err(root.root, 1.3 / std::sqrt(20001.0)), 1e-10);
    EXPECT_EQ(bisect_critical_omega_lambda(1, 1, 0.0, 100).root, 0.0);
}

TEST(RandomCoefficients, NormalizedAndDeterministic)
{
    const auto a = random_coefficients(50, 42, 4);
    const auto b = random_coefficients(50, 42, 4);
    const auto c = random_coefficients(50, 43, 4);
    ASSERT_EQ(a.size(), 4u);
    for (std::size_t d = 0; d < 4; ++d) {
        double norm = 0;
        for (double w : a[d].weights()) norm += w;
        EXPECT_NEAR(norm, 1.0, 1e-12);
        EXPECT_EQ(a[d].weights(), b[d].weights());
        EXPECT_NE(a[d].weights(), c[d].weights());
        EXPECT_EQ(a[d].kind(), CoefficientKind::random);
        EXPECT_EQ(a[d].seed(), 42u);
    }
    EXPECT_NE(a[0].weights(), a[1].weights());
    EXPECT_THROW(random_coefficients(1, 0, 1), std::invalid_argument);
    EXPECT_THROW(random_coefficients(3, 0, 0), std::invalid_argument);
}

TEST(RandomCoefficients, FrozenFirstDraw)
{
    // mt19937_64 is fully specified, so these digits hold on every platform.
    const auto w = random_coefficients(3, 1, 1)[0].weights();
    std::mt19937_64 rng(1);
    double e[3], total = 0;
    for (double& v : e) {
        v = -std::log1p(-static_cast<double>(rng() >> 11) * 0x1.0p-53);
        total += v;
    }
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(w[i], e[i] / total, 1e-15);
}

TEST(RandomCoefficients, OrthogonalityTimeApproachesUniformAsNGrows)
{
    const auto deviation = [](std::size_t n) {
        const OscillatorConfig c(1, 1, 1, 0.6, 3e-3);
        const auto s = closed_form_spectrum(c, n);
        const double ref = margolus_levitin_time(average_energy_exact(StateCoefficients::uniform(n), s));
        double worst = 0;
        for (const auto& draw : random_coefficients(n, 20240601, 4))
            worst = std::max(worst, std::abs(margolus_levitin_time(average_energy_exact(draw, s)) - ref) / ref);
        return worst;
    };
    EXPECT_LT(deviation(100), deviation(20));
    EXPECT_LT(deviation(1000), deviation(100));
}

TEST(Properties, ShiftedRateMonotoneInParameters)
{
    const std::size_t n = 100;
    double prev = -INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double rd = rate_delta_at(1.0, 1.0, 0.4, 0.0004 * i, n);
        EXPECT_GT(rd, prev);
        prev = rd;
    }
    prev = INFINITY;
    for (int i = 0; i < 50; ++i) {
        const double rd = rate_delta_at(1.0, 1.0, 0.02 * i, 0.009, n);
        EXPECT_LT(rd, prev);
        prev = rd;
    }
}

TEST(Properties, RateNormSaturatesAtLargeOmega)
{
    const std::size_t n = 100;
    const double crit = 2 * 0.65 / std::sqrt(1 + 2.0 * n * n);
    for (double m : {0.5, 1.0, 2.0}) {
        const double below = complexity_rate_bound(OscillatorConfig::from_frequencies(m, 50, 0.65, 8e-3), n).rate_norm;
        const double above = complexity_rate_bound(OscillatorConfig::from_frequencies(m, 50, 0.65, 1e-2), n).rate_norm;
        EXPECT_LE(std::abs(below - 1), 1e-4);
        EXPECT_LE(std::abs(above - 1), 1e-4);
        EXPECT_LT(below, 1.0);
        EXPECT_GT(above, 1.0);
        EXPECT_LT(8e-3, crit);
        EXPECT_GT(1e-2, crit);
    }
}

TEST(Properties, MassDerivativeSignFlipsAtCriticalPoint)
{
    const std::size_t n = 100;
    const double we = 0.65;
    const double crit = 2 * we / std::sqrt(1 + 2.0 * n * n);
    for (double wl : {0.5 * crit, 0.9 * crit, 1.1 * crit, 2 * crit}) {
        const double h = 1e-4;
        const auto rate = [&](double m) {
            return complexity_rate_bound(OscillatorConfig::from_frequencies(m, 1.0, we, wl), n).rate_bound;
        };
        const double d = (rate(1.0 + h) - rate(1.0 - h)) / (2 * h);
        const double sign = wl * wl * (1 + 2.0 * n * n) - 4 * we * we;
        EXPECT_EQ(d > 0, sign > 0) << wl;
        EXPECT_NE(d, 0.0);
    }
}

}  // namespace
