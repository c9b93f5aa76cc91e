// Acceptance checks. Usage: acceptance [criterion ...]; no arguments runs all nine.
// Prints one [PASS]/[FAIL] line per criterion and exits non-zero if any fail.

#include <qsl/qsl.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "oracles.hpp"

namespace {

using namespace qsl;
namespace fs = std::filesystem;

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double rel_err(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const double scales[] = {0.5, 1.0, 2.0};

Outcome diagonal_table()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::size_t cases = 0;
    for (int p : {2, 4, 6, 8, 10})
        for (double m : scales)
            for (double w : scales) {
                const XPowerMatrix x = x_power_matrix(p, 21, m, w);
                for (std::size_t n = 0; n <= 20; ++n) {
                    worst = std::max(worst, rel_err(x(n, n), diagonal_closed_form(p, n, m, w)));
                    ++cases;
                }
            }
    const double t = seconds_since(t0);
    return {worst <= 1e-10 && t < 5.0,
            std::to_string(cases) + " entries, max rel err " + sci(worst) + ", " + sci(t) + " s"};
}

Outcome second_order_table()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::size_t cases = 0;
    for (int p : {1, 3, 5, 7})
        for (double m : scales)
            for (double w : scales)
                for (std::size_t n = 0; n <= 10; ++n) {
                    const double numeric = second_order_sum_numeric(p, n, m, w, n + p + 1);
                    worst = std::max(worst, rel_err(numeric, second_order_sum_closed(p, n, m, w)));
                    ++cases;
                }
    const double t = seconds_since(t0);
    return {worst <= 1e-9 && t < 5.0,
            std::to_string(cases) + " sums, max rel err " + sci(worst) + ", " + sci(t) + " s"};
}

Outcome sign_claim()
{
    std::size_t checked = 0, wrong = 0;
    for (double m : scales)
        for (double w : scales)
            for (std::size_t n = 0; n <= 10; ++n) {
                for (int p : {1, 3, 5, 7}) {
                    ++checked;
                    if (!(perturbation_correction(CorrectionKind::odd_order_2, p, 1.0, n, m, w).value < 0.0)) ++wrong;
                }
                for (int p : {2, 4, 6, 8, 10}) {
                    ++checked;
                    if (!(perturbation_correction(CorrectionKind::even_order_1, p, 1.0, n, m, w).value > 0.0)) ++wrong;
                }
            }
    return {wrong == 0, std::to_string(checked) + " corrections, " + std::to_string(wrong) + " with the wrong sign"};
}

Outcome spectrum_vs_diagonalization()
{
    Outcome o;
    const std::size_t levels = 6, basis = 64;
    const auto quartic = compare_spectra({1, 1, 0, 0, 1e-3}, levels, basis);
    double worst_quartic = 0.0;
    for (const auto& r : quartic) worst_quartic = std::max(worst_quartic, r.abs_err);
    const auto displaced = compare_spectra({1, 1, 1, 0.01, 0}, levels, basis);
    double worst_displaced = 0.0;
    for (const auto& r : displaced) worst_displaced = std::max(worst_displaced, r.abs_err);

    // Doubling drift measured directly (numeric_spectrum also enforces it).
    double drift = 0.0;
    for (const OscillatorConfig& c : {OscillatorConfig(1, 1, 0, 0, 1e-3), OscillatorConfig(1, 1, 1, 0.01, 0)}) {
        const auto a = symmetric_eigenvalues(build_hamiltonian_matrix(c, basis)).eigenvalues;
        const auto b = symmetric_eigenvalues(build_hamiltonian_matrix(c, 2 * basis)).eigenvalues;
        for (std::size_t n = 0; n < levels; ++n) drift = std::max(drift, std::abs(a[n] - b[n]));
    }

    o.pass = worst_quartic <= 5e-5 && worst_displaced <= 1e-9 && drift <= 1e-8;
    o.detail = "quartic max |dE| " + sci(worst_quartic) + " (limit 5e-05; per level:";
    for (const auto& r : quartic) o.detail += " " + sci(r.abs_err);
    o.detail += "), displaced " + sci(worst_displaced) + " (limit 1e-09), doubling drift " + sci(drift) +
                " (limit 1e-08)";
    return o;
}

Outcome harmonic_orthogonality()
{
    Outcome o;
    double worst = 0.0;
    bool ml_ok = true;
    for (std::size_t n : {2u, 20u, 100u}) {
        const auto s = closed_form_spectrum({1, 1, 0, 0, 0}, n);
        const auto c = StateCoefficients::uniform(n);
        const auto r = find_orthogonality_time(c, s);
        if (!r.tau) {
            o.pass = false;
            o.detail += "N=" + std::to_string(n) + " no zero found; ";
            continue;
        }
        worst = std::max(worst, std::abs(*r.tau - 2 * pi / n));
        ml_ok = ml_ok && margolus_levitin_time(average_energy_exact(c, s)) <= *r.tau;
    }
    o.pass = o.pass && worst <= 1e-8 && ml_ok;
    o.detail += "max |tau - 2 pi/N| " + sci(worst) + ", ML bound " + (ml_ok ? "holds" : "violated");
    return o;
}

Outcome identity_suite()
{
    std::size_t valid = 0;
    double worst_tau = 0.0;
    for (double m : {0.5, 1.0, 2.0})
        for (double w : {0.3, 1.0, 3.0})
            for (std::size_t n : {2u, 20u, 100u})
                for (double lambda : {0.0, 1e-3, 0.1})
                    for (double we : {0.0, 0.3, 0.65}) {
                        const auto c = OscillatorConfig::from_frequencies(m, w, we, 0.0);
                        const OscillatorConfig cfg(m, w, 1.0, c.electric_field(), lambda);
                        if (!check_field_constraint(cfg, n)) continue;
                        ++valid;
                        worst_tau = std::max(worst_tau, rel_err(tau_bound(cfg, n) * 2 * average_energy_largeN(cfg, n), pi));
                    }
    double worst_mass = 0.0;
    std::size_t mass_points = 0;
    for (double w : {0.5, 1.0, 2.0})
        for (double we : {0.1, 0.65})
            for (double wl : {5e-3, 1e-2}) {
                std::vector<double> vals;
                for (double m : {0.5, 1.0, 2.0, 5.0}) {
                    const auto c = OscillatorConfig::from_frequencies(m, w, we, wl);
                    if (check_field_constraint(c, 100)) vals.push_back(complexity_rate_bound(c, 100).rate_delta);
                }
                for (double v : vals) worst_mass = std::max(worst_mass, rel_err(v, vals.front()));
                mass_points += vals.size();
            }
    return {valid >= 100 && worst_tau <= 1e-12 && worst_mass <= 1e-12 && mass_points > 0,
            std::to_string(valid) + " valid points, max rel err of tau*2E vs pi " + sci(worst_tau) +
                ", rate_delta mass spread " + sci(worst_mass)};
}

Outcome critical_point_checks()
{
    const std::size_t n0 = 100;
    double worst_norm = 0.0, worst_lambda = 0.0;
    const auto check = [&](double m, double w, double we, std::size_t n) {
        const auto base = OscillatorConfig::from_frequencies(m, w, we, 0.0);
        const CriticalPoint cp = critical_point(base, n);
        const auto at = OscillatorConfig::from_frequencies(m, w, we, cp.omega_lambda);
        if (!check_field_constraint(at, n)) return false;
        worst_norm = std::max(worst_norm, std::abs(complexity_rate_bound(at, n).rate_norm - 1.0));
        worst_lambda = std::max(worst_lambda, rel_err(cp.lambda, 2 * m * m * m * cp.omega_lambda * cp.omega_lambda));
        return true;
    };
    check(1.0, 1.0, 0.65, n0);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int random_valid = 0;
    while (random_valid < 20)
        if (check(0.2 + 3 * u(rng), 0.2 + 3 * u(rng), 1.5 * u(rng), 2 + static_cast<std::size_t>(300 * u(rng))))
            ++random_valid;

    const double closed = critical_point(OscillatorConfig::from_frequencies(1, 1, 0.65, 0), n0).omega_lambda;
    const double root = bisect_critical_omega_lambda(1, 1, 0.65, n0).root;
    const double root_err = rel_err(root, closed);
    return {worst_norm <= 1e-12 && root_err <= 1e-10 && worst_lambda <= 1e-12,
            "omega_lambda_cri " + sci(closed) + ", |rate_norm - 1| " + sci(worst_norm) + ", bisection rel err " +
                sci(root_err) + ", lambda rel err " + sci(worst_lambda)};
}

Outcome figure_shapes()
{
    std::vector<std::string> failures;
    // Fig 2: each panel approaches 1 from below (ω_λ < crit) or above (ω_λ > crit), monotonically in ω.
    const figures::Fig2Params p2;
    const double crit = figures::fig2_series(p2)[1];
    const auto t2 = figures::figure2(p2);
    for (std::size_t r = 1; r < t2.rows.size(); ++r) {
        if (t2.number(r, "omega_lambda") != t2.number(r - 1, "omega_lambda") || t2.number(r, "m") != t2.number(r - 1, "m"))
            continue;
        if (t2.number(r, "field_constraint_ok") == 0 || t2.number(r - 1, "field_constraint_ok") == 0) continue;
        const double wl = t2.number(r, "omega_lambda");
        const double prev = t2.number(r - 1, "rate_norm"), cur = t2.number(r, "rate_norm");
        const bool ok = wl < crit ? (cur < 1 && cur >= prev) : wl > crit ? (cur > 1 && cur <= prev) : std::abs(cur - 1) <= 1e-12;
        if (!ok) {
            failures.push_back("fig2 row " + std::to_string(r));
            break;
        }
    }
    // Fig 4: monotone surface, zero set on the critical curve.
    const figures::Fig4Params p4;
    const auto t4 = figures::figure4(p4);
    const std::size_t k = p4.points;
    for (std::size_t i = 0; i < k && failures.empty(); ++i)
        for (std::size_t j = 0; j + 1 < k; ++j) {
            if (t4.number(i * k + j, "rate_delta") <= t4.number(i * k + j + 1, "rate_delta") ||
                t4.number(j * k + i, "rate_delta") >= t4.number((j + 1) * k + i, "rate_delta")) {
                failures.push_back("fig4 monotonicity at " + std::to_string(i) + "," + std::to_string(j));
                break;
            }
        }
    const auto zero = figures::figure4_zero_set(p4);
    double worst_zero = 0.0;
    for (std::size_t r = 0; r < zero.rows.size(); ++r) worst_zero = std::max(worst_zero, std::abs(zero.number(r, "rate_delta")));
    if (worst_zero > 1e-12) failures.push_back("fig4 zero set " + sci(worst_zero));
    // Fig 1: random deviation shrinks from N=20 to N=100.
    const figures::Fig1Params p1;
    const double d20 = figures::fig1_max_deviation(p1, 20, 1.0), d100 = figures::fig1_max_deviation(p1, 100, 1.0);
    if (!(d100 < d20)) failures.push_back("fig1 deviation");

    std::string detail = "crit " + sci(crit) + ", fig4 zero set " + sci(worst_zero) + ", fig1 deviation " + sci(d20) +
                         " -> " + sci(d100);
    for (const auto& f : failures) detail += "; failed: " + f;
    return {failures.empty(), detail};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& args)
{
    const std::string cmd = std::string("\"") + QSL_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome replay_determinism()
{
    const fs::path root = fs::temp_directory_path() / ("qsl_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(root);
    const std::string phys = " --m 1 --omega 1 --q 1 --E-field 0.6 --lambda 3e-3";
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"spectrum", "spectrum --levels 4" + phys},
        {"survival", "survival --N 20 --coeffs random --draws 3 --seed 7" + phys},
        {"figures", "figures --which 1,2,3,4 --jobs 2"},
        {"verify-appendix", "verify-appendix --max-n 8"},
        {"critical", "critical --N 50" + phys},
    };
    std::size_t files = 0;
    std::vector<std::string> failures;
    for (const auto& [name, args] : commands) {
        const fs::path first = root / name / "a", second = root / name / "b";
        if (run(args + " --out \"" + first.string() + "\"") != 0 ||
            run("replay --manifest \"" + (first / "manifest.json").string() + "\" --out \"" + second.string() + "\"") != 0) {
            failures.push_back(name + " did not run");
            continue;
        }
        for (const auto& entry : fs::directory_iterator(first)) {
            const auto ext = entry.path().extension();
            if (ext != ".csv" && ext != ".json") continue;
            ++files;
            if (slurp(entry.path()) != slurp(second / entry.path().filename()))
                failures.push_back(name + "/" + entry.path().filename().string());
        }
    }
    fs::remove_all(root);
    std::string detail = std::to_string(files) + " CSV/JSON files compared across 5 subcommands";
    for (const auto& f : failures) detail += "; differs: " + f;
    return {failures.empty() && files > 0, detail};
}

struct Criterion {
    const char* title;
    std::function<Outcome()> check;
};

const Criterion criteria[] = {
    {"diagonal closed forms vs brute force", diagonal_table},
    {"second-order closed forms vs numeric sum", second_order_table},
    {"correction signs", sign_claim},
    {"perturbative levels vs diagonalization", spectrum_vs_diagonalization},
    {"harmonic uniform-state orthogonality", harmonic_orthogonality},
    {"bound identities", identity_suite},
    {"critical anharmonicity", critical_point_checks},
    {"figure shapes", figure_shapes},
    {"replay determinism", replay_determinism},
};

}  // namespace

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
    if (selected.empty())
        for (int i = 1; i <= 9; ++i) selected.push_back(i);

    bool all = true;
    for (int id : selected) {
        if (id < 1 || id > 9) {
            std::cerr << "unknown criterion " << id << "\n";
            return 2;
        }
        const Criterion& c = criteria[id - 1];
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << " (" << c.title << "): " << o.detail << "\n";
    }
    return all ? 0 : 1;
}
