// qsl: orthogonality-time and complexity-rate analysis of the charged quartic oscillator.

#include <CLI11.hpp>

#include <qsl/io.hpp>
#include <qsl/spectrum.hpp>
#include <qsl/version.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"

namespace {

using qsl::cli::json;

struct PhysicsFlags {
    std::string config_file;
    std::optional<double> m, omega, q, field, lambda;
};

struct CommonFlags {
    std::string out = "out";
    std::size_t states = 0;
    std::uint64_t seed = 20240601;
    std::size_t basis = 0;
    double tol_orth = 1e-6;
    double tau_max = 0.0;
    std::size_t grid = 10000;
    unsigned jobs = 1;
    bool plot = false;
    double tol_offdiag = 1e-12;
    double tol_doubling = 1e-8;
};

void add_physics(CLI::App* sub, PhysicsFlags& f)
{
    sub->add_option("--config", f.config_file, "Key-value file with m, omega, q, E_field, lambda");
    sub->add_option("--m", f.m, "Mass");
    sub->add_option("--omega", f.omega, "Oscillator frequency");
    sub->add_option("--q", f.q, "Charge");
    sub->add_option("--E-field", f.field, "Electric field");
    sub->add_option("--lambda", f.lambda, "Quartic anharmonicity (>= 0)");
}

void add_out(CLI::App* sub, CommonFlags& c) { sub->add_option("--out", c.out, "Output directory")->capture_default_str(); }

/// File values first, flags override; every key must end up set.
json resolve_physics(const PhysicsFlags& f)
{
    std::map<std::string, double> values;
    if (!f.config_file.empty()) values = qsl::io::read_config_file(f.config_file);
    const std::pair<const char*, const std::optional<double>*> flags[] = {
        {"m", &f.m}, {"omega", &f.omega}, {"q", &f.q}, {"E_field", &f.field}, {"lambda", &f.lambda}};
    json p;
    for (const auto& [key, flag] : flags) {
        if (flag->has_value()) values[key] = **flag;
        if (!values.contains(key))
            throw qsl::io::ConfigError(std::string("missing config key '") + key + "' (set it in --config or with a flag)");
        p[key] = values[key];
    }
    return p;
}

std::size_t auto_basis(std::size_t requested, std::size_t levels)
{
    return requested != 0 ? requested : std::max<std::size_t>(qsl::minimum_basis(levels), 64);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Orthogonality times and complexity-rate bounds for the charged quartic oscillator"};
    app.set_version_flag("--version", std::string(qsl::version));
    app.require_subcommand(1);

    PhysicsFlags physics;
    CommonFlags common;

    auto* spectrum = app.add_subcommand("spectrum", "Perturbative levels vs numeric diagonalization (spectrum.csv)");
    std::size_t levels = 6;
    add_physics(spectrum, physics);
    add_out(spectrum, common);
    spectrum->add_option("--levels", levels, "Number of levels to compare")->capture_default_str();
    spectrum->add_option("--basis", common.basis, "Truncated basis size (0 = automatic)");
    spectrum->add_option("--tol-offdiag", common.tol_offdiag, "Jacobi off-diagonal tolerance")->capture_default_str();
    spectrum->add_option("--tol-doubling", common.tol_doubling, "Basis-doubling tolerance")->capture_default_str();

    auto* survival = app.add_subcommand("survival", "Survival amplitude and orthogonality time (survival.csv, ortho.json)");
    std::string coeffs = "uniform";
    std::string source = "closed";
    std::size_t draws = 4;
    std::vector<double> weights;
    add_physics(survival, physics);
    add_out(survival, common);
    survival->add_option("--N", common.states, "Number of states in the superposition")->default_val(20);
    survival->add_option("--coeffs", coeffs, "uniform | random | custom")
        ->check(CLI::IsMember({"uniform", "random", "custom"}))
        ->capture_default_str();
    survival->add_option("--draws", draws, "Random draws")->capture_default_str();
    survival->add_option("--weights", weights, "Custom |c_n|^2 weights (N values)")->delimiter(',');
    survival->add_option("--spectrum", source, "closed | numeric")
        ->check(CLI::IsMember({"closed", "numeric"}))
        ->capture_default_str();
    survival->add_option("--seed", common.seed, "PRNG seed")->capture_default_str();
    survival->add_option("--basis", common.basis, "Basis size for --spectrum numeric (0 = automatic)");
    survival->add_option("--tol-orth", common.tol_orth, "Orthogonality threshold on |S|")->capture_default_str();
    survival->add_option("--tau-max", common.tau_max, "Scan range (0 = 4 pi / smallest gap)");
    survival->add_option("--grid", common.grid, "Scan grid points")->capture_default_str();
    survival->add_option("--tol-offdiag", common.tol_offdiag, "Jacobi off-diagonal tolerance");
    survival->add_option("--tol-doubling", common.tol_doubling, "Basis-doubling tolerance");
    survival->add_flag("--plot", common.plot, "Also write survival.svg");

    auto* figures = app.add_subcommand("figures", "Regenerate figure data (figN.csv, optional SVG)");
    std::vector<int> which{1, 2, 3, 4};
    add_out(figures, common);
    figures->add_option("--which", which, "Figures to build (1-4)")->delimiter(',')->check(CLI::Range(1, 4));
    figures->add_option("--N", common.states, "Number of states")->default_val(100);
    figures->add_option("--seed", common.seed, "PRNG seed for figure 1")->capture_default_str();
    figures->add_option("--jobs", common.jobs, "Worker threads for sweeps")->capture_default_str();
    figures->add_flag("--plot", common.plot, "Also write SVG plots");

    auto* verify = app.add_subcommand("verify-appendix", "Closed forms vs brute force (appendix.csv)");
    std::size_t max_n = 20;
    std::vector<int> powers{1, 2, 3, 4, 5, 6, 7, 8, 10};
    add_out(verify, common);
    verify->add_option("--max-n", max_n, "Largest level n")->capture_default_str();
    verify->add_option("--powers", powers, "Powers p to check")->delimiter(',');

    auto* critical = app.add_subcommand("critical", "Critical anharmonicity and bisection self-check (critical.json)");
    add_physics(critical, physics);
    add_out(critical, common);
    critical->add_option("--N", common.states, "Number of states")->default_val(100);
    critical->add_option("--tol-orth", common.tol_orth, "Orthogonality threshold on |S|")->capture_default_str();
    critical->add_option("--tau-max", common.tau_max, "Scan range (0 = automatic)");
    critical->add_option("--grid", common.grid, "Scan grid points")->capture_default_str();

    auto* replay = app.add_subcommand("replay", "Rerun a subcommand from its manifest.json");
    std::string manifest;
    replay->add_option("--manifest", manifest, "Path to manifest.json")->required();
    add_out(replay, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qsl::cli::usage_error;
    }

    try {
        if (*replay) return qsl::cli::run_from_manifest(manifest, common.out);

        if (*spectrum) {
            json p = resolve_physics(physics);
            p["levels"] = levels;
            p["basis"] = auto_basis(common.basis, levels);
            p["tol_offdiag"] = common.tol_offdiag;
            p["tol_doubling"] = common.tol_doubling;
            return qsl::cli::dispatch("spectrum", p, common.out);
        }
        if (*survival) {
            json p = resolve_physics(physics);
            p["N"] = common.states;
            p["coeffs"] = coeffs;
            p["seed"] = common.seed;
            p["draws"] = draws;
            p["weights"] = weights;
            p["spectrum"] = source;
            p["basis"] = auto_basis(common.basis, common.states);
            p["tau_max"] = common.tau_max;
            p["grid"] = common.grid;
            p["tol_orth"] = common.tol_orth;
            p["tol_offdiag"] = common.tol_offdiag;
            p["tol_doubling"] = common.tol_doubling;
            p["plot"] = common.plot;
            return qsl::cli::dispatch("survival", p, common.out);
        }
        if (*figures) {
            json p;
            p["which"] = which;
            p["N"] = common.states;
            p["seed"] = common.seed;
            p["jobs"] = common.jobs;
            p["plot"] = common.plot;
            return qsl::cli::dispatch("figures", p, common.out);
        }
        if (*verify) {
            json p;
            p["max_n"] = max_n;
            p["powers"] = powers;
            return qsl::cli::dispatch("verify-appendix", p, common.out);
        }
        if (*critical) {
            json p = resolve_physics(physics);
            p["N"] = common.states;
            p["tol_orth"] = common.tol_orth;
            p["tau_max"] = common.tau_max;
            p["grid"] = common.grid;
            return qsl::cli::dispatch("critical", p, common.out);
        }
    } catch (const qsl::io::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qsl::cli::usage_error;
    }
    return qsl::cli::usage_error;
}
