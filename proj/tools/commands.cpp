#include "commands.hpp"

#include <qsl/qsl.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace qsl::cli {

namespace {

namespace fs = std::filesystem;

/// Collects output files and writes the manifest last.
class OutputSet {
public:
    OutputSet(std::string subcommand, const json& params, const std::string& dir)
        : subcommand_(std::move(subcommand)), params_(params), dir_(dir)
    {
        fs::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& text)
    {
        io::write_text((dir_ / name).string(), text);
        files_.push_back(name);
    }

    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

    void note(std::string text) { notes_.push_back(std::move(text)); }

    void finish()
    {
        json m;
        m["tool"] = "qsl";
        m["version"] = qsl::version;
        m["subcommand"] = subcommand_;
        m["seed"] = params_.contains("seed") ? params_["seed"] : json(nullptr);
        m["parameters"] = params_;
        m["outputs"] = files_;
        if (!notes_.empty()) m["notes"] = notes_;
        io::write_text((dir_ / "manifest.json").string(), m.dump(2) + "\n");
    }

private:
    std::string subcommand_;
    json params_;
    fs::path dir_;
    std::vector<std::string> files_;
    std::vector<std::string> notes_;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_json(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

OscillatorConfig config_from(const json& p)
{
    return {p.at("m").get<double>(), p.at("omega").get<double>(), p.at("q").get<double>(),
            p.at("E_field").get<double>(), p.at("lambda").get<double>()};
}

json config_json(const OscillatorConfig& c)
{
    return {{"m", c.mass()},
            {"omega", c.omega()},
            {"q", c.charge()},
            {"E_field", c.electric_field()},
            {"lambda", c.lambda()},
            {"omega_e", c.omega_e()},
            {"omega_lambda", c.omega_lambda()}};
}

json report_json(const BoundReport& r)
{
    return {{"N", r.states},
            {"avg_energy", r.avg_energy},
            {"avg_energy_exact", r.avg_energy_exact},
            {"avg_energy_gap", r.avg_energy_gap},
            {"avg_energy_ground_ref", r.avg_energy_ground_ref},
            {"tau_ml", number_or_null(r.tau_ml)},
            {"tau_ml_ground", number_or_null(r.tau_ml_ground)},
            {"tau_bound", r.tau_bound},
            {"tau_numeric", optional_json(r.tau_numeric)},
            {"rate_bound", r.rate_bound},
            {"rate_norm", r.rate_norm},
            {"rate_delta", r.rate_delta},
            {"omega_lambda_tilde", r.omega_lambda_tilde},
            {"omega_e_tilde", r.omega_e_tilde},
            {"omega_lambda_critical", r.omega_lambda_critical},
            {"lambda_critical", r.lambda_critical}};
}

SpectrumOptions spectrum_options(const json& p)
{
    SpectrumOptions opt;
    opt.jacobi.offdiag_tolerance = p.value("tol_offdiag", opt.jacobi.offdiag_tolerance);
    opt.doubling_tolerance = p.value("tol_doubling", opt.doubling_tolerance);
    return opt;
}

}  // namespace

int run_spectrum(const json& p, const std::string& out_dir)
{
    const OscillatorConfig cfg = config_from(p);
    const auto levels = p.at("levels").get<std::size_t>();
    const auto basis = p.at("basis").get<std::size_t>();
    const auto rows = compare_spectra(cfg, levels, basis, spectrum_options(p));

    io::Table t;
    t.header = {"n", "E_closed", "E_numeric", "abs_err"};
    for (const auto& r : rows) t.add_row({static_cast<std::int64_t>(r.n), r.closed, r.numeric, r.abs_err});

    OutputSet out("spectrum", p, out_dir);
    out.write("spectrum.csv", t.to_csv());
    out.finish();
    return ok;
}

int run_survival(const json& p, const std::string& out_dir)
{
    const OscillatorConfig cfg = config_from(p);
    const auto n = p.at("N").get<std::size_t>();
    const std::string kind = p.at("coeffs").get<std::string>();
    const auto seed = p.at("seed").get<std::uint64_t>();

    std::vector<std::pair<std::string, StateCoefficients>> states;
    if (kind == "uniform") {
        states.emplace_back("uniform", StateCoefficients::uniform(n));
    } else if (kind == "random") {
        states.emplace_back("uniform", StateCoefficients::uniform(n));
        const auto draws = random_coefficients(n, seed, p.at("draws").get<std::size_t>());
        for (std::size_t d = 0; d < draws.size(); ++d) states.emplace_back("random_" + std::to_string(d + 1), draws[d]);
    } else if (kind == "custom") {
        const auto weights = p.at("weights").get<std::vector<double>>();
        if (weights.size() != n) throw std::invalid_argument("survival: --weights must list exactly N values");
        states.emplace_back("custom", StateCoefficients::from_weights(weights));
    } else {
        throw std::invalid_argument("survival: unknown coefficient kind '" + kind + "'");
    }

    const std::string source = p.at("spectrum").get<std::string>();
    PerturbativeSpectrum spectrum;
    if (source == "closed") {
        spectrum = closed_form_spectrum(cfg, n);
    } else if (source == "numeric") {
        spectrum = numeric_spectrum(cfg, n, p.at("basis").get<std::size_t>(), spectrum_options(p));
    } else {
        throw std::invalid_argument("survival: unknown spectrum source '" + source + "'");
    }

    OrthogonalityOptions opt;
    opt.tau_max = p.at("tau_max").get<double>();
    if (!(opt.tau_max > 0.0)) opt.tau_max = default_tau_max(spectrum, n);
    opt.grid_points = p.at("grid").get<std::size_t>();
    opt.epsilon = p.at("tol_orth").get<double>();

    io::Table t;
    t.header = {"tau"};
    for (const auto& s : states) t.header.push_back("abs_S_" + s.first);
    std::vector<SurvivalCurve> curves;
    for (const auto& s : states) curves.push_back(survival_curve(s.second, spectrum, opt.tau_max, opt.grid_points));
    for (std::size_t i = 0; i <= opt.grid_points; ++i) {
        std::vector<io::Cell> row{curves.front().times[i]};
        for (const auto& c : curves) row.emplace_back(c.magnitudes[i]);
        t.add_row(std::move(row));
    }

    json report;
    report["N"] = n;
    report["coeffs"] = kind;
    report["seed"] = seed;
    report["spectrum_source"] = to_string(spectrum.source);
    report["tau_max"] = opt.tau_max;
    report["grid"] = opt.grid_points;
    report["epsilon"] = opt.epsilon;
    report["config"] = config_json(cfg);
    report["field_constraint_ok"] = check_field_constraint(cfg, n);
    report["tau_bound"] = check_field_constraint(cfg, n) ? json(tau_bound(cfg, n)) : json(nullptr);
    json list = json::array();
    for (const auto& [label, coeffs] : states) {
        const OrthogonalityResult r = find_orthogonality_time(coeffs, spectrum, opt);
        const double energy = average_energy_exact(coeffs, spectrum);
        const double ground = average_energy_ground_referenced(coeffs, spectrum);
        const double tau_ml = margolus_levitin_time(energy);
        const double tau_ml_ground = ground > 0.0 ? margolus_levitin_time(ground) : INFINITY;
        json e;
        e["label"] = label;
        e["found"] = r.tau.has_value();
        e["tau_perp"] = optional_json(r.tau);
        e["abs_S_at_tau_perp"] = r.tau ? json(r.abs_s) : json(nullptr);
        e["global_min_tau"] = r.global_min_tau;
        e["global_min_abs_S"] = r.global_min_abs_s;
        e["minima_examined"] = r.minima_examined;
        e["avg_energy"] = energy;
        e["tau_ml"] = number_or_null(tau_ml);
        e["avg_energy_ground_ref"] = ground;
        e["tau_ml_ground"] = number_or_null(tau_ml_ground);
        if (r.tau) {
            e["ml_bound_holds"] = energy <= 0.0 || *r.tau >= tau_ml - 1e-9;
            e["ground_ref_tighter"] = tau_ml_ground > tau_ml && *r.tau >= tau_ml_ground - 1e-9;
        } else {
            e["ml_bound_holds"] = nullptr;
            e["ground_ref_tighter"] = nullptr;
        }
        list.push_back(e);
    }
    report["curves"] = list;

    OutputSet out("survival", p, out_dir);
    out.write("survival.csv", t.to_csv());
    out.write_json("ortho.json", report);
    if (p.value("plot", false)) {
        std::vector<svg::Series> series;
        for (std::size_t k = 0; k < curves.size(); ++k)
            series.push_back({states[k].first, curves[k].times, curves[k].magnitudes});
        out.write("survival.svg", svg::line_plot(series, "Survival amplitude, N = " + std::to_string(n), "tau", "|S(tau)|"));
    }
    out.finish();
    return ok;
}

namespace {

std::vector<svg::Series> group_series(const io::Table& t, const std::vector<std::string>& keys, const std::string& x,
                                      const std::string& y)
{
    std::vector<svg::Series> out;
    std::vector<std::vector<double>> seen;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::vector<double> key;
        for (const auto& k : keys) key.push_back(t.number(r, k));
        auto it = std::find(seen.begin(), seen.end(), key);
        std::size_t idx = static_cast<std::size_t>(it - seen.begin());
        if (it == seen.end()) {
            seen.push_back(key);
            std::string label;
            for (std::size_t i = 0; i < keys.size(); ++i)
                label += (i ? ", " : "") + keys[i] + "=" + fmt::format("{:.4g}", key[i]);
            out.push_back({label, {}, {}});
        }
        out[idx].x.push_back(t.number(r, x));
        out[idx].y.push_back(t.number(r, y));
    }
    return out;
}

}  // namespace

int run_figures(const json& p, const std::string& out_dir)
{
    const auto which = p.at("which").get<std::vector<int>>();
    const auto n = p.at("N").get<std::size_t>();
    const auto jobs = p.at("jobs").get<unsigned>();
    const bool plot = p.value("plot", false);
    OutputSet out("figures", p, out_dir);

    for (int w : which) {
        switch (w) {
        case 1: {
            figures::Fig1Params fp;
            fp.seed = p.at("seed").get<std::uint64_t>();
            const io::Table t = figures::figure1(fp, jobs);
            out.write("fig1.csv", t.to_csv());
            json dev;
            for (std::size_t states : fp.states)
                dev[std::to_string(states)] = figures::fig1_max_deviation(fp, states, 1.0);
            out.write_json("fig1_deviation.json",
                           {{"omega", 1.0}, {"draws", fp.draws}, {"seed", fp.seed}, {"max_rel_deviation", dev}});
            out.note("fig1: tau = pi/(2E) with E from the closed-form levels; m=1, lambda=3e-3, omega_e=0.3, "
                     "4 Dirichlet draws; omega swept over [0.1, 5]");
            if (plot)
                out.write("fig1.svg",
                          svg::line_plot(
                              [&] {
                                  std::vector<svg::Series> s;
                                  for (std::size_t states : fp.states)
                                      for (std::size_t c = 3; c < t.header.size(); ++c) {
                                          svg::Series series{"N=" + std::to_string(states) + " " + t.header[c], {}, {}};
                                          for (std::size_t r = 0; r < t.rows.size(); ++r)
                                              if (t.number(r, "N") == static_cast<double>(states)) {
                                                  series.x.push_back(t.number(r, "omega"));
                                                  series.y.push_back(t.number(r, t.header[c]));
                                              }
                                          s.push_back(std::move(series));
                                      }
                                  return s;
                              }(),
                              "Orthogonality time", "omega", "tau"));
            break;
        }
        case 2: {
            figures::Fig2Params fp;
            fp.states = n;
            const io::Table t = figures::figure2(fp, jobs);
            out.write("fig2.csv", t.to_csv());
            out.note("fig2: N, omega_e=0.65, omega_lambda in {8e-3, critical, 1e-2}, m in {0.5, 1, 2}, omega in "
                     "[0.1, 5]; points violating the field constraint have field_constraint_ok=0 and nan rates");
            if (plot)
                out.write("fig2.svg", svg::line_plot(group_series(t, {"omega_lambda", "m"}, "omega", "rate_norm"),
                                                     "Normalized complexification rate", "omega", "pi C'/(N omega)"));
            break;
        }
        case 3: {
            figures::Fig3Params fp;
            fp.states = n;
            const io::Table t = figures::figure3(fp, jobs);
            out.write("fig3.csv", t.to_csv());
            out.note("fig3: rate_norm vs omega_e in [0, 1] at fixed omega_lambda in {5e-3, 8e-3, 1e-2}, m=1, "
                     "omega=1; the curve family parameter is omega_lambda");
            if (plot)
                out.write("fig3.svg", svg::line_plot(group_series(t, {"omega_lambda"}, "omega_e", "rate_norm"),
                                                     "Normalized rate vs field", "omega_e", "pi C'/(N omega)"));
            break;
        }
        case 4: {
            figures::Fig4Params fp;
            fp.states = n;
            const io::Table t = figures::figure4(fp, jobs);
            out.write("fig4.csv", t.to_csv());
            out.write("fig4_zero_set.csv", figures::figure4_zero_set(fp).to_csv());
            out.note("fig4: rate_delta on a 41x41 grid, omega_lambda/omega in [0, 0.02], omega_e/omega in [0, 1], "
                     "m=1, omega=1");
            if (plot) {
                const auto xs = figures::linspace(0.0, fp.omega_lambda_tilde_max, fp.points);
                const auto ys = figures::linspace(0.0, fp.omega_e_tilde_max, fp.points);
                std::vector<double> z;
                for (std::size_t r = 0; r < t.rows.size(); ++r) z.push_back(t.number(r, "rate_delta"));
                out.write("fig4.svg", svg::heat_map(xs, ys, z, "Shifted complexification rate", "omega_lambda/omega",
                                                    "omega_e/omega"));
            }
            break;
        }
        default:
            throw std::invalid_argument("figures: --which must be 1, 2, 3 or 4");
        }
    }
    out.finish();
    return ok;
}

int run_verify_appendix(const json& p, const std::string& out_dir)
{
    constexpr double tolerance = 1e-9;
    const auto max_n = p.at("max_n").get<std::size_t>();
    const auto powers = p.at("powers").get<std::vector<int>>();
    const std::vector<double> scales{0.5, 1.0, 2.0};

    io::Table t;
    t.header = {"quantity", "p", "n", "m_row", "mass", "omega", "closed_form", "brute_force", "abs_err", "rel_err",
                "provenance"};
    bool pass = true;
    const auto add = [&](const std::string& quantity, int power, std::size_t level, std::int64_t row, double mass,
                         double omega, std::optional<double> closed, double brute) {
        double abs_err = figures::nan, rel_err = figures::nan;
        if (closed) {
            abs_err = std::abs(*closed - brute);
            rel_err = *closed != 0.0 ? abs_err / std::abs(*closed) : abs_err;
            pass = pass && rel_err <= tolerance;
        }
        t.add_row({quantity, std::int64_t{power}, static_cast<std::int64_t>(level), row, mass, omega,
                   closed ? *closed : figures::nan, brute, abs_err, rel_err,
                   std::string(to_string(closed ? Provenance::closed_form : Provenance::numeric_fallback))});
    };

    for (int power : powers) {
        if (power < 1) throw std::invalid_argument("verify-appendix: powers must be >= 1");
        if (power <= 3) {
            const Matrix brute = ladder_sum_power(power, max_n + static_cast<std::size_t>(power) + 1);
            for (std::size_t level = 0; level <= max_n; ++level)
                for (int offset = -power; offset <= power; offset += 2) {
                    const auto row = static_cast<std::int64_t>(level) + offset;
                    if (row < 0) continue;
                    add("ladder_element", power, level, row, figures::nan, figures::nan,
                        ladder_element_closed(power, static_cast<std::size_t>(row), level),
                        brute(static_cast<std::size_t>(row), level));
                }
        }
        for (double mass : scales)
            for (double omega : scales)
                for (std::size_t level = 0; level <= max_n; ++level) {
                    const auto row = static_cast<std::int64_t>(level);
                    if (power % 2 == 0) {
                        const double brute =
                            x_power_matrix(power, level + static_cast<std::size_t>(power) + 50, mass, omega).diagonal(level);
                        std::optional<double> closed;
                        if (has_diagonal_closed_form(power)) closed = diagonal_closed_form(power, level, mass, omega);
                        add("diagonal", power, level, row, mass, omega, closed, brute);
                    } else {
                        const double brute = second_order_sum_numeric(power, level, mass, omega,
                                                                      level + static_cast<std::size_t>(power) + 1);
                        std::optional<double> closed;
                        if (has_second_order_closed_form(power))
                            closed = second_order_sum_closed(power, level, mass, omega);
                        add("second_order_sum", power, level, row, mass, omega, closed, brute);
                    }
                }
    }

    OutputSet out("verify-appendix", p, out_dir);
    out.write("appendix.csv", t.to_csv());
    out.finish();
    if (!pass) {
        std::cerr << "verify-appendix: relative error above " << tolerance << " (see appendix.csv)\n";
        return numeric_failure;
    }
    return ok;
}

int run_critical(const json& p, const std::string& out_dir)
{
    constexpr double root_tolerance = 1e-10;
    constexpr double consistency_tolerance = 1e-12;
    const OscillatorConfig cfg = config_from(p);
    const auto n = p.at("N").get<std::size_t>();

    const CriticalPoint cp = critical_point(cfg, n);
    const BisectionResult root = bisect_critical_omega_lambda(cfg.mass(), cfg.omega(), cfg.omega_e(), n);
    const auto rel = [](double a, double b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    };
    const double root_err = rel(root.root, cp.omega_lambda);
    const double lambda_from_omega = 2.0 * std::pow(cfg.mass(), 3) * cp.omega_lambda * cp.omega_lambda;
    const double consistency_err = rel(lambda_from_omega, cp.lambda);
    const bool pass = root_err <= root_tolerance && consistency_err <= consistency_tolerance;

    json j;
    j["N"] = n;
    j["config"] = config_json(cfg);
    j["omega_e"] = cfg.omega_e();
    j["omega_lambda_critical"] = cp.omega_lambda;
    j["lambda_critical"] = cp.lambda;
    j["lambda_from_omega_lambda_critical"] = lambda_from_omega;
    j["consistency_rel_err"] = consistency_err;
    j["bisection_root"] = root.root;
    j["bisection_iterations"] = root.iterations;
    j["root_rel_err"] = root_err;
    j["self_check_passed"] = pass;
    j["field_constraint_ok"] = check_field_constraint(cfg, n);
    if (check_field_constraint(cfg, n)) {
        BoundReport r = complexity_rate_bound(cfg, n);
        OrthogonalityOptions opt;
        opt.grid_points = p.at("grid").get<std::size_t>();
        opt.epsilon = p.at("tol_orth").get<double>();
        opt.tau_max = p.at("tau_max").get<double>();
        const auto ortho = find_orthogonality_time(StateCoefficients::uniform(n), closed_form_spectrum(cfg, n), opt);
        r.tau_numeric = ortho.tau;
        j["bound_report"] = report_json(r);
    } else {
        j["bound_report"] = nullptr;
    }
    const auto at_critical = OscillatorConfig::from_frequencies(cfg.mass(), cfg.omega(), cfg.omega_e(), cp.omega_lambda);
    j["bound_report_at_critical"] =
        check_field_constraint(at_critical, n) ? report_json(complexity_rate_bound(at_critical, n)) : json(nullptr);

    OutputSet out("critical", p, out_dir);
    out.write_json("critical.json", j);
    out.finish();
    if (!pass) {
        std::cerr << "critical: bisection root or lambda consistency disagrees with the closed form\n";
        return numeric_failure;
    }
    return ok;
}

int dispatch(const std::string& subcommand, const json& params, const std::string& out_dir)
{
    try {
        if (subcommand == "spectrum") return run_spectrum(params, out_dir);
        if (subcommand == "survival") return run_survival(params, out_dir);
        if (subcommand == "figures") return run_figures(params, out_dir);
        if (subcommand == "verify-appendix") return run_verify_appendix(params, out_dir);
        if (subcommand == "critical") return run_critical(params, out_dir);
        std::cerr << "unknown subcommand '" << subcommand << "'\n";
        return usage_error;
    } catch (const io::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric_failure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const json::exception& e) {
        std::cerr << "error: bad parameters: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numeric_failure;
    }
}

int run_from_manifest(const std::string& manifest_path, const std::string& out_dir)
{
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "error: cannot open manifest '" << manifest_path << "'\n";
        return usage_error;
    }
    json m;
    try {
        in >> m;
        return dispatch(m.at("subcommand").get<std::string>(), m.at("parameters"), out_dir);
    } catch (const json::exception& e) {
        std::cerr << "error: malformed manifest: " << e.what() << "\n";
        return usage_error;
    }
}

}  // namespace qsl::cli
