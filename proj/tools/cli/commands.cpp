// SPDX-License-Identifier: MIT

#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vcnls/analysis.hpp"
#include "vcnls/quadrature.hpp"
#include "vcnls/residual.hpp"
#include "vcnls/simulate.hpp"
#include "vcnls/symmetry.hpp"

namespace vcnls::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

// Records a scalar comparison |computed - reference| <= tolerance.
CheckRecord scalar_check(std::string name, json inputs, double computed, double reference,
                         Provenance provenance, double tolerance) {
    const bool pass = std::isfinite(computed) && std::abs(computed - reference) <= tolerance;
    return {std::move(name), std::move(inputs), computed, reference, provenance, tolerance, pass};
}

// Same with the tolerance taken relative to |reference|.
CheckRecord relative_check(std::string name, json inputs, double computed, double reference,
                           Provenance provenance, double rel_tol) {
    auto r = scalar_check(std::move(name), std::move(inputs), computed, reference, provenance,
                          rel_tol * std::abs(reference));
    r.tolerance = rel_tol;
    r.inputs["tolerance_kind"] = "relative";
    return r;
}

std::string field_json(const VectorField& v) { return v.str(); }

// ---------------------------------------------------------------------------

VectorField jacobi_sum(const VectorField& x, const VectorField& y, const VectorField& z) {
    return lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
           lie_bracket(z, lie_bracket(x, y));
}

}  // namespace

const char* to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::ClosedForm: return "closed-form";
        case Provenance::Trivial: return "trivial";
        case Provenance::IndependentOracle: return "independent-oracle";
    }
    return "unknown";
}

void ResultBundle::add(CheckRecord record) { checks.push_back(std::move(record)); }

bool ResultBundle::all_pass() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

void ResultBundle::finalize() {
    if (exit_code == ExitCode::Pass && !all_pass()) exit_code = ExitCode::CheckFailure;
}

json ResultBundle::to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks) {
        checks_json.push_back({{"name", c.name},
                               {"inputs", c.inputs},
                               {"computed", c.computed},
                               {"reference", c.reference},
                               {"provenance", to_string(c.provenance)},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    return {{"command", command},
            {"exit_code", static_cast<int>(exit_code)},
            {"pass", exit_code == ExitCode::Pass},
            {"checks", checks_json},
            {"notes", notes},
            {"data", data}};
}

std::string ResultBundle::to_text() const {
    std::ostringstream os;
    os << command << ": ";
    switch (exit_code) {
        case ExitCode::Pass: os << "PASS"; break;
        case ExitCode::CheckFailure: os << "FAIL"; break;
        case ExitCode::ConfigError: os << "CONFIG ERROR"; break;
        case ExitCode::NumericalHalt: os << "NUMERICAL HALT"; break;
    }
    os << " (" << checks.size() << " checks)\n";
    for (const auto& c : checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << ": computed " << c.computed.dump()
           << ", reference " << c.reference.dump() << ", tol " << num(c.tolerance) << " ("
           << to_string(c.provenance) << ")\n";
    }
    for (const auto& n : notes) os << "  note: " << n << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// lie-check

ResultBundle cmd_lie_check(const LieCheckConfig& config, const fs::path&) {
    ResultBundle bundle{"lie-check"};
    for (const auto& row : structure_constants_report()) {
        bundle.add({row.lhs, {{"bracket", row.lhs}}, field_json(row.computed),
                    row.expected + std::string(" = ") + field_json(row.reference), Provenance::ClosedForm, 0.0,
                    row.holds});
    }

    using namespace generators;
    const std::vector<std::pair<std::string, VectorField>> basis{
        {"T", time_translation()}, {"D", dilation()}, {"C", conformal()}, {"W", gauge()}};

    // Closure: every bracket of basis elements lies in their span.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto bracket = lie_bracket(basis[i].second, basis[j].second);
            const auto coords = decompose(bracket);
            json computed = nullptr;
            if (coords) {
                computed = json::array();
                for (const auto& c : *coords) computed.push_back(c.str());
            }
            bundle.add({"closure [" + basis[i].first + "," + basis[j].first + "]",
                        {{"bracket", field_json(bracket)}}, computed, "coordinates in span{T,D,C,W}",
                        Provenance::Trivial, 0.0, coords.has_value()});
        }
    }

    // Antisymmetry holds for any correctly implemented bracket.
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const auto sum = lie_bracket(basis[i].second, basis[j].second) +
                             lie_bracket(basis[j].second, basis[i].second);
            bundle.add({"antisymmetry " + basis[i].first + "," + basis[j].first, json::object(),
                        field_json(sum), "0", Provenance::Trivial, 0.0, sum.is_zero()});
        }
    }

    if (config.jacobi) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = i + 1; j < basis.size(); ++j) {
                for (std::size_t k = j + 1; k < basis.size(); ++k) {
                    const auto sum = jacobi_sum(basis[i].second, basis[j].second, basis[k].second);
                    bundle.add({"jacobi " + basis[i].first + "," + basis[j].first + "," + basis[k].first,
                                json::object(), field_json(sum), "0", Provenance::Trivial, 0.0,
                                sum.is_zero()});
                }
            }
        }
    }
    bundle.finalize();
    return bundle;
}

// ---------------------------------------------------------------------------
// verify-solution

ResultBundle cmd_verify_solution(const VerifySolutionConfig& config, const fs::path&) {
    ResultBundle bundle{"verify-solution"};
    const SolutionSpec spec = config.solution.build();
    EquationParameters params = spec.equation();
    if (config.h1) params.h1 = *config.h1;
    if (config.h2) params.h2 = *config.h2;
    const FieldFunction psi = spec.as_field();

    ConvergenceOptions options;
    options.dt_ratio = config.dt_ratio;
    const ResidualReport report = convergence_order(params, psi, config.probes, config.spacings, options);

    json probes = json::array();
    for (const auto& p : config.probes) probes.push_back({{"x", p.x}, {"t", p.t}});
    const json inputs{{"family", config.solution.family},
                      {"h1", params.h1},
                      {"h2", params.h2},
                      {"probes", probes},
                      {"spacings", config.spacings}};

    CheckRecord order{"residual convergence order", inputs,
                      report.saturated ? json("saturated") : json(report.estimated_order),
                      json::array({config.order_min, config.order_max}), Provenance::ClosedForm,
                      config.order_max - config.order_min, report.passes(config.order_min, config.order_max)};
    bundle.add(order);

    bundle.data["grid_spacings"] = report.grid_spacings;
    bundle.data["residual_norms"] = report.residual_norms;
    bundle.data["rounding_floors"] = report.rounding_floors;
    bundle.data["saturated"] = report.saturated;

    if (!order.pass) {
        // Report the residual that refuses to converge, split into its parts.
        const double h = config.spacings.back();
        json defect = json::array();
        for (const auto& p : config.probes) {
            const auto terms = residual_terms_at(params, psi, p.x, p.t, h, config.dt_ratio * h);
            defect.push_back({{"x", p.x},
                              {"t", p.t},
                              {"abs_residual", std::abs(terms.total())},
                              {"abs_linear_part", std::abs(terms.linear)},
                              {"abs_cubic_part", std::abs(terms.cubic)},
                              {"abs_psi", std::abs(psi(p.x, p.t))}});
        }
        bundle.data["limiting_defect"] = defect;
        std::ostringstream msg;
        msg << "residual at h = " << num(h) << " is " << num(report.residual_norms.back())
            << " and does not decay at second order; see data.limiting_defect";
        bundle.notes.push_back(msg.str());
    }
    bundle.finalize();
    return bundle;
}

// ---------------------------------------------------------------------------
// blowup-scan

ResultBundle cmd_blowup_scan(const BlowupScanConfig& config, const fs::path& out) {
    ResultBundle bundle{"blowup-scan"};
    const auto settings = config.quadrature.settings();
    const double a = config.amplitude, c = config.offset_c;

    std::ostringstream csv;
    csv << "eps,p,lp_norm,linf_norm,argmax,slope_partial\n";

    std::vector<LinfResult> linf;
    for (double eps : config.eps) linf.push_back(linf_norm(a, c, eps));

    json fits = json::array();
    for (double p : config.p) {
        const RateFit fit = lp_blowup_fit(a, c, p, config.eps, settings);
        for (std::size_t k = 0; k < config.eps.size(); ++k) {
            csv << num(config.eps[k]) << ',' << num(p) << ',' << num(fit.values[k]) << ','
                << num(linf[k].max_value) << ',' << num(linf[k].argmax) << ',';
            if (k > 0) {
                csv << num(std::log(fit.values[k] / fit.values[k - 1]) /
                           std::log(config.eps[k] / config.eps[k - 1]));
            }
            csv << '\n';
        }
        const double expected = -(p - 2.0) / (2.0 * p);
        bundle.add(relative_check("L_p slope p=" + num(p), {{"p", p}, {"eps", config.eps}}, fit.fitted_slope,
                                  expected, Provenance::ClosedForm, config.slope_rel_tol));
        fits.push_back({{"p", p}, {"slope", fit.fitted_slope}, {"fit_residual", fit.fit_residual}});
    }
    bundle.data["lp_fits"] = fits;

    std::vector<double> maxima;
    for (const auto& l : linf) maxima.push_back(l.max_value);
    const RateFit linf_fit = fit_power_law(config.eps, maxima);
    bundle.add(scalar_check("L_inf slope", {{"eps", config.eps}}, linf_fit.fitted_slope, -0.5,
                            Provenance::ClosedForm, config.linf_slope_tol));

    const double argmax_ref = std::pow(c, 1.5) / std::sqrt(27.0);
    const double peak_ref = 0.75 * a * std::pow(3.0, -0.25) * std::pow(c, -0.75);
    for (std::size_t k = 0; k < config.eps.size(); ++k) {
        const double eps = config.eps[k];
        bundle.add(scalar_check("argmax/eps at eps=" + num(eps), {{"eps", eps}, {"C", c}},
                                linf[k].argmax / eps, argmax_ref, Provenance::IndependentOracle,
                                config.argmax_tol));
        bundle.add(relative_check("sqrt(eps) L_inf at eps=" + num(eps), {{"eps", eps}, {"A", a}, {"C", c}},
                                  linf[k].max_value * std::sqrt(eps), peak_ref, Provenance::IndependentOracle,
                                  1e-9));
    }

    write_file(out / "blowup_scan.csv", csv.str());
    bundle.finalize();
    return bundle;
}

// ---------------------------------------------------------------------------
// distribution-test

ResultBundle cmd_distribution_test(const DistributionConfig& config, const fs::path& out) {
    ResultBundle bundle{"distribution-test"};
    const auto settings = config.quadrature.settings();
    const double k_const = delta_constant_K(config.amplitude, config.offset_c, config.p, settings);
    bundle.data["K"] = k_const;

    std::ostringstream csv;
    csv << "bump,center,radius,eps,pairing,target,deviation\n";

    for (std::size_t b = 0; b < config.bumps.size(); ++b) {
        const auto& bc = config.bumps[b];
        const BumpFunction phi = bc.bump();
        const double target = k_const * phi(0.0);
        const json inputs{{"bump", b}, {"center", bc.center}, {"radius", bc.radius}, {"peak", bc.peak},
                          {"p", config.p}, {"eps", config.eps}};
        const std::string label = "bump " + std::to_string(b);

        std::vector<double> values, deviations;
        for (double eps : config.eps) {
            const double v = pairing(config.p, eps, config.amplitude, config.offset_c, phi, settings);
            values.push_back(v);
            deviations.push_back(std::abs(v - target));
            csv << b << ',' << num(bc.center) << ',' << num(bc.radius) << ',' << num(eps) << ',' << num(v)
                << ',' << num(target) << ',' << num(deviations.back()) << '\n';
        }

        if (bc.peak == 0.0) {
            const bool all_zero =
                std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
            bundle.add({label + " zero test function", inputs, values, 0.0, Provenance::Trivial, 0.0, all_zero});
            continue;
        }

        // Deviations must shrink along the ladder; allow quadrature-level noise.
        bool monotone = true;
        const double noise = 10.0 * config.quadrature.rel_tol * std::max(std::abs(target), std::abs(values[0]));
        for (std::size_t k = 1; k < deviations.size(); ++k) {
            if (deviations[k] > deviations[k - 1] + noise) monotone = false;
        }
        bundle.add({label + " deviation decreases", inputs, deviations, "non-increasing", Provenance::ClosedForm, noise,
                    monotone});

        if (target != 0.0) {
            bundle.add(relative_check(label + " limit K phi(0)", inputs, values.back(), target, Provenance::ClosedForm,
                                      config.final_rel_tol));
        } else {
            const double ratio = std::abs(values.back()) / std::abs(values.front());
            bundle.add({label + " decay ratio (phi(0) = 0)", inputs, ratio, config.decay_ratio,
                        Provenance::ClosedForm, config.decay_ratio, ratio <= config.decay_ratio});
        }
    }

    write_file(out / "distribution.csv", csv.str());
    bundle.finalize();
    return bundle;
}

// ---------------------------------------------------------------------------
// simulate

std::string snapshot_filename(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_t%.6f.csv", t);
    return buf;
}

ResultBundle cmd_simulate(const SimulateConfig& config, const fs::path& out) {
    ResultBundle bundle{"simulate"};
    const SolutionSpec spec = config.solution.build();
    const FieldFunction exact = spec.as_field();

    SimulationConfig sim;
    sim.coefficients = PdeCoefficients::from(spec.equation());
    sim.grid = SpatialGrid::with_spacing(config.x_min, config.x_max, config.spacing);
    sim.dt = config.dt;
    sim.t_final = config.resolved_t_final();
    sim.boundary = exact;
    sim.norm_track = config.norm_track;
    sim.record_every = config.record_every;
    sim.snapshot_times = config.snapshot_times;

    const auto started = std::chrono::steady_clock::now();
    const Trajectory traj = run(sim, exact, exact);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    for (const auto& snap : traj.snapshots) {
        std::ostringstream csv;
        csv << "x,re,im,abs\n";
        for (std::size_t i = 0; i < snap.size(); ++i) {
            csv << num(snap.grid().node(i)) << ',' << num(snap[i].real()) << ',' << num(snap[i].imag()) << ','
                << num(std::abs(snap[i])) << '\n';
        }
        write_file(out / snapshot_filename(snap.time()), csv.str());
    }

    std::ostringstream norms;
    norms << "t,p,norm,exact_norm,rel_err\n";
    for (const auto& s : traj.norm_series) {
        norms << num(s.t) << ',' << num(s.p) << ',' << num(s.norm) << ',' << num(s.exact_norm) << ','
              << num(s.rel_err) << '\n';
    }
    write_file(out / "norm_series.csv", norms.str());

    json errors = json::array();
    for (const auto& e : traj.exact_error_series) errors.push_back({{"t", e.t}, {"rel_l2_error", e.rel_l2_error}});
    bundle.data["error_series"] = errors;
    bundle.data["t_final"] = sim.t_final;
    bundle.data["singular_time"] = config.solution.singular_time();
    bundle.data["steps"] = sim.steps();
    bundle.data["wall_seconds"] = seconds;
    for (const auto& w : traj.warnings) bundle.notes.push_back(w);

    const json inputs{{"x_min", config.x_min}, {"x_max", config.x_max}, {"spacing", config.spacing},
                      {"dt", config.dt},       {"t_final", sim.t_final}};

    if (traj.halt) {
        json last = json::array();
        for (const auto& s : traj.halt->last_norms) last.push_back({{"t", s.t}, {"p", s.p}, {"norm", s.norm}});
        bundle.data["halt"] = {{"time", traj.halt->time}, {"diagnostic", traj.halt->diagnostic}, {"last_norms", last}};
        bundle.notes.push_back("numerical halt at t = " + num(traj.halt->time) + ": " + traj.halt->diagnostic);
        bundle.exit_code = ExitCode::NumericalHalt;
        return bundle;
    }

    bundle.add({"relative L2 error at t_final", inputs, traj.final_error(), config.error_tol, Provenance::ClosedForm,
                config.error_tol, traj.final_error() <= config.error_tol});
    double worst = 0.0;
    for (const auto& s : traj.norm_series) worst = std::max(worst, s.rel_err);
    bundle.add({"tracked norms vs exact", inputs, worst, config.norm_rel_tol, Provenance::ClosedForm,
                config.norm_rel_tol, worst <= config.norm_rel_tol});
    bundle.finalize();
    return bundle;
}

// ---------------------------------------------------------------------------

ResultBundle dispatch(const std::string& subcommand, const ExperimentConfig& config, const fs::path& out) {
    fs::create_directories(out);
    write_file(out / "config.json", to_json(config).dump(2) + "\n");

    ResultBundle bundle{subcommand};
    try {
        if (subcommand == "lie-check") {
            bundle = cmd_lie_check(config.lie_check, out);
        } else if (subcommand == "verify-solution") {
            bundle = cmd_verify_solution(config.verify_solution, out);
        } else if (subcommand == "blowup-scan") {
            bundle = cmd_blowup_scan(config.blowup_scan, out);
        } else if (subcommand == "distribution-test") {
            bundle = cmd_distribution_test(config.distribution_test, out);
        } else if (subcommand == "simulate") {
            bundle = cmd_simulate(config.simulate, out);
        } else {
            throw ConfigError("unknown subcommand '" + subcommand + "'");
        }
    } catch (const NumericalHalt& e) {
        bundle.exit_code = ExitCode::NumericalHalt;
        bundle.notes.push_back(e.what());
    } catch (const quadrature::QuadratureError& e) {
        bundle.exit_code = ExitCode::NumericalHalt;
        bundle.notes.push_back(e.what());
    } catch (const std::invalid_argument& e) {
        bundle.exit_code = ExitCode::ConfigError;
        bundle.notes.push_back(e.what());
    } catch (const std::domain_error& e) {
        bundle.exit_code = ExitCode::ConfigError;
        bundle.notes.push_back(e.what());
    } catch (const ConfigError& e) {
        bundle.exit_code = ExitCode::ConfigError;
        bundle.notes.push_back(e.what());
    }

    write_file(out / "results.json", bundle.to_json().dump(2) + "\n");
    write_file(out / "results.txt", bundle.to_text());
    return bundle;
}

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Checks and simulations for a cubic Schroedinger equation with x-dependent coefficients"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    const char* names[] = {"lie-check", "verify-solution", "blowup-scan", "distribution-test", "simulate"};
    const char* help[] = {
        "check the symmetry algebra brackets",
        "residual convergence test for a closed-form solution",
        "L_p and L_inf blow-up rates of the concentrating family",
        "convergence of the rescaled density to a multiple of the delta distribution",
        "split-step integration compared with a closed-form solution",
    };
    for (std::size_t i = 0; i < std::size(names); ++i) {
        auto* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->required();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::ConfigError);
    }

    const std::string subcommand = app.get_subcommands().front()->get_name();
    ExperimentConfig config;
    try {
        config = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ConfigError);
    }

    try {
        const ResultBundle bundle = dispatch(subcommand, config, out_dir);
        std::cout << bundle.to_text();
        return static_cast<int>(bundle.exit_code);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::ConfigError);
    }
}

}  // namespace vcnls::cli
