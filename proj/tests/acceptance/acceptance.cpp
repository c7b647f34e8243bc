// SPDX-License-Identifier: MIT
//
// Acceptance gate: one PASS/FAIL line per criterion, each with its measured
// quantities and wall time. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vcnls/analysis.hpp"
#include "vcnls/residual.hpp"
#include "vcnls/simulate.hpp"
#include "vcnls/solutions.hpp"
#include "vcnls/symmetry.hpp"

using namespace vcnls;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED(" << what << ")";
        }
    }
};

const std::vector<ProbePoint> kProbes{{0.5, 0.1}, {1.0, 0.1}, {2.0, 0.3}, {4.0, 0.3}};
const std::vector<double> kLadder{0.04, 0.02, 0.01, 0.005};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void lie_structure(Outcome& out) {
    int holds = 0;
    for (const auto& row : structure_constants_report()) {
        out.require(row.holds, row.lhs);
        holds += row.holds;
    }
    using namespace generators;
    const std::vector<VectorField> basis{time_translation(), dilation(), conformal(), gauge()};
    int jacobi = 0;
    for (const auto& a : basis) {
        for (const auto& b : basis) {
            for (const auto& c : basis) {
                const auto sum = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                                 lie_bracket(c, lie_bracket(a, b));
                out.require(sum.is_zero(), "jacobi");
                jacobi += sum.is_zero();
            }
        }
    }
    out.detail << "commutators " << holds << "/6 exact, jacobi " << jacobi << "/64 exact";
}

void exact_solutions(Outcome& out) {
    const auto constants = truncation_constants(Sign::Plus, 1.0);
    const auto stationary = SolutionSpec::stationary(constants, 1.0, 1.0, 0.0);
    const auto truncated = SolutionSpec::truncated(constants, 1.0, 1.0, 0.0, -1.0);

    const auto stat = convergence_order(stationary.equation(), stationary.as_field(), kProbes, kLadder);
    const auto td = convergence_order(truncated.equation(), truncated.as_field(), kProbes, kLadder);
    auto control_params = stationary.equation();
    control_params.h1 = 0.0;
    const auto control = convergence_order(control_params, stationary.as_field(), kProbes, kLadder);

    out.require(!stat.saturated && stat.passes(1.8, 2.2), "stationary order");
    out.require(!td.saturated && td.passes(1.8, 2.2), "time-dependent order");
    out.require(!control.passes(1.8, 2.2), "h1=0 control converged");
    out.detail << "order stationary " << stat.estimated_order << ", time-dependent " << td.estimated_order
               << ", h1=0 control " << control.estimated_order << " (residual "
               << control.residual_norms.back() << ")";
}

void symmetry_action(Outcome& out) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> a_dist(0.5, 2.0), b_dist(-0.5, 0.5), c_dist(-1.0, 1.0);
    const auto base = SolutionSpec::stationary(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0);
    double lo = INFINITY, hi = -INFINITY;
    int passed = 0;
    for (int k = 0; k < 20; ++k) {
        // a >= 0.5 and |b| <= 0.5 keep a + b t >= 0.3 on the probe window t <= 0.4.
        const auto g = GroupElement::from_abc(a_dist(rng), b_dist(rng), c_dist(rng), c_dist(rng));
        const auto spec = SolutionSpec::transformed(g, base);
        const auto report = convergence_order(spec.equation(), spec.as_field(), kProbes, kLadder);
        const bool ok = report.passes(1.8, 2.2);
        passed += ok;
        out.require(ok, "element " + std::to_string(k));
        if (!report.saturated) {
            lo = std::min(lo, report.estimated_order);
            hi = std::max(hi, report.estimated_order);
        }
    }
    out.detail << passed << "/20 transformed solutions pass, orders in [" << lo << ", " << hi << "]";
}

void lp_rate(Outcome& out) {
    const std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3};
    double worst_slope = 0.0, worst_const = 0.0, worst_oracle = 0.0;
    for (double p : {3.0, 4.0, 6.0}) {
        const auto fit = lp_blowup_fit(1.0, 1.0, p, eps);
        const double expected = -(p - 2.0) / (2.0 * p);
        worst_slope = std::max(worst_slope, rel(fit.fitted_slope, expected));
        const double base = lp_norm_pth_power(1.0, 1.0, p, eps.front());
        for (double e : eps) {
            worst_const = std::max(worst_const, rel(lp_norm_pth_power(1.0, 1.0, p, e) * std::pow(e, (p - 2.0) / 2.0), base));
        }
        worst_oracle = std::max(worst_oracle, rel(profile_integral(1.0, p), oracle::profile_integral(1.0, p)));
    }
    const double k4 = delta_constant_K(1.0, 1.0, 4.0);
    out.require(worst_slope <= 0.01, "slope");
    out.require(worst_const <= 1e-6, "scaling constant");
    out.require(worst_oracle <= 1e-8, "beta oracle");
    out.require(rel(k4, 3.0 * std::numbers::pi / 16.0) <= 1e-8, "3pi/16");
    out.detail << "max slope rel err " << worst_slope << ", scaling constancy " << worst_const
               << ", Beta oracle rel err " << worst_oracle << ", K(p=4) = " << k4;
}

void linf_rate(Outcome& out) {
    const std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3, 1e-4};
    double worst_argmax = 0.0, worst_const = 0.0;
    const double base = linf_norm(1.0, 1.0, 1.0).max_value;
    for (double e : eps) {
        const auto r = linf_norm(1.0, 1.0, e);
        worst_argmax = std::max(worst_argmax, std::abs(r.argmax / e - 1.0 / std::sqrt(27.0)));
        worst_const = std::max(worst_const, rel(r.max_value * std::sqrt(e), base));
    }
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    double worst_general = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double a = u(rng), c = u(rng), e = std::pow(10.0, -4.0 * k / 19.0);
        worst_general = std::max(worst_general, rel(linf_norm(a, c, e).argmax, oracle::linf_argmax(c, e)));
    }
    out.require(worst_argmax <= 1e-6, "argmax/eps");
    out.require(worst_const <= 1e-8, "sqrt(eps) L_inf constancy");
    out.require(worst_general <= 1e-6, "general maximiser");
    out.detail << "|argmax/eps - 1/sqrt27| " << worst_argmax << ", constancy " << worst_const
               << ", random (A,C) maximiser rel err " << worst_general;
}

void delta_limit(Outcome& out) {
    const double p = 4.0;
    const double k = 2.0 * oracle::profile_integral(1.0, p);  // A = 1
    const auto origin = BumpFunction::unit_peak(0.0, 1.0);
    const double dev = rel(pairing(p, 1e-3, 1.0, 1.0, origin), k * origin(0.0));

    const auto off = BumpFunction::unit_peak(1.5, 0.5);
    const std::vector<double> ladder{1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    std::vector<double> values;
    for (double e : ladder) values.push_back(pairing(p, e, 1.0, 1.0, off));
    bool monotone = true;
    for (std::size_t i = 1; i < values.size(); ++i) monotone = monotone && values[i] < values[i - 1];
    const double ratio = values.back() / values.front();

    out.require(dev <= 0.01, "origin deviation");
    out.require(monotone, "off-origin monotone");
    out.require(ratio < 1e-4, "off-origin decay");
    out.detail << "origin rel deviation at eps=1e-3 " << dev << ", off-origin ratio at eps=1e-6 " << ratio
               << (monotone ? " (monotone)" : " (not monotone)");
}

double simulate_error(const SolutionSpec& spec, double spacing, double dt, double t_final) {
    SimulationConfig c;
    c.coefficients = PdeCoefficients::from(spec.equation());
    c.grid = SpatialGrid::with_spacing(0.05, 10.0, spacing);
    c.dt = dt;
    c.t_final = t_final;
    c.boundary = spec.as_field();
    c.norm_track = {};
    c.record_every = 1000000;
    const auto traj = run(c, spec.as_field(), spec.as_field());
    if (traj.halt) return NAN;
    return traj.final_error();
}

void simulator(Outcome& out) {
    // k1 = 1, k4 = -1: singular time T = 1.
    const auto spec = SolutionSpec::truncated(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0, -1.0);
    const double t_final = 0.5;
    const double fine = simulate_error(spec, 1e-3, 1e-5, t_final);
    const double coarse = simulate_error(spec, 2e-3, 2e-5, t_final);
    const double factor = coarse / fine;

    SimulationConfig free;
    free.coefficients = PdeCoefficients::free();
    free.grid = SpatialGrid::with_spacing(0.05, 10.0, 1e-3);
    free.dt = 1e-5;
    const SplitStepSolver solver(free);
    auto state = ComplexField::sample(
        free.grid, [](double x, double) { return std::polar(std::exp(-2.0 * (x - 5.0) * (x - 5.0)), 3.0 * x); }, 0.0);
    double mass = state.integrate_power(2.0), worst_drift = 0.0;
    for (int k = 0; k < 100; ++k) {
        state = solver.step(state);
        const double next = state.integrate_power(2.0);
        worst_drift = std::max(worst_drift, std::abs(next - mass) / mass);
        mass = next;
    }

    out.require(fine <= 1e-3, "L2 error");
    out.require(std::abs(factor - 4.0) <= 1.0, "convergence factor");
    out.require(worst_drift <= 1e-10, "free mass");
    out.detail << "rel L2 error at 0.5T " << fine << ", halving factor " << factor << ", free mass drift/step "
               << worst_drift;
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Lie structure", 1.0, lie_structure},
        {2, "exact-solution residual order", 10.0, exact_solutions},
        {3, "symmetry action preserves solutions", 30.0, symmetry_action},
        {4, "L_p blow-up rate", 30.0, lp_rate},
        {5, "L_inf rate and maximiser", 5.0, linf_rate},
        {6, "delta limit", 30.0, delta_limit},
        {7, "simulator validation", 300.0, simulator},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.require(secs < c.budget_seconds, "runtime budget");
        failures += !out.pass;
        std::printf("[%s] criterion %d: %s: %s (%.3f s, budget %.0f s)\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                    out.detail.str().c_str(), secs, c.budget_seconds);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
