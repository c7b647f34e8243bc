// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include <cmath>

#include "vcnls/simulate.hpp"
#include "vcnls/solutions.hpp"

namespace vcnls {
namespace {

Complex gaussian(double x, double) { return std::polar(std::exp(-4.0 * (x - 5.0) * (x - 5.0)), 2.0 * x); }

SimulationConfig small_config(PdeCoefficients coeffs, double t_final) {
    SimulationConfig c;
    c.coefficients = coeffs;
    c.grid = SpatialGrid::with_spacing(0.5, 4.0, 0.01);
    c.dt = 1e-4;
    c.t_final = t_final;
    c.record_every = 50;
    return c;
}

// Classical RK4 on i psi' = -(c |psi|^2 / x + q / x^2) psi.
Complex rk4_local(Complex psi, double x, double tau, const PdeCoefficients& k, int n) {
    const Complex i{0.0, 1.0};
    const auto f = [&](Complex v) { return i * (k.cubic * std::norm(v) / x + k.potential / (x * x)) * v; };
    const double h = tau / n;
    for (int s = 0; s < n; ++s) {
        const Complex k1 = f(psi), k2 = f(psi + 0.5 * h * k1), k3 = f(psi + 0.5 * h * k2), k4 = f(psi + h * k3);
        psi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

TEST(LocalFlowTest, MatchesRungeKutta) {
    const PdeCoefficients k{{1.0, 0.7}, {5.0 / 36.0, 0.2}};
    const SplitStepSolver solver(small_config(k, 0.0));
    for (double x : {0.3, 1.0, 3.0}) {
        const Complex psi0{0.8, -0.5};
        const Complex exact = solver.local_flow(psi0, x, 0.05);
        EXPECT_LT(std::abs(exact - rk4_local(psi0, x, 0.05, k, 2000)), 1e-12);
    }
}

TEST(LocalFlowTest, ReversibleAndNormPreservingWhenReal) {
    const PdeCoefficients dissipative{{-1.0, 0.4}, {0.1, 0.3}};
    const SplitStepSolver a(small_config(dissipative, 0.0));
    const Complex psi{0.3, 1.2};
    EXPECT_LT(std::abs(a.local_flow(a.local_flow(psi, 0.7, 0.01), 0.7, -0.01) - psi), 1e-14);

    const PdeCoefficients conservative{{1.0, 0.0}, {5.0 / 36.0, 0.0}};
    const SplitStepSolver b(small_config(conservative, 0.0));
    EXPECT_NEAR(std::abs(b.local_flow(psi, 0.7, 0.5)), std::abs(psi), 1e-15);
}

TEST(SimulateTest, ZeroFieldStaysZero) {
    const PdeCoefficients k{{1.0, 1.0}, {5.0 / 36.0, 0.0}};
    const auto traj = run(small_config(k, 0.01), [](double, double) { return Complex{}; });
    ASSERT_FALSE(traj.halt);
    for (const auto& v : traj.final_state().values()) EXPECT_EQ(v, Complex{});
}

TEST(SimulateTest, FreeMassConservedPerStep) {
    auto config = small_config(PdeCoefficients::free(), 0.0);
    config.grid = SpatialGrid::with_spacing(1.0, 9.0, 0.01);
    const SplitStepSolver solver(config);
    auto state = ComplexField::sample(config.grid, gaussian, 0.0);
    double mass = state.integrate_power(2.0);
    for (int k = 0; k < 200; ++k) {
        state = solver.step(state);
        const double next = state.integrate_power(2.0);
        EXPECT_LT(std::abs(next - mass) / mass, 1e-10) << "step " << k;
        mass = next;
    }
}

TEST(SimulateTest, TracksTruncatedSolutionWithSecondOrderError) {
    const auto spec = SolutionSpec::truncated(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0, -1.0);
    const FieldFunction exact = spec.as_field();
    auto run_at = [&](double h, double dt) {
        auto c = small_config(PdeCoefficients::from(spec.equation()), 0.1);
        c.grid = SpatialGrid::with_spacing(0.5, 4.0, h);
        c.dt = dt;
        c.boundary = exact;
        const auto traj = run(c, exact, exact);
        EXPECT_FALSE(traj.halt);
        return traj.final_error();
    };
    const double coarse = run_at(0.02, 4e-4);
    const double fine = run_at(0.01, 2e-4);
    EXPECT_LT(fine, 1e-4);
    EXPECT_NEAR(coarse / fine, 4.0, 1.0);
}

TEST(SimulateTest, RecordsNormsAgainstReference) {
    const auto spec = SolutionSpec::stationary(truncation_constants(Sign::Minus, 1.0), 1.0, 1.0, 0.0);
    const FieldFunction exact = spec.as_field();
    auto c = small_config(PdeCoefficients::from(spec.equation()), 0.02);
    c.boundary = exact;
    c.norm_track = {2.0, 4.0};
    c.snapshot_times = {0.0, 0.01};
    const auto traj = run(c, exact, exact);
    ASSERT_EQ(traj.snapshots.size(), 3u);
    EXPECT_NEAR(traj.snapshots[1].time(), 0.01, 1e-12);
    EXPECT_NEAR(traj.final_state().time(), 0.02, 1e-12);
    // 200 steps recorded every 50: t = 0, 50, 100, 150, 200, two exponents each.
    EXPECT_EQ(traj.norm_series.size(), 10u);
    for (const auto& s : traj.norm_series) EXPECT_LT(s.rel_err, 1e-4);
}

TEST(SimulateTest, ZeroFinalTimeReturnsInitialState) {
    const auto traj = run(small_config(PdeCoefficients::free(), 0.0), gaussian);
    ASSERT_EQ(traj.snapshots.size(), 1u);
    EXPECT_EQ(traj.final_state().time(), 0.0);
    EXPECT_EQ(traj.final_state()[10], gaussian(traj.final_state().grid().node(10), 0.0));
    EXPECT_TRUE(std::isnan(traj.final_error()));
}

TEST(SimulateTest, FiniteTimeBlowupHalts) {
    // gamma < 0 drives |psi|^2 to infinity in finite time in the local flow.
    const PdeCoefficients k{{1.0, -1.0}, {0.0, 0.0}};
    auto c = small_config(k, 0.01);
    const auto traj = run(c, [](double x, double) { return Complex(x < 1.0 ? 1e3 : 0.0); });
    ASSERT_TRUE(traj.halt.has_value());
    EXPECT_GT(traj.halt->time, 0.0);
    EXPECT_FALSE(traj.halt->diagnostic.empty());
    EXPECT_EQ(traj.halt->last_norms.size(), c.norm_track.size());
}

TEST(SimulationConfigTest, Validation) {
    auto c = small_config(PdeCoefficients::free(), 0.1);
    c.dt = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config(PdeCoefficients::free(), 0.1);
    c.record_every = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config(PdeCoefficients::free(), 0.1);
    c.snapshot_times = {0.2};
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config(PdeCoefficients::free(), 0.1);
    EXPECT_EQ(c.steps(), 1000u);
}

TEST(SimulateTest, WarnsWhenLocalRateIsLarge) {
    const PdeCoefficients k{{1.0, 0.0}, {5.0 / 36.0, 0.0}};
    auto c = small_config(k, 1e-3);
    c.dt = 1e-3;
    const auto traj = run(c, [](double, double) { return Complex(30.0); });
    EXPECT_FALSE(traj.warnings.empty());
}

}  // namespace
}  // namespace vcnls
