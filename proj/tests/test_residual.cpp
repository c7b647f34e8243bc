// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vcnls/residual.hpp"
#include "vcnls/solutions.hpp"
#include "vcnls/symmetry.hpp"

namespace vcnls {
namespace {

const std::vector<ProbePoint> kProbes{{0.5, 0.1}, {1.0, 0.1}, {2.0, 0.1}, {4.0, 0.1}};
const std::vector<double> kSpacings{0.04, 0.02, 0.01, 0.005};

TEST(ResidualTest, ZeroFieldSaturates) {
    const auto params = make_parameters(1, 1.0, 5.0 / 36.0, 0.0);
    const FieldFunction zero = [](double, double) { return Complex{}; };
    EXPECT_EQ(residual_at(params, zero, 1.0, 0.0, 0.01, 0.01), Complex{});
    const auto report = convergence_order(params, zero, kProbes, kSpacings);
    EXPECT_TRUE(report.saturated);
    EXPECT_TRUE(std::isnan(report.estimated_order));
    EXPECT_TRUE(report.passes());
}

TEST(ResidualTest, StationarySolutionConvergesAtSecondOrder) {
    for (int eps : {1, -1}) {
        const auto spec = SolutionSpec::stationary(truncation_constants(Sign(eps), 1.0), 1.0, 1.0, 0.0);
        const auto report = convergence_order(spec.equation(), spec.as_field(), kProbes, kSpacings);
        EXPECT_FALSE(report.saturated);
        EXPECT_NEAR(report.estimated_order, 2.0, 0.2);
        EXPECT_TRUE(report.passes(1.8, 2.2));
    }
}

TEST(ResidualTest, TruncatedSolutionConvergesAtSecondOrder) {
    const auto spec = SolutionSpec::truncated(truncation_constants(Sign::Minus, 0.5), 1.0, 2.0, 0.3, -1.0);
    const auto report = convergence_order(spec.equation(), spec.as_field(), kProbes, kSpacings);
    EXPECT_TRUE(report.passes(1.8, 2.2)) << report.estimated_order;
}

TEST(ResidualTest, TransformedSolutionsRemainSolutions) {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> pos(0.6, 1.6), u(-0.3, 0.3);
    const auto base = SolutionSpec::truncated(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0, 0.5);
    for (int k = 0; k < 10; ++k) {
        const auto g = GroupElement::from_abc(pos(rng), u(rng), u(rng), u(rng));
        const auto spec = SolutionSpec::transformed(g, base);
        const auto report = convergence_order(spec.equation(), spec.as_field(), kProbes, kSpacings);
        EXPECT_TRUE(report.passes(1.8, 2.2)) << "k = " << k << " order " << report.estimated_order;
    }
}

TEST(ResidualTest, MissingPotentialLeavesExactDefect) {
    const auto spec = SolutionSpec::stationary(truncation_constants(Sign::Plus, 1.0), 1.0, 1.0, 0.0);
    auto params = spec.equation();
    params.h1 = 0.0;
    const auto psi = spec.as_field();
    for (double xv : {0.5, 1.0, 3.0}) {
        const double r = std::abs(residual_at(params, psi, xv, 0.0, 1e-3, 1e-3));
        const double expected = 5.0 / 36.0 * std::abs(psi(xv, 0.0)) / (xv * xv);
        EXPECT_NEAR(r, expected, 1e-4 * expected);
    }
    const auto report = convergence_order(params, psi, kProbes, kSpacings);
    EXPECT_FALSE(report.passes(1.8, 2.2));
}

TEST(ResidualTest, LinearAndCubicPartsScale) {
    const auto params = make_parameters(1, 0.8, 0.3, -0.2);
    const FieldFunction psi = [](double xv, double tv) {
        return std::polar(std::exp(-xv) * (1.0 + tv), xv * xv + tv);
    };
    const FieldFunction twice = [&](double xv, double tv) { return 2.0 * psi(xv, tv); };
    const auto a = residual_terms_at(params, psi, 1.2, 0.3, 0.01, 0.01);
    const auto b = residual_terms_at(params, twice, 1.2, 0.3, 0.01, 0.01);
    EXPECT_LT(std::abs(b.linear - 2.0 * a.linear), 1e-10 * std::abs(a.linear));
    EXPECT_LT(std::abs(b.cubic - 8.0 * a.cubic), 1e-12 * std::abs(a.cubic));
}

TEST(ResidualTest, GaugeInvariant) {
    const auto spec = SolutionSpec::truncated(truncation_constants(Sign::Plus, 2.0), 1.0, 1.0, 0.0, -0.5);
    const FieldFunction psi = spec.as_field();
    const FieldFunction rotated = [&](double xv, double tv) { return std::polar(1.0, 1.1) * psi(xv, tv); };
    // Drop the potential so the residual is O(1) rather than round-off.
    auto off = spec.equation();
    off.h1 = 0.0;
    const double r1 = std::abs(residual_at(off, psi, 1.5, 0.2, 0.01, 0.01));
    const double r2 = std::abs(residual_at(off, rotated, 1.5, 0.2, 0.01, 0.01));
    EXPECT_NEAR(r1, r2, 1e-10 * r1);
}

TEST(ResidualTest, StencilMustStayInDomain) {
    const auto params = make_parameters(1, 1.0, 0.0, 0.0);
    const FieldFunction psi = [](double, double) { return Complex(1.0); };
    EXPECT_THROW(residual_at(params, psi, 0.01, 0.0, 0.01, 0.01), DomainError);
    EXPECT_THROW(residual_at(params, psi, 1.0, 0.0, 0.0, 0.01), std::invalid_argument);
    const std::vector<double> bad{0.01, 0.02};
    EXPECT_THROW(convergence_order(params, psi, kProbes, bad), std::invalid_argument);
}

TEST(LogLogSlopeTest, ExactPowerLaw) {
    const std::vector<double> h{0.1, 0.05, 0.025};
    const std::vector<double> y{3e-2, 7.5e-3, 1.875e-3};
    EXPECT_NEAR(log_log_slope(h, y), 2.0, 1e-12);
}

}  // namespace
}  // namespace vcnls
