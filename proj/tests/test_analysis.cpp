// SPDX-License-Identifier: MIT

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "vcnls/analysis.hpp"
#include "vcnls/symmetry.hpp"

namespace vcnls {
namespace {

TEST(ProfileIntegralTest, ClosedFormValues) {
    // Half-line values; the full-line K = 2 I gives 3 pi / 16 and 1/10.
    EXPECT_NEAR(profile_integral(1.0, 4.0), 3.0 * std::numbers::pi / 32.0, 1e-10);
    EXPECT_NEAR(profile_integral(1.0, 6.0), 0.05, 1e-10);
}

TEST(ProfileIntegralTest, MatchesBetaOracle) {
    for (double c : {0.3, 1.0, 2.5}) {
        for (double p : {2.5, 3.0, 4.0, 6.0, 10.0}) {
            const double ref = oracle::profile_integral(c, p);
            EXPECT_NEAR(profile_integral(c, p), ref, 1e-8 * ref) << "C=" << c << " p=" << p;
        }
    }
}

TEST(ProfileIntegralTest, CompactifiedRuleAgrees) {
    for (double c : {0.5, 1.0, 2.0}) {
        for (double p : {3.0, 4.0, 6.0}) {
            const double adaptive = profile_integral(c, p);
            EXPECT_NEAR(profile_integral_compactified(c, p), adaptive, 1e-8 * adaptive);
        }
    }
}

TEST(ProfileIntegralTest, DivergentForPAtMostTwo) {
    EXPECT_THROW(profile_integral(1.0, 2.0), DivergentIntegral);
    EXPECT_THROW(profile_integral(1.0, 1.5), DivergentIntegral);
    EXPECT_THROW(lp_norm(1.0, 1.0, 2.0, 0.1), DivergentIntegral);
    EXPECT_THROW(delta_constant_K(1.0, 1.0, 2.0), DivergentIntegral);
}

TEST(QuadratureSettingsTest, TailCutoffHonoursBound) {
    const QuadratureSettings s;
    for (double p : {2.5, 3.0, 4.0, 6.0}) {
        EXPECT_LE(QuadratureSettings::tail_bound(p, s.tail_cutoff(p)), s.abs_tol * (1.0 + 1e-12));
    }
    QuadratureSettings tight;
    tight.tail_cutoff_y = 10.0;
    EXPECT_THROW(tight.tail_cutoff(3.0), std::invalid_argument);
    QuadratureSettings bad;
    bad.abs_tol = 0.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(LpNormTest, ScalingLawIsExact) {
    for (double p : {3.0, 4.0, 6.0}) {
        const double base = lp_norm_pth_power(1.3, 0.7, p, 1.0);
        for (double eps : {0.1, 1e-3, 1e-6}) {
            const double scaled = lp_norm_pth_power(1.3, 0.7, p, eps) * std::pow(eps, (p - 2.0) / 2.0);
            EXPECT_NEAR(scaled, base, 1e-12 * base);
            const double ref = oracle::lp_pth_power(1.3, 0.7, p, eps);
            EXPECT_NEAR(lp_norm_pth_power(1.3, 0.7, p, eps), ref, 1e-8 * ref);
        }
    }
}

TEST(LpNormTest, BlowupSlopes) {
    const std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3};
    for (double p : {3.0, 4.0, 6.0}) {
        const auto fit = lp_blowup_fit(1.0, 1.0, p, eps);
        EXPECT_NEAR(fit.fitted_slope, -(p - 2.0) / (2.0 * p), 1e-10);
        EXPECT_LT(fit.fit_residual, 1e-10);
    }
    const std::vector<double> narrow{1.0, 0.5, 0.2};
    EXPECT_THROW(lp_blowup_fit(1.0, 1.0, 4.0, narrow), std::invalid_argument);
}

TEST(LpNormTest, IntervalIntegralAgreesWithIndependentRule) {
    const double a = 1.1, c = 0.9, p = 4.0, eps = 0.2;
    const double v = lp_norm_pth_power_on_interval(a, c, p, eps, 0.05, 10.0);
    const double ref = quadrature::integrate_gauss_legendre(
        [&](double x) { return std::pow(epsilon_family_modulus(a, c, x, eps), p); }, 0.05, 10.0, 2000, 10);
    EXPECT_NEAR(v, ref, 1e-10 * ref);
}

TEST(AmplitudeTest, KScalesAsAToThePower) {
    for (double p : {3.0, 4.0, 6.0}) {
        EXPECT_NEAR(delta_constant_K(2.0, 1.0, p), std::pow(2.0, p) * delta_constant_K(1.0, 1.0, p),
                    1e-12 * delta_constant_K(2.0, 1.0, p));
    }
}

TEST(FitPowerLawTest, RejectsBadInput) {
    const std::vector<double> two{1.0, 0.1}, vals2{1.0, 2.0};
    EXPECT_THROW(fit_power_law(two, vals2), std::invalid_argument);
    const std::vector<double> up{0.1, 1.0, 10.0}, vals3{1.0, 2.0, 3.0};
    EXPECT_THROW(fit_power_law(up, vals3), std::invalid_argument);
}

TEST(LinfTest, ArgmaxAndMaximumForRandomParameters) {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> u(0.2, 5.0);
    for (int k = 0; k < 20; ++k) {
        const double a = u(rng), c = u(rng);
        for (double eps : {1.0, 1e-2, 1e-5}) {
            const auto r = linf_norm(a, c, eps);
            EXPECT_NEAR(r.argmax, oracle::linf_argmax(c, eps), 1e-9 * oracle::linf_argmax(c, eps));
            EXPECT_NEAR(r.max_value, oracle::linf_max(a, c, eps), 1e-12 * oracle::linf_max(a, c, eps));
        }
    }
}

TEST(LinfTest, SlopeIsMinusHalf) {
    const std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3};
    std::vector<double> m;
    for (double e : eps) m.push_back(linf_norm(1.0, 1.0, e).max_value);
    EXPECT_NEAR(fit_power_law(eps, m).fitted_slope, -0.5, 1e-12);
}

TEST(BumpTest, Shape) {
    const auto phi = BumpFunction::unit_peak(0.5, 2.0);
    EXPECT_NEAR(phi(0.5), 1.0, 1e-15);
    EXPECT_EQ(phi(2.5), 0.0);
    EXPECT_EQ(phi(-1.6), 0.0);
    EXPECT_GT(phi(2.4), 0.0);
    EXPECT_DOUBLE_EQ(phi.support_lo(), -1.5);
}

TEST(PairingTest, LinearInTestFunction) {
    const auto phi = BumpFunction::unit_peak(0.2, 1.0);
    BumpFunction twice = phi;
    twice.normalization *= 2.0;
    for (double eps : {1.0, 0.01}) {
        const double v = pairing(4.0, eps, 1.0, 1.0, phi);
        EXPECT_NEAR(pairing(4.0, eps, 1.0, 1.0, twice), 2.0 * v, 1e-12 * v);
    }
    BumpFunction zero = phi;
    zero.normalization = 0.0;
    EXPECT_EQ(pairing(4.0, 0.1, 1.0, 1.0, zero), 0.0);
}

TEST(PairingTest, ConvergesToDeltaMultiple) {
    const double k = delta_constant_K(1.0, 1.0, 4.0);
    EXPECT_NEAR(k, 3.0 * std::numbers::pi / 16.0, 1e-10);
    const auto phi = BumpFunction::unit_peak(0.0, 1.0);
    double previous = INFINITY;
    for (double eps : {1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        const double dev = std::abs(pairing(4.0, eps, 1.0, 1.0, phi) - k);
        EXPECT_LT(dev, previous);
        previous = dev;
    }
    EXPECT_LT(previous, 1e-2 * k);
}

TEST(PairingTest, OffOriginBumpDecays) {
    const auto phi = BumpFunction::unit_peak(1.5, 0.5);
    const double first = pairing(4.0, 1.0, 1.0, 1.0, phi);
    const double last = pairing(4.0, 1e-6, 1.0, 1.0, phi);
    EXPECT_LT(last, 1e-4 * first);
    // Away from the origin |psi_eps|^p eps^{(p-2)/2} ~ eps^{(p-2)/2} x^{-p/2}.
    const double mid = pairing(4.0, 1e-4, 1.0, 1.0, phi);
    EXPECT_NEAR(last / mid, 1e-2, 1e-4);
}

}  // namespace
}  // namespace vcnls
