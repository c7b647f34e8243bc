// SPDX-License-Identifier: MIT
//
// Blow-up quantification for the group-transformed stationary family
//
//   |psi_eps(x)| = A |x|^{1/6} / (|x|^{2/3} + eps^{2/3} C),
//
// evaluated through the scaled variable y = x / eps so that improper
// integrals are eps-independent.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vcnls/quadrature.hpp"

namespace vcnls {

/// Tolerances for the improper integrals. The half-line is cut at Y such that
/// the dominating tail integral_Y^inf y^{-p/2} dy = Y^{1-p/2}/(p/2 - 1) is
/// at most abs_tol.
struct QuadratureSettings {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
    /// Explicit cut-off; must satisfy the tail bound for every p it is used with.
    std::optional<double> tail_cutoff_y;

    /// Throws std::invalid_argument on non-positive tolerances.
    void validate() const;
    /// Cut-off for exponent p (p > 2).
    double tail_cutoff(double p) const;
    /// Analytic bound on the neglected tail beyond `cutoff`.
    static double tail_bound(double p, double cutoff);

    quadrature::AdaptiveOptions adaptive() const { return {abs_tol, rel_tol, max_subdivisions}; }
};

/// Thrown for p <= 2, where the tail y^{-p/2} is not integrable.
class DivergentIntegral : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Half-line profile integral I(C, p) = integral_0^inf y^{p/6} / (y^{2/3} + C)^p dy,
/// by adaptive quadrature with the analytic tail cut-off.
double profile_integral(double offset_c, double p, const QuadratureSettings& settings = {});

/// Same integral by a fixed composite Gauss-Legendre rule on the
/// compactified variable s = u/(1 + u), u = y^{1/6}, with no truncation.
double profile_integral_compactified(double offset_c, double p, int panels = 400, int order = 20);

/// Full-line integral of |psi_eps|^p = 2 A^p eps^{-(p-2)/2} I(C, p).
double lp_norm_pth_power(double amplitude, double offset_c, double p, double eps,
                         const QuadratureSettings& settings = {});

/// ||psi_eps||_p.
double lp_norm(double amplitude, double offset_c, double p, double eps,
               const QuadratureSettings& settings = {});

/// integral_{x_lo}^{x_hi} |psi_eps|^p dx on a truncated positive interval,
/// for comparisons with simulations on [x_min, x_max].
double lp_norm_pth_power_on_interval(double amplitude, double offset_c, double p, double eps,
                                     double x_lo, double x_hi,
                                     const QuadratureSettings& settings = {});

/// Least-squares power law values ~ eps^slope.
struct RateFit {
    std::vector<double> eps_samples;  ///< strictly decreasing
    std::vector<double> values;
    double fitted_slope = 0.0;
    double fit_residual = 0.0;        ///< RMS deviation in log space
};

/// Requires >= 3 strictly decreasing eps samples with positive values.
RateFit fit_power_law(std::span<const double> eps, std::span<const double> values);

/// Slope of log ||psi_eps||_p against log eps over `eps` (>= 3 samples
/// spanning >= 2 decades). Exact law: -(p-2)/(2p).
RateFit lp_blowup_fit(double amplitude, double offset_c, double p, std::span<const double> eps,
                      const QuadratureSettings& settings = {});

struct LinfResult {
    double max_value = 0.0;
    double argmax = 0.0;
};

/// Maximiser of |psi_eps| on (0, inf) by bisection on the sign of
/// d ln|psi_eps| / d ln x. Requires A, C, eps > 0.
LinfResult linf_norm(double amplitude, double offset_c, double eps);

/// Smooth compactly supported test function
///   normalization * exp(-1 / (1 - s^2)),  s = (x - center)/radius, |s| < 1.
struct BumpFunction {
    double center = 0.0;
    double radius = 1.0;
    double normalization = 1.0;

    /// Bump with peak value 1 at `center`.
    static BumpFunction unit_peak(double center, double radius);

    double operator()(double x) const noexcept;
    double support_lo() const noexcept { return center - radius; }
    double support_hi() const noexcept { return center + radius; }
};

/// <eps^{(p-2)/2} |psi_eps|^p, phi> over the support of phi, computed as
/// A^p integral |y|^{p/6} / (|y|^{2/3} + C)^p phi(eps y) dy.
double pairing(double p, double eps, double amplitude, double offset_c, const BumpFunction& phi,
               const QuadratureSettings& settings = {});

/// K = A^p integral_R |y|^{p/6} / (|y|^{2/3} + C)^p dy = 2 A^p I(C, p).
double delta_constant_K(double amplitude, double offset_c, double p,
                        const QuadratureSettings& settings = {});

}  // namespace vcnls
