// SPDX-License-Identifier: MIT
//
// Discrete residual of the canonical equation, evaluated with second-order
// central differences, and the convergence-order fit used to certify exact
// solutions.

#pragma once

#include <span>
#include <vector>

#include "vcnls/core.hpp"

namespace vcnls {

struct ProbePoint {
    double x = 1.0;
    double t = 0.0;

    bool operator==(const ProbePoint&) const = default;
};

/// Residual split into the part linear in psi (i psi_t + psi_xx + potential)
/// and the cubic part (eps + i gamma) |psi|^2 psi / x.
struct ResidualTerms {
    Complex linear;
    Complex cubic;
    Complex total() const noexcept { return linear + cubic; }
};

/// Throws DomainError when x - h <= 0, or when h/dt are not positive.
ResidualTerms residual_terms_at(const EquationParameters& params, const FieldFunction& psi, double x,
                                double t, double h, double dt);

Complex residual_at(const EquationParameters& params, const FieldFunction& psi, double x, double t,
                    double h, double dt);

struct ResidualReport {
    std::vector<double> grid_spacings;   ///< strictly decreasing
    std::vector<double> residual_norms;  ///< max over probe points, per spacing
    std::vector<double> rounding_floors; ///< estimated round-off level, per spacing
    double estimated_order = 0.0;        ///< NaN when saturated
    bool saturated = false;              ///< every norm sits at its rounding floor

    /// Order inside [lo, hi], or the fit saturated at rounding level.
    bool passes(double lo = 1.8, double hi = 2.2) const noexcept;
};

struct ConvergenceOptions {
    /// Time step used at each level is dt = dt_ratio * h.
    double dt_ratio = 1.0;
    /// Round-off multiplier for the saturation floor.
    double floor_safety = 64.0;
};

/// Max-norm residual over `probes` for each spacing and the least-squares
/// slope of log(norm) against log(h). Requires >= 2 strictly decreasing
/// spacings; throws std::invalid_argument otherwise.
ResidualReport convergence_order(const EquationParameters& params, const FieldFunction& psi,
                                 std::span<const ProbePoint> probes, std::span<const double> spacings,
                                 const ConvergenceOptions& options = {});

/// Least-squares slope of log(y) vs log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace vcnls
