// SPDX-License-Identifier: MIT

#include "vcnls/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vcnls {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_stencil(double x, double h, double dt) {
    if (!(h > 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("residual stencil requires h > 0 and dt > 0");
    }
    if (!(x - h > 0.0)) {
        throw DomainError("residual stencil leaves x > 0 (x = " + std::to_string(x) +
                          ", h = " + std::to_string(h) + ")");
    }
}

}  // namespace

ResidualTerms residual_terms_at(const EquationParameters& params, const FieldFunction& psi, double x,
                                double t, double h, double dt) {
    check_stencil(x, h, dt);
    const Complex centre = psi(x, t);
    const Complex psi_t = (psi(x, t + dt) - psi(x, t - dt)) / (2.0 * dt);
    const Complex psi_xx = (psi(x + h, t) - 2.0 * centre + psi(x - h, t)) / (h * h);

    ResidualTerms r;
    r.linear = kI * psi_t + psi_xx + params.potential() / (x * x) * centre;
    r.cubic = params.cubic() / x * std::norm(centre) * centre;
    return r;
}

Complex residual_at(const EquationParameters& params, const FieldFunction& psi, double x, double t,
                    double h, double dt) {
    return residual_terms_at(params, psi, x, t, h, dt).total();
}

bool ResidualReport::passes(double lo, double hi) const noexcept {
    return saturated || (estimated_order >= lo && estimated_order <= hi);
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("log-log fit needs >= 2 paired samples");
    }
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("log-log fit needs positive samples");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ResidualReport convergence_order(const EquationParameters& params, const FieldFunction& psi,
                                 std::span<const ProbePoint> probes, std::span<const double> spacings,
                                 const ConvergenceOptions& options) {
    if (spacings.size() < 2) {
        throw std::invalid_argument("convergence_order needs at least two spacings");
    }
    for (std::size_t i = 1; i < spacings.size(); ++i) {
        if (!(spacings[i] < spacings[i - 1])) {
            throw std::invalid_argument("spacings must be strictly decreasing");
        }
    }
    if (probes.empty()) {
        throw std::invalid_argument("convergence_order needs at least one probe point");
    }

    constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon();
    ResidualReport report;
    report.grid_spacings.assign(spacings.begin(), spacings.end());
    for (double h : spacings) {
        const double dt = options.dt_ratio * h;
        double worst = 0.0;
        double floor = 0.0;
        for (const auto& probe : probes) {
            worst = std::max(worst, std::abs(residual_at(params, psi, probe.x, probe.t, h, dt)));
            // Cancellation error of the difference quotients dominates round-off.
            const double scale = std::abs(psi(probe.x, probe.t));
            floor = std::max(floor, scale * (4.0 / (h * h) + 1.0 / dt));
        }
        report.residual_norms.push_back(worst);
        report.rounding_floors.push_back(options.floor_safety * kUnitRoundoff * floor);
    }

    // Levels already at the round-off floor carry no truncation information.
    std::vector<double> fit_h, fit_r;
    for (std::size_t i = 0; i < spacings.size(); ++i) {
        if (report.residual_norms[i] > report.rounding_floors[i]) {
            fit_h.push_back(report.grid_spacings[i]);
            fit_r.push_back(report.residual_norms[i]);
        }
    }
    report.saturated = fit_h.size() < 2;
    report.estimated_order = report.saturated ? std::numeric_limits<double>::quiet_NaN()
                                              : log_log_slope(fit_h, fit_r);
    return report;
}

}  // namespace vcnls
