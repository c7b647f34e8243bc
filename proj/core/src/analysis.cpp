// SPDX-License-Identifier: MIT

#include "vcnls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vcnls {

namespace {

void require_p_above_two(double p) {
    if (!(p > 2.0)) {
        throw DivergentIntegral("divergent tail: |psi_eps|^p ~ x^{-p/2} is not integrable for p = " +
                                std::to_string(p) + " <= 2");
    }
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
    }
}

// y^{p/6} / (y^{2/3} + C)^p dy after y = u^6, i.e. 6 u^{p+5} / (u^4 + C)^p du.
// Evaluated in logs so large u neither overflows nor underflows early.
double profile_in_u(double u, double c, double p) {
    if (u <= 0.0) return 0.0;
    const double lu = std::log(u);
    return 6.0 * std::exp((p + 5.0) * lu - p * std::log(std::pow(u, 4) + c));
}

// Same density after u = e^s (du = u ds).
double profile_in_log_u(double s, double c, double p) {
    return 6.0 * std::exp((p + 6.0) * s - p * std::log(std::exp(4.0 * s) + c));
}

double integrate(const quadrature::Integrand& f, double a, double b, const QuadratureSettings& s) {
    return quadrature::integrate_adaptive_or_throw(f, a, b, s.adaptive()).value;
}

}  // namespace

void QuadratureSettings::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be >= 1");
    }
    if (tail_cutoff_y && !(*tail_cutoff_y > 0.0)) {
        throw std::invalid_argument("tail_cutoff_y must be positive");
    }
}

double QuadratureSettings::tail_bound(double p, double cutoff) {
    require_p_above_two(p);
    return std::pow(cutoff, 1.0 - 0.5 * p) / (0.5 * p - 1.0);
}

double QuadratureSettings::tail_cutoff(double p) const {
    require_p_above_two(p);
    validate();
    if (tail_cutoff_y) {
        if (tail_bound(p, *tail_cutoff_y) > abs_tol) {
            throw std::invalid_argument("tail_cutoff_y leaves a tail bound above abs_tol for p = " +
                                        std::to_string(p));
        }
        return *tail_cutoff_y;
    }
    const double log_y = std::log((0.5 * p - 1.0) * abs_tol) / (1.0 - 0.5 * p);
    return std::exp(std::max(log_y, 0.0));
}

double profile_integral(double offset_c, double p, const QuadratureSettings& settings) {
    require_positive(offset_c, "C");
    require_p_above_two(p);
    settings.validate();
    const double cutoff = settings.tail_cutoff(p);
    // u = y^{1/6} runs up to cutoff^{1/6}; beyond u = 1 integrate in ln u.
    const double log_u_max = std::log(cutoff) / 6.0;
    const double u_split = std::min(1.0, std::exp(log_u_max));
    double total = integrate([=](double u) { return profile_in_u(u, offset_c, p); }, 0.0, u_split,
                             settings);
    if (log_u_max > 0.0) {
        total += integrate([=](double s) { return profile_in_log_u(s, offset_c, p); }, 0.0, log_u_max,
                           settings);
    }
    return total;
}

double profile_integral_compactified(double offset_c, double p, int panels, int order) {
    require_positive(offset_c, "C");
    require_p_above_two(p);
    const auto integrand = [=](double s) {
        if (s <= 0.0 || s >= 1.0) return 0.0;
        const double u = s / (1.0 - s);
        return profile_in_u(u, offset_c, p) / ((1.0 - s) * (1.0 - s));
    };
    return quadrature::integrate_gauss_legendre(integrand, 0.0, 1.0, panels, order);
}

double lp_norm_pth_power(double amplitude, double offset_c, double p, double eps,
                         const QuadratureSettings& settings) {
    require_p_above_two(p);
    require_positive(eps, "eps");
    if (amplitude == 0.0) return 0.0;
    return 2.0 * std::pow(std::abs(amplitude), p) * std::pow(eps, -(p - 2.0) / 2.0) *
           profile_integral(offset_c, p, settings);
}

double lp_norm(double amplitude, double offset_c, double p, double eps,
               const QuadratureSettings& settings) {
    return std::pow(lp_norm_pth_power(amplitude, offset_c, p, eps, settings), 1.0 / p);
}

double lp_norm_pth_power_on_interval(double amplitude, double offset_c, double p, double eps,
                                     double x_lo, double x_hi, const QuadratureSettings& settings) {
    require_positive(eps, "eps");
    require_positive(offset_c, "C");
    if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
    if (!(0.0 <= x_lo && x_lo < x_hi)) throw std::invalid_argument("need 0 <= x_lo < x_hi");
    settings.validate();
    const double u_lo = std::pow(x_lo / eps, 1.0 / 6.0);
    const double u_hi = std::pow(x_hi / eps, 1.0 / 6.0);
    const double scaled = integrate([=](double u) { return profile_in_u(u, offset_c, p); }, u_lo, u_hi,
                                    settings);
    return std::pow(std::abs(amplitude), p) * std::pow(eps, 1.0 - 0.5 * p) * scaled;
}

RateFit fit_power_law(std::span<const double> eps, std::span<const double> values) {
    if (eps.size() != values.size() || eps.size() < 3) {
        throw std::invalid_argument("rate fit needs >= 3 paired samples");
    }
    for (std::size_t i = 1; i < eps.size(); ++i) {
        if (!(eps[i] < eps[i - 1])) throw std::invalid_argument("eps samples must strictly decrease");
    }
    const auto n = static_cast<double>(eps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0) || !(values[i] > 0.0)) {
            throw std::invalid_argument("rate fit needs positive samples");
        }
        const double lx = std::log(eps[i]), ly = std::log(values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    RateFit fit;
    fit.eps_samples.assign(eps.begin(), eps.end());
    fit.values.assign(values.begin(), values.end());
    fit.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - fit.fitted_slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double r = std::log(values[i]) - (intercept + fit.fitted_slope * std::log(eps[i]));
        ss += r * r;
    }
    fit.fit_residual = std::sqrt(ss / n);
    return fit;
}

RateFit lp_blowup_fit(double amplitude, double offset_c, double p, std::span<const double> eps,
                      const QuadratureSettings& settings) {
    require_p_above_two(p);
    if (eps.size() < 3) throw std::invalid_argument("lp_blowup_fit needs >= 3 eps values");
    const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
    if (!(*lo > 0.0) || *hi / *lo < 100.0) {
        throw std::invalid_argument("eps ladder must be positive and span at least two decades");
    }
    std::vector<double> norms;
    norms.reserve(eps.size());
    for (double e : eps) norms.push_back(lp_norm(amplitude, offset_c, p, e, settings));
    return fit_power_law(eps, norms);
}

LinfResult linf_norm(double amplitude, double offset_c, double eps) {
    require_positive(amplitude, "A");
    require_positive(offset_c, "C");
    require_positive(eps, "eps");
    // d ln|psi| / d ln y = 1/6 - (2/3) y^{2/3} / (y^{2/3} + C) in the scaled
    // variable y = x/eps; strictly decreasing from 1/6 to -1/2.
    const auto slope = [offset_c](double log_y) {
        const double y23 = std::exp(2.0 * log_y / 3.0);
        return 1.0 / 6.0 - (2.0 / 3.0) * y23 / (y23 + offset_c);
    };
    double lo = -1.0, hi = 1.0;
    while (slope(lo) <= 0.0) lo *= 2.0;
    while (slope(hi) >= 0.0) hi *= 2.0;
    for (int iter = 0; iter < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x = eps * std::exp(0.5 * (lo + hi));
    const double x23 = std::cbrt(x) * std::cbrt(x);
    const double eps23 = std::cbrt(eps) * std::cbrt(eps);
    return {amplitude * std::pow(x, 1.0 / 6.0) / (x23 + eps23 * offset_c), x};
}

BumpFunction BumpFunction::unit_peak(double center, double radius) {
    require_positive(radius, "bump radius");
    return {center, radius, std::numbers::e};
}

double BumpFunction::operator()(double x) const noexcept {
    const double s = (x - center) / radius;
    if (std::abs(s) >= 1.0) return 0.0;
    return normalization * std::exp(-1.0 / (1.0 - s * s));
}

double pairing(double p, double eps, double amplitude, double offset_c, const BumpFunction& phi,
               const QuadratureSettings& settings) {
    require_p_above_two(p);
    require_positive(eps, "eps");
    require_positive(offset_c, "C");
    require_positive(phi.radius, "bump radius");
    settings.validate();
    if (phi.normalization == 0.0 || amplitude == 0.0) return 0.0;

    const double scale = std::pow(std::abs(amplitude), p);
    const double lo = phi.support_lo(), hi = phi.support_hi();
    double total = 0.0;
    // The modulus is even, so each half of the support reduces to |y| in
    // [|x|_lo, |x|_hi]/eps with phi evaluated at +eps|y| or -eps|y|.
    const auto half = [&](double abs_lo, double abs_hi, double side) {
        const double u_lo = std::pow(abs_lo / eps, 1.0 / 6.0);
        const double u_hi = std::pow(abs_hi / eps, 1.0 / 6.0);
        return integrate(
            [&](double u) {
                const double y = std::pow(u, 6);
                return profile_in_u(u, offset_c, p) * phi(side * eps * y);
            },
            u_lo, u_hi, settings);
    };
    if (hi > 0.0) total += half(std::max(lo, 0.0), hi, +1.0);
    if (lo < 0.0) total += half(std::max(-hi, 0.0), -lo, -1.0);
    return scale * total;
}

double delta_constant_K(double amplitude, double offset_c, double p,
                        const QuadratureSettings& settings) {
    return 2.0 * std::pow(std::abs(amplitude), p) * profile_integral(offset_c, p, settings);
}

}  // namespace vcnls
