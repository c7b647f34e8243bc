// SPDX-License-Identifier: MIT
//
// Reference values computed independently of the library: closed forms
// through the Beta function and direct transcriptions of the solution
// formulas.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

/// integral_0^inf y^{p/6} / (y^{2/3} + C)^p dy. With z = y^{2/3} the
/// integrand becomes a Beta integral:
///   (3/2) C^{3/2 - 3p/4} B(p/4 + 3/2, 3p/4 - 3/2).
inline double profile_integral(double c, double p) {
    return 1.5 * std::pow(c, 1.5 - 0.75 * p) * std::beta(p / 4.0 + 1.5, 0.75 * p - 1.5);
}

/// Full-line ||psi_eps||_p^p.
inline double lp_pth_power(double a, double c, double p, double eps) {
    return 2.0 * std::pow(a, p) * std::pow(eps, -(p - 2.0) / 2.0) * profile_integral(c, p);
}

/// Maximiser of A y^{1/6}/(y^{2/3} + C) is y* = C^{3/2}/sqrt(27).
inline double linf_argmax(double c, double eps) { return eps * std::pow(c, 1.5) / std::sqrt(27.0); }

inline double linf_max(double a, double c, double eps) {
    return 0.75 * a * std::pow(3.0, -0.25) * std::pow(c, -0.75) / std::sqrt(eps);
}

struct Constants {
    double delta;
    double amplitude;
};

inline Constants constants(int epsilon, double gamma) {
    const double delta = (-3.0 * epsilon - std::sqrt(8.0 * gamma * gamma + 9.0)) / (2.0 * gamma);
    return {delta, std::sqrt(-4.0 * delta / (3.0 * gamma))};
}

/// Time-dependent solution, transcribed directly.
inline std::complex<double> truncated(int epsilon, double gamma, double k1, double k2, double k3, double k4,
                                      double x, double t) {
    const auto [delta, a] = constants(epsilon, gamma);
    const double s = k4 * t + k1;
    const double x23 = std::pow(x, 2.0 / 3.0);
    const double s23 = std::pow(s, 2.0 / 3.0);
    const double mod = a * std::pow(x, 1.0 / 6.0) / (x23 + k2 * s23);
    const double phase = k4 * x * x / (4.0 * s) - delta * std::log(x23 / s23 + k2) + k3;
    return std::polar(mod, phase);
}

}  // namespace oracle
