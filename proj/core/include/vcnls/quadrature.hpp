// SPDX-License-Identifier: MIT
//
// One-dimensional quadrature: globally adaptive Gauss-Kronrod (7/15) and a
// composite fixed-order Gauss-Legendre rule. The two share no code beyond
// the integrand signature so they can cross-check each other.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace vcnls::quadrature {

using Integrand = std::function<double(double)>;

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int subdivisions = 0;
    bool converged = false;
};

struct AdaptiveOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;
};

/// Bisects the interval with the largest error estimate until the summed
/// estimate drops below max(abs_tol, rel_tol |value|) or the budget runs out.
/// Never throws on non-convergence; check Result::converged.
Result integrate_adaptive(const Integrand& f, double a, double b, const AdaptiveOptions& options = {});

/// Same as integrate_adaptive but throws QuadratureError when not converged.
Result integrate_adaptive_or_throw(const Integrand& f, double a, double b,
                                   const AdaptiveOptions& options = {});

struct GaussLegendreRule {
    std::vector<double> nodes;    ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/// n-point rule from Newton iteration on P_n. Throws for n < 1.
GaussLegendreRule gauss_legendre_rule(int n);

/// Composite rule: `panels` equal sub-intervals, `order` points each.
double integrate_gauss_legendre(const Integrand& f, double a, double b, int panels, int order);

}  // namespace vcnls::quadrature
