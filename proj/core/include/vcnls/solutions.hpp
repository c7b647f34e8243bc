// SPDX-License-Identifier: MIT
//
// Closed-form solutions obtained by truncating the Painleve expansion at its
// leading term, and the constants that make the truncation consistent.

#pragma once

#include <memory>
#include <utility>
#include <variant>

#include "vcnls/core.hpp"

namespace vcnls {

/// Constants of the leading-order balance. Only the minus root of the
/// balance quadratic is admissible (amplitude^2 > 0).
struct TruncationConstants {
    Sign epsilon = Sign::Plus;
    double gamma = 0.0;
    double delta = 0.0;
    double amplitude = 0.0;  ///< A = sqrt(-4 delta / (3 gamma))
    Complex alpha;           ///< -1 - i delta
    Complex beta;            ///< -1 + i delta
    double h1 = 5.0 / 36.0;
    double h2 = 0.0;

    /// Parameters of the equation these solutions solve.
    EquationParameters equation() const noexcept { return {epsilon, gamma, h1, h2}; }
};

/// Both roots (minus, plus) of gamma d^2 + 3 eps d - 2 gamma = 0.
/// Throws std::invalid_argument for gamma == 0.
std::pair<double, double> delta_roots(Sign epsilon, double gamma);

/// Minus-root constants; throws std::invalid_argument for gamma == 0.
TruncationConstants truncation_constants(Sign epsilon, double gamma);

/// |gamma d^2 + 3 eps d - 2 gamma|, the imaginary part of the leading-order
/// balance after substituting alpha = -1 - i d.
double balance_residual(Sign epsilon, double gamma, double delta) noexcept;

/// -3 delta / gamma, the real value of u0 v0 / (x Phi_x^2).
double u0v0_coefficient(double gamma, double delta);

/// -alpha (alpha - 1) / (eps + i gamma). Real and equal to
/// u0v0_coefficient() exactly when delta solves the balance quadratic.
Complex u0v0_coefficient_complex(Sign epsilon, double gamma, double delta);

/// Real branch of k^{2/3}, defined for negative k as well.
double two_thirds_power(double k) noexcept;

/// Time-independent solution
///   A x^{1/6} / (x^{2/3} + C) exp(i(-delta ln(x^{2/3} + C) + k3)),  C = k1^{2/3} k2.
struct Stationary {
    TruncationConstants constants;
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 0.0;

    double offset_c() const noexcept { return two_thirds_power(k1) * k2; }
};

/// Time-dependent family; reduces to Stationary at k4 = 0 after relabelling k3.
struct Truncated {
    TruncationConstants constants;
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 0.0;
    double k4 = 0.0;

    double scale_at(double t) const noexcept { return k4 * t + k1; }
    /// Time where k4 t + k1 reaches 0, or +inf when it never does for t > 0.
    double singular_time() const noexcept;
};

class SolutionSpec;

/// Group action applied to an inner solution.
struct Transformed {
    GroupElement g = GroupElement::identity();
    std::shared_ptr<const SolutionSpec> inner;
};

/// Immutable closed-form solution, evaluable pointwise on x > 0.
class SolutionSpec {
public:
    using Variant = std::variant<Stationary, Truncated, Transformed>;

    /// Throws std::invalid_argument unless C = k1^{2/3} k2 > 0.
    static SolutionSpec stationary(const TruncationConstants& constants, double k1, double k2,
                                   double k3);
    /// Throws std::invalid_argument unless k2 > 0 (keeps the denominator
    /// positive whenever k4 t + k1 > 0).
    static SolutionSpec truncated(const TruncationConstants& constants, double k1, double k2,
                                  double k3, double k4);
    static SolutionSpec transformed(const GroupElement& g, SolutionSpec inner);

    const Variant& variant() const noexcept { return data_; }

    /// Equation solved by this family (h1 = 5/36, h2 = 0).
    EquationParameters equation() const;

    /// Throws DomainError for x <= 0 and BranchError when a branch
    /// condition fails at t.
    Complex operator()(double x, double t) const;

    FieldFunction as_field() const;

private:
    explicit SolutionSpec(Variant v) : data_(std::move(v)) {}

    Variant data_;
};

Complex eval_stationary(const Stationary& s, double x);
Complex eval_truncated(const Truncated& s, double x, double t);

/// Truncated family with k4 = 0 that coincides pointwise with `s`.
/// Requires k1 > 0.
Truncated as_truncated(const Stationary& s);

}  // namespace vcnls
