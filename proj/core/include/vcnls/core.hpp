// SPDX-License-Identifier: MIT
//
// Foundational value types for the canonical variable-coefficient NLS
//
//   i psi_t + psi_xx + (eps + i gamma) |psi|^2 psi / x + (h1 + i h2) psi / x^2 = 0
//
// on the half-line x > 0.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcnls {

using Complex = std::complex<double>;

/// Evaluable field psi(x, t). Closed-form solutions, control fields and
/// simulator boundary data all go through this.
using FieldFunction = std::function<Complex(double x, double t)>;

// Error taxonomy. Everything derives from the std exception it refines so
// callers that only care about "bad input" can catch std::invalid_argument.

/// Evaluation point outside the domain of a closed-form solution (x <= 0,
/// stencil leaving x > 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A square-root or power branch condition failed (a + b t <= 0, k4 t + k1 <= 0).
class BranchError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class Sign : int { Minus = -1, Plus = +1 };

constexpr double to_double(Sign s) noexcept { return static_cast<double>(static_cast<int>(s)); }

/// Constants of the canonical equation.
struct EquationParameters {
    Sign epsilon = Sign::Plus;
    double gamma = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;

    /// Coefficient of |psi|^2 psi / x.
    Complex cubic() const noexcept { return {to_double(epsilon), gamma}; }
    /// Coefficient of psi / x^2.
    Complex potential() const noexcept { return {h1, h2}; }

    bool operator==(const EquationParameters&) const = default;
};

/// Validating constructor. `epsilon` is taken as an integer so that the
/// out-of-range case is representable and rejected.
EquationParameters make_parameters(int epsilon, double gamma, double h1, double h2);

/// Element of SL(2,R) x U(1): Moebius matrix [[a, b], [c, d]] with unit
/// determinant, and a gauge phase theta.
class GroupElement {
public:
    static constexpr double kDeterminantTolerance = 1e-12;

    /// Throws std::invalid_argument if |ad - bc - 1| > kDeterminantTolerance
    /// or any entry is non-finite.
    GroupElement(double a, double b, double c, double d, double theta = 0.0);

    static GroupElement identity() noexcept;
    /// Gauge-only element e^{i theta}.
    static GroupElement gauge(double theta) noexcept;
    /// Element (a, b, c, (1 + b c)/a); requires a != 0.
    static GroupElement from_abc(double a, double b, double c, double theta = 0.0);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }
    double theta() const noexcept { return theta_; }
    double determinant() const noexcept { return a_ * d_ - b_ * c_; }

    /// a + b t, the scale factor of the action at time t.
    double scale_at(double t) const noexcept { return a_ + b_ * t; }
    /// Moebius image (c + d t)/(a + b t) of t.
    double mapped_time(double t) const noexcept { return (c_ + d_ * t) / (a_ + b_ * t); }

    /// Largest absolute entry-wise difference, theta included.
    double distance(const GroupElement& other) const noexcept;

private:
    struct Unchecked {};
    GroupElement(Unchecked, double a, double b, double c, double d, double theta) noexcept
        : a_(a), b_(b), c_(c), d_(d), theta_(theta) {}

    friend GroupElement group_compose(const GroupElement&, const GroupElement&);
    friend GroupElement group_inverse(const GroupElement&);

    double a_, b_, c_, d_, theta_;
};

/// Matrix product g1 * g2; gauge phases add.
GroupElement group_compose(const GroupElement& g1, const GroupElement& g2);

/// Adjugate (d, -b, -c, a) with theta negated.
GroupElement group_inverse(const GroupElement& g);

/// Uniform grid on [x_min, x_max] with 0 < x_min < x_max and n >= 3 nodes.
class SpatialGrid {
public:
    SpatialGrid(double x_min, double x_max, std::size_t n);

    /// Grid with the node count chosen so the spacing is as close as possible
    /// to `spacing` while hitting both end points.
    static SpatialGrid with_spacing(double x_min, double x_max, double spacing);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }

    double node(std::size_t i) const noexcept { return x_min_ + static_cast<double>(i) * spacing_; }
    std::vector<double> nodes() const;

    bool operator==(const SpatialGrid&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double spacing_;
};

/// Samples of psi on a grid at one time.
class ComplexField {
public:
    /// Throws std::invalid_argument on length mismatch or non-finite values.
    ComplexField(SpatialGrid grid, std::vector<Complex> values, double time);

    static ComplexField sample(const SpatialGrid& grid, const FieldFunction& f, double time);
    static ComplexField zeros(const SpatialGrid& grid, double time);

    const SpatialGrid& grid() const noexcept { return grid_; }
    std::span<const Complex> values() const noexcept { return values_; }
    double time() const noexcept { return time_; }
    std::size_t size() const noexcept { return values_.size(); }
    Complex operator[](std::size_t i) const noexcept { return values_[i]; }

    /// rho = |psi|.
    std::vector<double> modulus() const;
    /// omega = arg(psi).
    std::vector<double> phase() const;

    /// Trapezoid-rule integral of |psi|^p over the grid.
    double integrate_power(double p) const;
    /// (integral |psi|^p)^{1/p} on the grid interval.
    double lp_norm(double p) const;

private:
    SpatialGrid grid_;
    std::vector<Complex> values_;
    double time_;
};

bool all_finite(std::span<const Complex> values) noexcept;

}  // namespace vcnls
