// SPDX-License-Identifier: MIT

#include "vcnls/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace vcnls {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

EquationParameters make_parameters(int epsilon, double gamma, double h1, double h2) {
    if (epsilon != 1 && epsilon != -1) {
        throw std::invalid_argument("epsilon must be +1 or -1, got " + std::to_string(epsilon));
    }
    require_finite(gamma, "gamma");
    require_finite(h1, "h1");
    require_finite(h2, "h2");
    return EquationParameters{epsilon == 1 ? Sign::Plus : Sign::Minus, gamma, h1, h2};
}

GroupElement::GroupElement(double a, double b, double c, double d, double theta)
    : a_(a), b_(b), c_(c), d_(d), theta_(theta) {
    for (double v : {a, b, c, d, theta}) {
        require_finite(v, "group element entries");
    }
    if (std::abs(determinant() - 1.0) > kDeterminantTolerance) {
        throw std::invalid_argument("group element must satisfy ad - bc = 1 (got " +
                                    std::to_string(determinant()) + ")");
    }
}

GroupElement GroupElement::identity() noexcept { return {Unchecked{}, 1.0, 0.0, 0.0, 1.0, 0.0}; }

GroupElement GroupElement::gauge(double theta) noexcept {
    return {Unchecked{}, 1.0, 0.0, 0.0, 1.0, theta};
}

GroupElement GroupElement::from_abc(double a, double b, double c, double theta) {
    if (a == 0.0) {
        throw std::invalid_argument("from_abc requires a != 0");
    }
    return GroupElement(a, b, c, (1.0 + b * c) / a, theta);
}

double GroupElement::distance(const GroupElement& o) const noexcept {
    return std::max({std::abs(a_ - o.a_), std::abs(b_ - o.b_), std::abs(c_ - o.c_),
                     std::abs(d_ - o.d_), std::abs(theta_ - o.theta_)});
}

GroupElement group_compose(const GroupElement& g1, const GroupElement& g2) {
    // Validated constructor: the product of unit-determinant matrices keeps
    // the determinant within tolerance unless the entries are huge.
    return GroupElement(g1.a_ * g2.a_ + g1.b_ * g2.c_, g1.a_ * g2.b_ + g1.b_ * g2.d_,
                        g1.c_ * g2.a_ + g1.d_ * g2.c_, g1.c_ * g2.b_ + g1.d_ * g2.d_,
                        g1.theta_ + g2.theta_);
}

GroupElement group_inverse(const GroupElement& g) {
    return {GroupElement::Unchecked{}, g.d_, -g.b_, -g.c_, g.a_, -g.theta_};
}

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n)
    : x_min_(x_min), x_max_(x_max), n_(n), spacing_(0.0) {
    require_finite(x_min, "x_min");
    require_finite(x_max, "x_max");
    if (!(x_min > 0.0)) {
        throw std::invalid_argument("grid requires x_min > 0");
    }
    if (!(x_min < x_max)) {
        throw std::invalid_argument("grid requires x_min < x_max");
    }
    if (n < 3) {
        throw std::invalid_argument("grid requires at least 3 nodes");
    }
    spacing_ = (x_max - x_min) / static_cast<double>(n - 1);
}

SpatialGrid SpatialGrid::with_spacing(double x_min, double x_max, double spacing) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) {
        throw std::invalid_argument("grid spacing must be positive");
    }
    const double intervals = std::round((x_max - x_min) / spacing);
    return SpatialGrid(x_min, x_max, static_cast<std::size_t>(std::max(intervals, 2.0)) + 1);
}

std::vector<double> SpatialGrid::nodes() const {
    std::vector<double> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        out[i] = node(i);
    }
    return out;
}

bool all_finite(std::span<const Complex> values) noexcept {
    return std::all_of(values.begin(), values.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexField::ComplexField(SpatialGrid grid, std::vector<Complex> values, double time)
    : grid_(std::move(grid)), values_(std::move(values)), time_(time) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("field length does not match grid size");
    }
    if (!all_finite(values_)) {
        throw std::invalid_argument("field contains non-finite values");
    }
}

ComplexField ComplexField::sample(const SpatialGrid& grid, const FieldFunction& f, double time) {
    std::vector<Complex> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        values[i] = f(grid.node(i), time);
    }
    return ComplexField(grid, std::move(values), time);
}

ComplexField ComplexField::zeros(const SpatialGrid& grid, double time) {
    return ComplexField(grid, std::vector<Complex>(grid.size()), time);
}

std::vector<double> ComplexField::modulus() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](const Complex& z) { return std::abs(z); });
    return out;
}

std::vector<double> ComplexField::phase() const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [](const Complex& z) { return std::arg(z); });
    return out;
}

double ComplexField::integrate_power(double p) const {
    const auto term = [p](const Complex& z) { return std::pow(std::abs(z), p); };
    double sum = 0.5 * (term(values_.front()) + term(values_.back()));
    for (std::size_t i = 1; i + 1 < values_.size(); ++i) {
        sum += term(values_[i]);
    }
    return sum * grid_.spacing();
}

double ComplexField::lp_norm(double p) const { return std::pow(integrate_power(p), 1.0 / p); }

}  // namespace vcnls
