// SPDX-License-Identifier: MIT

#include "vcnls/solutions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "vcnls/symmetry.hpp"

namespace vcnls {

namespace {

void require_nonzero_gamma(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw std::invalid_argument("truncation requires finite gamma != 0");
    }
}

void require_positive_x(double x) {
    if (!(x > 0.0)) {
        throw DomainError("closed-form solutions are evaluated on x > 0 only (x = " +
                          std::to_string(x) + ")");
    }
}

}  // namespace

std::pair<double, double> delta_roots(Sign epsilon, double gamma) {
    require_nonzero_gamma(gamma);
    const double e = to_double(epsilon);
    const double disc = std::sqrt(8.0 * gamma * gamma + 9.0);
    return {(-3.0 * e - disc) / (2.0 * gamma), (-3.0 * e + disc) / (2.0 * gamma)};
}

TruncationConstants truncation_constants(Sign epsilon, double gamma) {
    const double delta = delta_roots(epsilon, gamma).first;
    const double a_squared = -4.0 * delta / (3.0 * gamma);
    // delta/gamma = (-3 eps - sqrt(8 gamma^2 + 9)) / (2 gamma^2) < 0 for both signs.
    TruncationConstants c;
    c.epsilon = epsilon;
    c.gamma = gamma;
    c.delta = delta;
    c.amplitude = std::sqrt(a_squared);
    c.alpha = {-1.0, -delta};
    c.beta = {-1.0, delta};
    return c;
}

double balance_residual(Sign epsilon, double gamma, double delta) noexcept {
    return std::abs(gamma * delta * delta + 3.0 * to_double(epsilon) * delta - 2.0 * gamma);
}

double u0v0_coefficient(double gamma, double delta) {
    require_nonzero_gamma(gamma);
    return -3.0 * delta / gamma;
}

Complex u0v0_coefficient_complex(Sign epsilon, double gamma, double delta) {
    const Complex alpha{-1.0, -delta};
    return -alpha * (alpha - 1.0) / Complex{to_double(epsilon), gamma};
}

double two_thirds_power(double k) noexcept {
    const double r = std::cbrt(k);
    return r * r;
}

double Truncated::singular_time() const noexcept {
    if (k4 >= 0.0) return std::numeric_limits<double>::infinity();
    return -k1 / k4;
}

Complex eval_stationary(const Stationary& s, double x) {
    require_positive_x(x);
    const auto& k = s.constants;
    const double x23 = std::cbrt(x) * std::cbrt(x);
    const double denom = x23 + s.offset_c();
    const double modulus = k.amplitude * std::pow(x, 1.0 / 6.0) / denom;
    const double phase = -k.delta * std::log(denom) + s.k3;
    return std::polar(modulus, phase);
}

Complex eval_truncated(const Truncated& s, double x, double t) {
    require_positive_x(x);
    const double scale = s.scale_at(t);
    if (!(scale > 0.0)) {
        throw BranchError("truncated solution requires k4 t + k1 > 0 (got " +
                          std::to_string(scale) + " at t = " + std::to_string(t) + ")");
    }
    const auto& k = s.constants;
    const double x23 = two_thirds_power(x);
    const double s23 = two_thirds_power(scale);
    const double modulus = k.amplitude * std::pow(x, 1.0 / 6.0) / (x23 + s.k2 * s23);
    const double phase = s.k4 * x * x / (4.0 * scale) - k.delta * std::log(x23 / s23 + s.k2) + s.k3;
    return std::polar(modulus, phase);
}

Truncated as_truncated(const Stationary& s) {
    if (!(s.k1 > 0.0)) {
        throw std::invalid_argument("as_truncated requires k1 > 0");
    }
    const double k3 = s.k3 - s.constants.delta * std::log(two_thirds_power(s.k1));
    return Truncated{s.constants, s.k1, s.k2, k3, 0.0};
}

SolutionSpec SolutionSpec::stationary(const TruncationConstants& constants, double k1, double k2,
                                      double k3) {
    Stationary s{constants, k1, k2, k3};
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3)) {
        throw std::invalid_argument("stationary constants must be finite");
    }
    if (!(s.offset_c() > 0.0)) {
        throw std::invalid_argument("stationary solution requires C = k1^(2/3) k2 > 0");
    }
    return SolutionSpec(s);
}

SolutionSpec SolutionSpec::truncated(const TruncationConstants& constants, double k1, double k2,
                                     double k3, double k4) {
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3) || !std::isfinite(k4)) {
        throw std::invalid_argument("truncated constants must be finite");
    }
    if (!(k2 > 0.0)) {
        throw std::invalid_argument("truncated solution requires k2 > 0");
    }
    return SolutionSpec(Truncated{constants, k1, k2, k3, k4});
}

SolutionSpec SolutionSpec::transformed(const GroupElement& g, SolutionSpec inner) {
    return SolutionSpec(Transformed{g, std::make_shared<const SolutionSpec>(std::move(inner))});
}

EquationParameters SolutionSpec::equation() const {
    return std::visit(
        [](const auto& s) -> EquationParameters {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Transformed>) {
                return s.inner->equation();
            } else {
                return s.constants.equation();
            }
        },
        data_);
}

Complex SolutionSpec::operator()(double x, double t) const {
    return std::visit(
        [x, t](const auto& s) -> Complex {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Stationary>) {
                return eval_stationary(s, x);
            } else if constexpr (std::is_same_v<T, Truncated>) {
                return eval_truncated(s, x, t);
            } else {
                return apply_group_action(s.g, *s.inner, x, t);
            }
        },
        data_);
}

FieldFunction SolutionSpec::as_field() const {
    return [spec = *this](double x, double t) { return spec(x, t); };
}

}  // namespace vcnls
