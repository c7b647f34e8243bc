// SPDX-License-Identifier: MIT
//
// The four-dimensional symmetry algebra span{T, D, C, W} as exact polynomial
// vector fields, and the SL(2,R) x U(1) action on solutions.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcnls/core.hpp"
#include "vcnls/rational.hpp"
#include "vcnls/solutions.hpp"

namespace vcnls {

/// Polynomial in (t, x, rho) with rational coefficients.
class Polynomial {
public:
    enum Var : std::size_t { kT = 0, kX = 1, kRho = 2 };
    using Exponents = std::array<int, 3>;

    Polynomial() = default;
    Polynomial(Rational constant);  // NOLINT(implicit)

    static Polynomial monomial(Rational coeff, int t_pow, int x_pow, int rho_pow);
    static Polynomial variable(Var v) { return monomial(1, v == kT, v == kX, v == kRho); }

    const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Coefficient of t^i x^j rho^k (zero when absent).
    Rational coefficient(int t_pow, int x_pow, int rho_pow) const;
    /// Largest exponent of any single variable.
    int max_variable_degree() const noexcept;

    Polynomial derivative(Var v) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& s, const Polynomial& p);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    std::string str() const;

private:
    void add_term(const Exponents& e, const Rational& c);

    std::map<Exponents, Rational> terms_;
};

/// Vector field a^t d_t + a^x d_x + a^rho d_rho + a^omega d_omega whose
/// coefficients do not depend on omega.
class VectorField {
public:
    enum Component : std::size_t { kDt = 0, kDx = 1, kDrho = 2, kDomega = 3 };
    static constexpr int kMaxDegree = 2;

    VectorField() = default;
    /// Throws std::overflow_error if any coefficient exceeds kMaxDegree in
    /// one variable.
    explicit VectorField(std::array<Polynomial, 4> coefficients);

    const Polynomial& operator[](Component c) const noexcept { return coeffs_[c]; }
    bool is_zero() const noexcept;

    /// Derivation X(f) = a^t f_t + a^x f_x + a^rho f_rho.
    Polynomial apply(const Polynomial& f) const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const Rational& s, const VectorField& v);
    friend bool operator==(const VectorField&, const VectorField&) = default;

    std::string str() const;

private:
    std::array<Polynomial, 4> coeffs_;
};

namespace generators {
VectorField time_translation();  ///< T = d_t
VectorField dilation();          ///< D = 2t d_t + x d_x - rho/2 d_rho
VectorField conformal();         ///< C = t^2 d_t + xt d_x - t rho/2 d_rho + x^2/4 d_omega
VectorField gauge();             ///< W = d_omega
}  // namespace generators

/// [v1, v2] component-wise: v1(v2^k) - v2(v1^k).
VectorField lie_bracket(const VectorField& v1, const VectorField& v2);

/// Coordinates (c_T, c_D, c_C, c_W) of `v` in the basis {T, D, C, W}, or
/// nullopt when v is outside the span.
std::optional<std::array<Rational, 4>> decompose(const VectorField& v);

/// Combination c_T T + c_D D + c_C C + c_W W.
VectorField combine(const std::array<Rational, 4>& coords);

struct BracketCheck {
    std::string lhs;       ///< e.g. "[T,D]"
    std::string expected;  ///< e.g. "2T"
    VectorField computed;
    VectorField reference;
    bool holds = false;
};

/// All six brackets among distinct basis elements, compared exactly.
std::vector<BracketCheck> structure_constants_report();

/// Group action on solutions:
///   e^{i theta} (a + b t)^{-1/2} e^{i b x^2 / (4(a + b t))} psi0(x/(a + b t), (c + d t)/(a + b t)).
/// Composition is a right action: apply(g1, apply(g2, psi)) == apply(g2 * g1, psi).
/// Throws BranchError when a + b t <= 0.
Complex apply_group_action(const GroupElement& g, const SolutionSpec& inner, double x, double t);
Complex apply_group_action(const GroupElement& g, const FieldFunction& inner, double x, double t);

/// Element (a, b, 0, 1/a) with a = -b T_blow, whose scale a + b t = b (t - T_blow)
/// vanishes at the blow-up time. Requires b < 0 and T_blow > 0.
GroupElement blowup_element(double b, double t_blow);

/// psi_eps(x) = eps^{-1/2} exp(i b x^2 / (4 eps)) psi0(x / eps) for a stationary psi0.
/// Throws std::invalid_argument for eps <= 0 or an inadmissible (b, T_blow).
Complex epsilon_family(double b, double t_blow, const Stationary& psi0, double x, double eps);

/// |psi_eps(x)| = A |x|^{1/6} / (|x|^{2/3} + eps^{2/3} C), evenly extended to x < 0.
double epsilon_family_modulus(double amplitude, double offset_c, double x, double eps);

}  // namespace vcnls
