// SPDX-License-Identifier: MIT

#include "vcnls/symmetry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vcnls {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(Rational constant) {
    add_term({0, 0, 0}, constant);
}

Polynomial Polynomial::monomial(Rational coeff, int t_pow, int x_pow, int rho_pow) {
    if (t_pow < 0 || x_pow < 0 || rho_pow < 0) {
        throw std::invalid_argument("monomial exponents must be non-negative");
    }
    Polynomial p;
    p.add_term({t_pow, x_pow, rho_pow}, coeff);
    return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational Polynomial::coefficient(int t_pow, int x_pow, int rho_pow) const {
    const auto it = terms_.find({t_pow, x_pow, rho_pow});
    return it == terms_.end() ? Rational{} : it->second;
}

int Polynomial::max_variable_degree() const noexcept {
    int deg = 0;
    for (const auto& [e, c] : terms_) {
        for (int k : e) deg = std::max(deg, k);
    }
    return deg;
}

Polynomial Polynomial::derivative(Var v) const {
    Polynomial out;
    for (const auto& [e, c] : terms_) {
        if (e[v] == 0) continue;
        Exponents d = e;
        --d[v];
        out.add_term(d, c * Rational(e[v]));
    }
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        }
    }
    return out;
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
    Polynomial out;
    for (const auto& [e, c] : p.terms_) out.add_term(e, s * c);
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    static constexpr const char* names[] = {"t", "x", "rho"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        const bool constant = e == Exponents{0, 0, 0};
        if (constant || c != Rational(1)) os << "(" << c << ")";
        for (std::size_t v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            os << names[v];
            if (e[v] > 1) os << "^" << e[v];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(std::array<Polynomial, 4> coefficients) : coeffs_(std::move(coefficients)) {
    for (const auto& p : coeffs_) {
        if (p.max_variable_degree() > kMaxDegree) {
            throw std::overflow_error("vector field coefficient exceeds degree " +
                                      std::to_string(kMaxDegree) + ": " + p.str());
        }
    }
}

bool VectorField::is_zero() const noexcept {
    for (const auto& p : coeffs_) {
        if (!p.is_zero()) return false;
    }
    return true;
}

Polynomial VectorField::apply(const Polynomial& f) const {
    return coeffs_[kDt] * f.derivative(Polynomial::kT) + coeffs_[kDx] * f.derivative(Polynomial::kX) +
           coeffs_[kDrho] * f.derivative(Polynomial::kRho);
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    std::array<Polynomial, 4> c;
    for (std::size_t k = 0; k < 4; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
    return VectorField(std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
    return a + Rational(-1) * b;
}

VectorField operator*(const Rational& s, const VectorField& v) {
    std::array<Polynomial, 4> c;
    for (std::size_t k = 0; k < 4; ++k) c[k] = s * v.coeffs_[k];
    return VectorField(std::move(c));
}

std::string VectorField::str() const {
    static constexpr const char* names[] = {"d_t", "d_x", "d_rho", "d_omega"};
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < 4; ++k) {
        if (coeffs_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "[" << coeffs_[k].str() << "] " << names[k];
    }
    return first ? "0" : os.str();
}

namespace generators {

namespace {
const Polynomial t = Polynomial::variable(Polynomial::kT);
const Polynomial x = Polynomial::variable(Polynomial::kX);
const Polynomial rho = Polynomial::variable(Polynomial::kRho);
}  // namespace

VectorField time_translation() {
    return VectorField(std::array<Polynomial, 4>{Polynomial(1), {}, {}, {}});
}

VectorField dilation() {
    return VectorField(std::array<Polynomial, 4>{Rational(2) * t, x, Rational(-1, 2) * rho, Polynomial()});
}

VectorField conformal() {
    return VectorField(
        std::array<Polynomial, 4>{t * t, x * t, Rational(-1, 2) * t * rho, Rational(1, 4) * x * x});
}

VectorField gauge() {
    return VectorField(std::array<Polynomial, 4>{Polynomial(), Polynomial(), Polynomial(), Polynomial(1)});
}

}  // namespace generators

VectorField lie_bracket(const VectorField& v1, const VectorField& v2) {
    std::array<Polynomial, 4> c;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto comp = static_cast<VectorField::Component>(k);
        c[k] = v1.apply(v2[comp]) - v2.apply(v1[comp]);
    }
    return VectorField(std::move(c));
}

std::optional<std::array<Rational, 4>> decompose(const VectorField& v) {
    // Each basis element owns a distinguishing monomial: 1 in d_t (T), t in
    // d_t (D, coefficient 2), t^2 in d_t (C) and 1 in d_omega (W).
    std::array<Rational, 4> coords{
        v[VectorField::kDt].coefficient(0, 0, 0),
        v[VectorField::kDt].coefficient(1, 0, 0) / Rational(2),
        v[VectorField::kDt].coefficient(2, 0, 0),
        v[VectorField::kDomega].coefficient(0, 0, 0),
    };
    if (combine(coords) != v) return std::nullopt;
    return coords;
}

VectorField combine(const std::array<Rational, 4>& coords) {
    return coords[0] * generators::time_translation() + coords[1] * generators::dilation() +
           coords[2] * generators::conformal() + coords[3] * generators::gauge();
}

std::vector<BracketCheck> structure_constants_report() {
    using namespace generators;
    const VectorField T = time_translation(), D = dilation(), C = conformal(), W = gauge();
    const VectorField zero;
    struct Row {
        const char* lhs;
        const VectorField* a;
        const VectorField* b;
        const char* expected;
        VectorField reference;
    };
    const Row rows[] = {
        {"[T,D]", &T, &D, "2T", Rational(2) * T},
        {"[T,C]", &T, &C, "D", D},
        {"[D,C]", &D, &C, "2C", Rational(2) * C},
        {"[W,T]", &W, &T, "0", zero},
        {"[W,D]", &W, &D, "0", zero},
        {"[W,C]", &W, &C, "0", zero},
    };
    std::vector<BracketCheck> out;
    for (const auto& r : rows) {
        BracketCheck check{r.lhs, r.expected, lie_bracket(*r.a, *r.b), r.reference, false};
        check.holds = check.computed == check.reference;
        out.push_back(std::move(check));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Group action

Complex apply_group_action(const GroupElement& g, const FieldFunction& inner, double x, double t) {
    const double scale = g.scale_at(t);
    if (!(scale > 0.0)) {
        throw BranchError("group action requires a + b t > 0 (got " + std::to_string(scale) +
                          " at t = " + std::to_string(t) + ")");
    }
    const double chirp = g.b() * x * x / (4.0 * scale) + g.theta();
    const Complex value = inner(x / scale, g.mapped_time(t));
    return std::polar(1.0 / std::sqrt(scale), chirp) * value;
}

Complex apply_group_action(const GroupElement& g, const SolutionSpec& inner, double x, double t) {
    const double scale = g.scale_at(t);
    if (!(scale > 0.0)) {
        throw BranchError("group action requires a + b t > 0 (got " + std::to_string(scale) +
                          " at t = " + std::to_string(t) + ")");
    }
    const double chirp = g.b() * x * x / (4.0 * scale) + g.theta();
    return std::polar(1.0 / std::sqrt(scale), chirp) * inner(x / scale, g.mapped_time(t));
}

GroupElement blowup_element(double b, double t_blow) {
    if (!(b < 0.0) || !(t_blow > 0.0)) {
        throw std::invalid_argument("blow-up element requires b < 0 and T_blow > 0");
    }
    const double a = -b * t_blow;
    return GroupElement(a, b, 0.0, 1.0 / a);
}

Complex epsilon_family(double b, double t_blow, const Stationary& psi0, double x, double eps) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("epsilon family requires eps > 0");
    }
    blowup_element(b, t_blow);  // validates (b, T_blow)
    return std::polar(1.0 / std::sqrt(eps), b * x * x / (4.0 * eps)) * eval_stationary(psi0, x / eps);
}

double epsilon_family_modulus(double amplitude, double offset_c, double x, double eps) {
    const double ax = std::abs(x);
    return amplitude * std::pow(ax, 1.0 / 6.0) /
           (two_thirds_power(ax) + two_thirds_power(eps) * offset_c);
}

}  // namespace vcnls
