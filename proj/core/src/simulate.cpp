// SPDX-License-Identifier: MIT

#include "vcnls/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vcnls/quadrature.hpp"

namespace vcnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// (1 - e^{-k tau}) / k, continuous at k = 0.
double relaxation(double k, double tau) {
    const double z = k * tau;
    if (std::abs(z) < 1e-8) return tau * (1.0 - 0.5 * z);
    return -std::expm1(-z) / k;
}

// log(1 + a) / g with a = g m0 F, continuous at g = 0.
double log_ratio(double g, double m0, double f) {
    const double a = g * m0 * f;
    if (std::abs(a) < 1e-12) return m0 * f * (1.0 - 0.5 * a);
    return std::log1p(a) / g;
}

}  // namespace

void SimulationConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("t_final must be finite and >= 0");
    }
    for (double p : norm_track) {
        if (!(p > 0.0)) throw std::invalid_argument("tracked norm exponents must be positive");
    }
    if (record_every == 0) throw std::invalid_argument("record_every must be >= 1");
    for (double t : snapshot_times) {
        if (t < 0.0 || t > t_final * (1.0 + 1e-12)) {
            throw std::invalid_argument("snapshot time outside [0, t_final]");
        }
    }
    if (!(splitting_safety > 0.0)) throw std::invalid_argument("splitting_safety must be positive");
}

std::size_t SimulationConfig::steps() const {
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

double SimulationConfig::effective_dt() const {
    const std::size_t n = steps();
    return n == 0 ? dt : t_final / static_cast<double>(n);
}

SplitStepSolver::SplitStepSolver(SimulationConfig config)
    : config_(std::move(config)), dt_(config_.effective_dt()) {
    config_.validate();
    const std::size_t interior = config_.grid.size() - 2;
    const double h = config_.grid.spacing();
    const double r = dt_ / (2.0 * h * h);
    const Complex diag{1.0, 2.0 * r};
    off_diag_ = Complex{0.0, -r};
    c_prime_.resize(interior);
    denom_.resize(interior);
    // Forward sweep of the Thomas algorithm depends only on the matrix.
    denom_[0] = diag;
    c_prime_[0] = off_diag_ / denom_[0];
    for (std::size_t j = 1; j < interior; ++j) {
        denom_[j] = diag - off_diag_ * c_prime_[j - 1];
        c_prime_[j] = off_diag_ / denom_[j];
    }
}

Complex SplitStepSolver::local_flow(Complex psi, double x, double tau) const noexcept {
    const double m0 = std::norm(psi);
    const auto& c = config_.coefficients;
    // |psi|^2 obeys the Bernoulli equation m' = -g m^2 - k m.
    const double g = 2.0 * c.cubic.imag() / x;
    const double k = 2.0 * c.potential.imag() / (x * x);
    const double relax = relaxation(k, tau);
    const double denom = 1.0 + g * m0 * relax;
    const double amplitude = std::sqrt(std::exp(-k * tau) / denom);
    const double phase = c.cubic.real() / x * log_ratio(g, m0, relax) + c.potential.real() / (x * x) * tau;
    return psi * std::polar(amplitude, phase);
}

double SplitStepSolver::max_local_rate(const ComplexField& state) const noexcept {
    const auto& c = config_.coefficients;
    double rate = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double x = state.grid().node(i);
        rate = std::max(rate, std::abs(c.cubic) * std::norm(state[i]) / x +
                                  std::abs(c.potential) / (x * x));
    }
    return rate;
}

void SplitStepSolver::free_step(std::vector<Complex>& psi, Complex left_new, Complex right_new) const {
    const std::size_t n = psi.size();
    const std::size_t interior = n - 2;
    const double h = config_.grid.spacing();
    const Complex ir{0.0, dt_ / (2.0 * h * h)};

    std::vector<Complex> rhs(interior);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        rhs[j - 1] = psi[j] + ir * (psi[j + 1] - 2.0 * psi[j] + psi[j - 1]);
    }
    rhs.front() -= off_diag_ * left_new;
    rhs.back() -= off_diag_ * right_new;

    rhs[0] /= denom_[0];
    for (std::size_t j = 1; j < interior; ++j) {
        rhs[j] = (rhs[j] - off_diag_ * rhs[j - 1]) / denom_[j];
    }
    for (std::size_t j = interior - 1; j-- > 0;) {
        rhs[j] -= c_prime_[j] * rhs[j + 1];
    }
    psi[0] = left_new;
    psi[n - 1] = right_new;
    std::copy(rhs.begin(), rhs.end(), psi.begin() + 1);
}

ComplexField SplitStepSolver::step(const ComplexField& state) const {
    if (!(state.grid() == config_.grid)) {
        throw std::invalid_argument("state grid does not match solver grid");
    }
    const auto& grid = config_.grid;
    const std::size_t n = grid.size();
    const double half = 0.5 * dt_;
    const double t_new = state.time() + dt_;

    std::vector<Complex> psi(state.values().begin(), state.values().end());
    for (std::size_t i = 0; i < n; ++i) psi[i] = local_flow(psi[i], grid.node(i), half);

    // Boundary data for the free step: the exact value at t_new pulled back
    // through the second local half step, so the composite step reproduces it.
    Complex left_exact{}, right_exact{};
    if (config_.boundary) {
        left_exact = config_.boundary(grid.x_min(), t_new);
        right_exact = config_.boundary(grid.x_max(), t_new);
    }
    free_step(psi, local_flow(left_exact, grid.x_min(), -half),
              local_flow(right_exact, grid.x_max(), -half));

    for (std::size_t i = 0; i < n; ++i) psi[i] = local_flow(psi[i], grid.node(i), half);
    psi.front() = left_exact;
    psi.back() = right_exact;

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(psi[i].real()) || !std::isfinite(psi[i].imag())) {
            std::ostringstream msg;
            msg << "non-finite value at x = " << grid.node(i) << " while stepping to t = " << t_new;
            throw NumericalHalt(msg.str(), t_new);
        }
    }
    return ComplexField(grid, std::move(psi), t_new);
}

ComplexField step(const ComplexField& state, const SimulationConfig& config) {
    return SplitStepSolver(config).step(state);
}

double relative_l2_error(const ComplexField& field, const FieldFunction& reference) {
    const auto& grid = field.grid();
    double diff = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const double w = (i == 0 || i + 1 == field.size()) ? 0.5 : 1.0;
        const Complex r = reference(grid.node(i), field.time());
        diff += w * std::norm(field[i] - r);
        ref += w * std::norm(r);
    }
    return std::sqrt(diff / ref);
}

double exact_lp_norm_on_domain(const FieldFunction& f, double t, double p, const SpatialGrid& grid) {
    const auto integrand = [&](double x) { return std::pow(std::abs(f(x, t)), p); };
    const auto r = quadrature::integrate_adaptive_or_throw(integrand, grid.x_min(), grid.x_max(),
                                                           {1e-14, 1e-11, 20000});
    return std::pow(r.value, 1.0 / p);
}

double Trajectory::final_error() const noexcept {
    return exact_error_series.empty() ? kNaN : exact_error_series.back().rel_l2_error;
}

Trajectory run(const SimulationConfig& config, const FieldFunction& initial,
               const std::optional<FieldFunction>& reference) {
    const SplitStepSolver solver(config);
    const std::size_t steps = config.steps();
    const double dt = solver.dt();

    std::vector<std::size_t> snapshot_steps;
    for (double t : config.snapshot_times) {
        snapshot_steps.push_back(static_cast<std::size_t>(std::llround(t / dt)));
    }

    Trajectory traj;
    std::vector<NormSample> latest;
    const auto record = [&](const ComplexField& state) {
        latest.clear();
        for (double p : config.norm_track) {
            NormSample s{state.time(), p, state.lp_norm(p), kNaN, kNaN};
            if (reference) {
                s.exact_norm = exact_lp_norm_on_domain(*reference, state.time(), p, state.grid());
                s.rel_err = std::abs(s.norm - s.exact_norm) / s.exact_norm;
            }
            latest.push_back(s);
            traj.norm_series.push_back(s);
        }
        if (reference) {
            traj.exact_error_series.push_back({state.time(), relative_l2_error(state, *reference)});
        }
    };
    const auto wants_snapshot = [&](std::size_t k) {
        return std::find(snapshot_steps.begin(), snapshot_steps.end(), k) != snapshot_steps.end();
    };

    ComplexField state = ComplexField::sample(config.grid, initial, 0.0);
    if (dt * solver.max_local_rate(state) > config.splitting_safety) {
        std::ostringstream msg;
        msg << "dt * max local rate = " << dt * solver.max_local_rate(state)
            << " exceeds splitting_safety " << config.splitting_safety;
        traj.warnings.push_back(msg.str());
    }
    record(state);
    if (wants_snapshot(0) && steps > 0) traj.snapshots.push_back(state);

    for (std::size_t k = 1; k <= steps; ++k) {
        try {
            state = solver.step(state);
        } catch (const NumericalHalt& halt) {
            traj.halt = HaltInfo{halt.time(), halt.what(), latest};
            traj.snapshots.push_back(state);
            return traj;
        }
        if (k % config.record_every == 0 || k == steps) record(state);
        if (wants_snapshot(k) && k != steps) traj.snapshots.push_back(state);
    }
    traj.snapshots.push_back(state);
    return traj;
}

}  // namespace vcnls
