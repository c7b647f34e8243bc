// SPDX-License-Identifier: MIT
//
// Strang-split time integration of the canonical equation on a truncated
// interval [x_min, x_max] with Dirichlet data taken from a known field:
//
//   half step   i psi_t = -[c |psi|^2 / x + q / x^2] psi   (exact per node)
//   full step   i psi_t = -psi_xx                        (Crank-Nicolson)
//   half step   local flow again
//
// with c = eps + i gamma and q = h1 + i h2.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcnls/core.hpp"

namespace vcnls {

/// Coefficients of the local terms. Decoupled from EquationParameters so the
/// free equation (c = q = 0) can be integrated with the same machinery.
struct PdeCoefficients {
    Complex cubic;
    Complex potential;

    static PdeCoefficients from(const EquationParameters& p) { return {p.cubic(), p.potential()}; }
    static PdeCoefficients free() { return {}; }
};

/// Thrown by a step that produced non-finite values.
class NumericalHalt : public std::runtime_error {
public:
    NumericalHalt(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

struct SimulationConfig {
    PdeCoefficients coefficients;
    SpatialGrid grid{0.05, 10.0, 9951};
    double dt = 1e-5;
    double t_final = 0.0;
    /// Dirichlet data at x_min and x_max; empty means homogeneous.
    FieldFunction boundary;
    /// Exponents p of the tracked on-domain L_p norms.
    std::vector<double> norm_track{2.0, 4.0};
    /// Norms and errors are recorded every `record_every` steps (and at t_final).
    std::size_t record_every = 100;
    /// Snapshot times; each is rounded to the nearest step.
    std::vector<double> snapshot_times;
    /// Upper bound on dt * max_x |local rate| (phase rotation per step from the
    /// local terms), checked against the initial state. Exceeding it only
    /// produces a warning: the scheme is unconditionally stable.
    double splitting_safety = 0.5;

    /// Throws std::invalid_argument on dt <= 0, t_final < 0, non-positive p,
    /// record_every == 0, or snapshot times outside [0, t_final].
    void validate() const;
    /// Number of steps; dt is adjusted to t_final / steps so the run lands on t_final.
    std::size_t steps() const;
    double effective_dt() const;
};

/// One Strang step from state.time() to state.time() + dt.
class SplitStepSolver {
public:
    explicit SplitStepSolver(SimulationConfig config);

    const SimulationConfig& config() const noexcept { return config_; }
    double dt() const noexcept { return dt_; }

    /// Throws NumericalHalt on non-finite output.
    ComplexField step(const ComplexField& state) const;

    /// Exact local flow over tau (negative tau runs it backwards).
    Complex local_flow(Complex psi, double x, double tau) const noexcept;

    /// Largest local rate |c| |psi|^2 / x + |q| / x^2 over the field.
    double max_local_rate(const ComplexField& state) const noexcept;

private:
    void free_step(std::vector<Complex>& psi, Complex left_new, Complex right_new) const;

    SimulationConfig config_;
    double dt_;
    // Thomas factorisation of (I - i r T) on the interior nodes.
    std::vector<Complex> c_prime_;
    std::vector<Complex> denom_;
    Complex off_diag_;
};

/// Convenience wrapper: one step with a freshly built solver.
ComplexField step(const ComplexField& state, const SimulationConfig& config);

struct NormSample {
    double t = 0.0;
    double p = 0.0;
    double norm = 0.0;
    double exact_norm = 0.0;  ///< NaN without a reference
    double rel_err = 0.0;     ///< NaN without a reference
};

struct ErrorSample {
    double t = 0.0;
    double rel_l2_error = 0.0;
};

struct HaltInfo {
    double time = 0.0;
    std::string diagnostic;
    std::vector<NormSample> last_norms;
};

struct Trajectory {
    std::vector<ComplexField> snapshots;
    std::vector<NormSample> norm_series;
    std::vector<ErrorSample> exact_error_series;
    std::vector<std::string> warnings;
    std::optional<HaltInfo> halt;

    /// Error at the last recorded time (NaN when no reference was given).
    double final_error() const noexcept;
    const ComplexField& final_state() const { return snapshots.back(); }
};

/// Integrates from t = 0 to config.t_final. The final state is always the
/// last snapshot. A NumericalHalt is caught and reported in Trajectory::halt.
Trajectory run(const SimulationConfig& config, const FieldFunction& initial,
               const std::optional<FieldFunction>& reference = std::nullopt);

/// Discrete (trapezoid) relative L2 distance to `reference` on the grid.
double relative_l2_error(const ComplexField& field, const FieldFunction& reference);

/// Adaptive-quadrature integral_{x_min}^{x_max} |f(x, t)|^p dx, raised to 1/p.
double exact_lp_norm_on_domain(const FieldFunction& f, double t, double p, const SpatialGrid& grid);

}  // namespace vcnls
