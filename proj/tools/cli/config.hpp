// SPDX-License-Identifier: MIT
//
// Experiment configuration: one JSON document with an optional section per
// subcommand. Every section is validated against a closed schema (unknown
// keys are rejected) and serialises back to the same document.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcnls/analysis.hpp"
#include "vcnls/core.hpp"
#include "vcnls/residual.hpp"
#include "vcnls/solutions.hpp"

namespace vcnls::cli {

/// Schema violation or unreadable config (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroupConfig {
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    std::optional<double> d;  ///< derived as (1 + b c)/a when absent
    double theta = 0.0;

    GroupElement element() const;
    bool operator==(const GroupConfig&) const = default;
};

/// Closed-form solution selector.
struct SolutionConfig {
    std::string family = "stationary";  ///< stationary | truncated | transformed
    int epsilon = 1;
    double gamma = 1.0;
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 0.0;
    double k4 = 0.0;                    ///< truncated only
    std::optional<GroupConfig> group;   ///< transformed only (applied to the stationary profile)

    SolutionSpec build() const;
    /// Time where the family becomes singular (inf if never for t > 0).
    double singular_time() const;
    bool operator==(const SolutionConfig&) const = default;
};

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;

    QuadratureSettings settings() const { return {abs_tol, rel_tol, max_subdivisions, std::nullopt}; }
    bool operator==(const QuadratureConfig&) const = default;
};

struct LieCheckConfig {
    bool jacobi = true;
    bool operator==(const LieCheckConfig&) const = default;
};

struct VerifySolutionConfig {
    SolutionConfig solution;
    /// Potential overrides for control experiments; default is the
    /// solution's own h1 = 5/36, h2 = 0.
    std::optional<double> h1;
    std::optional<double> h2;
    std::vector<ProbePoint> probes{{0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {4.0, 0.0}};
    std::vector<double> spacings{0.04, 0.02, 0.01, 0.005};
    double dt_ratio = 1.0;
    double order_min = 1.8;
    double order_max = 2.2;

    bool operator==(const VerifySolutionConfig&) const = default;
};

struct BlowupScanConfig {
    double amplitude = 1.0;
    double offset_c = 1.0;
    std::vector<double> p{3.0, 4.0, 6.0};
    std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3};
    double slope_rel_tol = 0.01;
    double linf_slope_tol = 0.005;
    double argmax_tol = 1e-6;
    QuadratureConfig quadrature;

    bool operator==(const BlowupScanConfig&) const = default;
};

struct BumpConfig {
    double center = 0.0;
    double radius = 1.0;
    double peak = 1.0;  ///< phi(center); 0 gives the zero test function

    BumpFunction bump() const;
    bool operator==(const BumpConfig&) const = default;
};

struct DistributionConfig {
    double p = 4.0;
    double amplitude = 1.0;
    double offset_c = 1.0;
    std::vector<BumpConfig> bumps{{0.0, 1.0, 1.0}, {1.5, 0.5, 1.0}};
    std::vector<double> eps{1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    /// Relative deviation from K phi(0) allowed at the smallest eps.
    double final_rel_tol = 0.01;
    /// For bumps with phi(0) = 0: final pairing / first pairing must drop below this.
    double decay_ratio = 1e-4;
    QuadratureConfig quadrature;

    bool operator==(const DistributionConfig&) const = default;
};

struct SimulateConfig {
    SolutionConfig solution{"truncated", 1, 1.0, 1.0, 1.0, 0.0, -1.0, std::nullopt};
    double x_min = 0.05;
    double x_max = 10.0;
    double spacing = 1e-3;
    double dt = 1e-5;
    /// Absolute end time; ignored when t_final_fraction is set.
    double t_final = 0.5;
    /// End time as a fraction of the solution's singular time.
    std::optional<double> t_final_fraction = 0.5;
    std::vector<double> norm_track{2.0, 4.0};
    std::size_t record_every = 500;
    std::vector<double> snapshot_times{0.0};
    double error_tol = 1e-3;
    double norm_rel_tol = 0.05;

    double resolved_t_final() const;
    bool operator==(const SimulateConfig&) const = default;
};

struct ExperimentConfig {
    LieCheckConfig lie_check;
    VerifySolutionConfig verify_solution;
    BlowupScanConfig blowup_scan;
    DistributionConfig distribution_test;
    SimulateConfig simulate;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError on unknown keys, wrong types or violated constraints.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace vcnls::cli
