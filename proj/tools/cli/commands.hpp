// SPDX-License-Identifier: MIT
//
// Subcommands of the vcnls tool. Each one produces a ResultBundle that is
// written as results.json and results.txt into the output directory, plus
// command-specific CSV files.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/config.hpp"

namespace vcnls::cli {

enum class ExitCode : int { Pass = 0, CheckFailure = 1, ConfigError = 2, NumericalHalt = 3 };

/// Where a reference value comes from.
enum class Provenance {
    ClosedForm,         ///< exact law or value of the model
    Trivial,            ///< identity that holds for any implementation (antisymmetry, zero field)
    IndependentOracle,  ///< value recomputed by a separate route
};

const char* to_string(Provenance p) noexcept;

struct CheckRecord {
    std::string name;
    nlohmann::json inputs;
    nlohmann::json computed;
    nlohmann::json reference;
    Provenance provenance = Provenance::ClosedForm;
    double tolerance = 0.0;
    bool pass = false;
};

struct ResultBundle {
    std::string command;
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;
    nlohmann::json data = nlohmann::json::object();
    ExitCode exit_code = ExitCode::Pass;

    void add(CheckRecord record);
    bool all_pass() const noexcept;
    /// Sets exit_code from the checks unless it already records an error.
    void finalize();

    nlohmann::json to_json() const;
    std::string to_text() const;
};

ResultBundle cmd_lie_check(const LieCheckConfig& config, const std::filesystem::path& out);
ResultBundle cmd_verify_solution(const VerifySolutionConfig& config, const std::filesystem::path& out);
ResultBundle cmd_blowup_scan(const BlowupScanConfig& config, const std::filesystem::path& out);
ResultBundle cmd_distribution_test(const DistributionConfig& config, const std::filesystem::path& out);
ResultBundle cmd_simulate(const SimulateConfig& config, const std::filesystem::path& out);

/// Runs `subcommand` against `config` and writes results.{json,txt}.
/// Errors raised inside the command are mapped onto exit codes 2 and 3.
ResultBundle dispatch(const std::string& subcommand, const ExperimentConfig& config,
                      const std::filesystem::path& out);

/// "snapshot_t0.250000.csv"
std::string snapshot_filename(double t);

/// Full command line (without the program name). Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace vcnls::cli
