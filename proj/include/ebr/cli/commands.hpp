#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ebr/cli/config.hpp"
#include "ebr/protocol.hpp"

namespace ebr::cli {

enum ExitCode : int { kSuccess = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3 };

enum class OutputFormat { Csv, Json };

struct CommandOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    std::optional<double> grid_step;
    std::optional<OutputFormat> format;
};

struct RunRecord {
    std::string scenario;
    StageId stage;
    double T;
    double epsilon;
    double p;
    double A_A;
    double A_B;
    double concurrence;
    double probability;
    double cumulative_probability;
};

inline constexpr const char *kRunRecordHeader =
    "scenario,stage,T,epsilon,p,A_A,A_B,concurrence,probability,cumulative_probability";

std::string run_records_to_csv(const std::vector<RunRecord> &rows);

/// Closed-form model under test in oracle-check; swappable so a harness can
/// inject a faulty model.
using ProtocolModel = std::function<StageOutput(const ChannelConfig &, StageId)>;

struct OracleGrid {
    double grid_step = 0.05;
    std::vector<double> epsilons{1.0, 0.25};
    std::vector<double> partial_p{0.5};
    double tolerance = 1e-10;
};

struct OracleReport {
    double max_state_deviation = 0.0;
    double max_probability_deviation = 0.0;
    std::size_t compared = 0;
    std::size_t skipped = 0;
    bool passed = true;
    std::string worst_case;
};

OracleReport run_oracle_check(const OracleGrid &grid, const ProtocolModel &model, std::ostream &log);

int cmd_run(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_sweep(const CommandOptions &opts, std::ostream &out, std::ostream &err);
int cmd_oracle_check(const CommandOptions &opts, std::ostream &out, std::ostream &err,
                     const ProtocolModel &model = run_stage);
int cmd_tomography(const CommandOptions &opts, std::ostream &out, std::ostream &err);

/// Maps a library error onto the process exit status.
int exit_code_for(const std::exception &e);

}  // namespace ebr::cli
