// cli.hpp
// The command front end, written as library functions so the binary
// stays a thin argument parser and tests can drive commands in-process.
// Exit codes: 0 success, 2 configuration/usage error, 3 data error.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qardns/config.hpp"

namespace qardns::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

// Default output root when --output is absent; falls back to "runs".
inline constexpr const char* kOutputRootEnv = "QARDNS_OUTPUT_ROOT";

// Command-line values that were explicitly given; unset fields keep the
// config-file (or default) value. Flags always win over the file.
struct FlagOverrides {
  std::optional<long> episodes;
  std::optional<std::uint64_t> seed;
  std::optional<int> size_x, size_y, size_z;
  std::optional<int> goal_x, goal_y, goal_z;
  std::optional<double> obstacle_fraction;
  std::optional<int> obstacle_refresh_every;
  std::optional<int> max_steps;
  std::optional<int> n_qubits;
  std::optional<int> shots;
  std::optional<std::string> learner;
  std::optional<std::string> output_dir;
  std::optional<std::string> stage_override;
};

// defaults -> config file (when given) -> flags. Throws ConfigError.
config::RunConfig resolve_config(const std::optional<std::string>& config_path,
                                 const FlagOverrides& flags);

// The directory a run writes into: the configured output_dir, else
// $QARDNS_OUTPUT_ROOT (or "runs") / "<learner>-seed<seed>".
std::string resolve_output_dir(const config::RunConfig& config);

// Executes one run (or one per sweep seed, in parallel, each in its own
// seed directory) and writes episodes.csv, summary.txt, summary.json,
// and run_config.txt.
int cmd_run(const config::RunConfig& config,
            const std::vector<std::uint64_t>& sweep_seeds, std::ostream& out,
            std::ostream& err);

// Each input is either a completed run directory (episodes.csv inside)
// or a config file to execute first. Writes the Mann-Whitney report per
// agent to `report_path` and echoes it to `out`.
int cmd_compare(const std::string& input_a, const std::string& input_b,
                const std::string& report_path, std::ostream& out,
                std::ostream& err);

// Reads <run_dir>/episodes.csv and writes the four SVG plots next to it.
int cmd_plot(const std::string& run_dir, std::ostream& out,
             std::ostream& err);

}  // namespace qardns::cli
