#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "omav/cli/config.hpp"

namespace omav::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitDiverged = 3,
  kExitInfeasible = 4,
};

/// Each command writes its files and manifest_<command>.json into `out`, prints a
/// short report to `log` and returns an exit code.
int cmdOptimize(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmdEnvelope(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmdSimulate(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);
int cmdConditionScan(const RunConfig& config, const std::filesystem::path& out, std::ostream& log);

/// Loads the config, dispatches by name ("optimize", "envelope", "simulate",
/// "condition-scan") and maps exceptions to exit codes; diagnostics go to `err`.
int runCommand(const std::string& command, const std::optional<std::filesystem::path>& config_path,
               const Overrides& overrides, const std::filesystem::path& out, std::ostream& log,
               std::ostream& err);

}  // namespace omav::cli
