#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "omav/allocation/condition_scan.hpp"
#include "omav/core/morphology.hpp"
#include "omav/design/envelope.hpp"
#include "omav/design/optimizer.hpp"
#include "omav/sim/simulator.hpp"

namespace omav::cli {

/// Anything wrong with the configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Command-line flags that take precedence over the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> trajectory;  // a..g or a JSON file
  std::optional<std::string> controller;  // lqri | pid
  std::optional<bool> bias;
  std::optional<int> unwind;  // number of arms starting at alpha = 2 pi
  std::optional<int> cost;
};

struct EnvelopeSection {
  bool force = true;
  bool torque = true;
  design::EnvelopeMethod method = design::EnvelopeMethod::kAllocation;
  int level = 3;
  bool hover = true;  // hover efficiency over all gravity directions
};

/// Top-level keys: seed, morphology (object or path), design, envelope, simulation,
/// gains {lqri, pid, allocation}, trajectory (a..g, path or inline waypoints),
/// trajectory_scale, condition_scan.
struct RunConfig {
  std::uint64_t seed = 1;
  Morphology morphology = Morphology::hexarotor();
  design::DesignProblem design;
  EnvelopeSection envelope;
  sim::SimConfig sim;
  nlohmann::json trajectory = "a";  // letter, file path, or waypoint object
  double trajectory_scale = 1.0;
  allocation::ConditionScanOptions scan;
  std::filesystem::path base_dir = ".";  // relative paths resolve against this
};

/// Parses JSON text; syntax errors become ConfigError("<source>:<line>:<column>: ...").
nlohmann::json parseJson(const std::string& text, const std::string& source);
nlohmann::json readJsonFile(const std::filesystem::path& path);

RunConfig configFromJson(const nlohmann::json& j, const Overrides& overrides = {},
                         const std::filesystem::path& base_dir = ".");
/// No path: defaults plus overrides.
RunConfig loadConfig(const std::optional<std::filesystem::path>& path,
                     const Overrides& overrides = {});

/// Fully resolved configuration; configFromJson(toJson(c)) reproduces c.
nlohmann::json toJson(const RunConfig& c);

nlohmann::json simConfigToJson(const sim::SimConfig& c);
sim::SimConfig simConfigFromJson(const nlohmann::json& j, sim::SimConfig base = {});

sim::Trajectory resolveTrajectory(const RunConfig& c);

}  // namespace omav::cli
