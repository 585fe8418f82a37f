#include "omav/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>

#include "omav/control/gains_json.hpp"
#include "omav/core/morphology_json.hpp"
#include "omav/design/design_json.hpp"
#include "omav/sim/named_trajectories.hpp"

namespace omav::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void checkKeys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(fmt::format("{}: unknown key \"{}\"", where, key));
  }
}

Vec3 vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(what + " must be [x, y, z]");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

bool onOff(const json& j, const std::string& what) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "on") return true;
    if (s == "off") return false;
  }
  throw ConfigError(what + " must be true/false or \"on\"/\"off\"");
}

json envelopeToJson(const EnvelopeSection& e) {
  return {{"force", e.force}, {"torque", e.torque}, {"method", design::toString(e.method)},
          {"level", e.level}, {"hover", e.hover}};
}

json biasToJson(const allocation::BiasConfig& b) {
  return {{"enabled", b.enabled}, {"delta", b.delta}, {"colinearity_angle", b.colinearity_angle}};
}

allocation::BiasConfig biasFromJson(const json& j, allocation::BiasConfig b) {
  checkKeys(j, {"enabled", "delta", "colinearity_angle"}, "bias");
  if (j.contains("enabled")) b.enabled = onOff(j["enabled"], "bias.enabled");
  b.delta = j.value("delta", b.delta);
  b.colinearity_angle = j.value("colinearity_angle", b.colinearity_angle);
  return b;
}

json scanToJson(const allocation::ConditionScanOptions& s) {
  const Vec3& d = s.hover_direction;
  return {{"hover_direction", {d.x(), d.y(), d.z()}},
          {"extra_force", s.extra_force},
          {"bias", s.bias},
          {"bias_config", biasToJson(s.bias_config)},
          {"level", s.subdivision_level}};
}

}  // namespace

json parseJson(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is the 1-based offset of the offending character.
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError(fmt::format("{}:{}:{}: {}", source, line, column, what));
  }
}

json readJsonFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseJson(ss.str(), path.string());
}

json simConfigToJson(const sim::SimConfig& c) {
  const Vec3& o = c.initial_offset;
  return {{"dt_physics", c.dt_physics},
          {"dt_control", c.dt_control},
          {"sigma_accel", c.sigma_accel},
          {"sigma_gyro", c.sigma_gyro},
          {"use_estimator", c.use_estimator},
          {"sg_window", c.sg_window},
          {"sg_order", c.sg_order},
          {"controller", sim::toString(c.controller)},
          {"integrator_limits",
           {{"position", c.integrator_limits.position}, {"attitude", c.integrator_limits.attitude}}},
          {"bias", biasToJson(c.bias)},
          {"unwind", c.unwind},
          {"unload_gap", c.unload_gap},
          {"wound_arms", c.wound_arms},
          {"initial_offset", {o.x(), o.y(), o.z()}},
          {"tail_time", c.tail_time},
          {"divergence_threshold", c.divergence_threshold}};
}

sim::SimConfig simConfigFromJson(const json& j, sim::SimConfig c) {
  checkKeys(j,
            {"dt_physics", "dt_control", "sigma_accel", "sigma_gyro", "use_estimator", "sg_window",
             "sg_order", "controller", "integrator_limits", "bias", "unwind", "unload_gap",
             "wound_arms", "initial_offset", "tail_time", "divergence_threshold"},
            "simulation");
  c.dt_physics = j.value("dt_physics", c.dt_physics);
  c.dt_control = j.value("dt_control", c.dt_control);
  c.sigma_accel = j.value("sigma_accel", c.sigma_accel);
  c.sigma_gyro = j.value("sigma_gyro", c.sigma_gyro);
  c.use_estimator = j.value("use_estimator", c.use_estimator);
  c.sg_window = j.value("sg_window", c.sg_window);
  c.sg_order = j.value("sg_order", c.sg_order);
  if (j.contains("controller")) c.controller = sim::controllerFromString(j["controller"].get<std::string>());
  if (j.contains("integrator_limits")) {
    const json& l = j["integrator_limits"];
    checkKeys(l, {"position", "attitude"}, "simulation.integrator_limits");
    c.integrator_limits.position = l.value("position", c.integrator_limits.position);
    c.integrator_limits.attitude = l.value("attitude", c.integrator_limits.attitude);
  }
  if (j.contains("bias")) c.bias = biasFromJson(j["bias"], c.bias);
  c.unwind = j.value("unwind", c.unwind);
  c.unload_gap = j.value("unload_gap", c.unload_gap);
  c.wound_arms = j.value("wound_arms", c.wound_arms);
  if (j.contains("initial_offset")) c.initial_offset = vec3(j["initial_offset"], "initial_offset");
  c.tail_time = j.value("tail_time", c.tail_time);
  c.divergence_threshold = j.value("divergence_threshold", c.divergence_threshold);
  return c;
}

RunConfig configFromJson(const json& j, const Overrides& ov, const fs::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  try {
    checkKeys(j,
              {"seed", "morphology", "design", "envelope", "simulation", "gains", "trajectory",
               "trajectory_scale", "condition_scan"},
              "config");
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();

    if (j.contains("morphology")) {
      json m = j["morphology"];
      if (m.is_string()) {
        m = readJsonFile(resolve(base_dir, m.get<std::string>()));
        if (m.contains("morphology")) m = m["morphology"];  // a design result file
      }
      c.morphology = morphologyFromJson(m);
    }

    if (j.contains("design")) c.design = design::designProblemFromJson(j["design"]);

    if (j.contains("envelope")) {
      const json& e = j["envelope"];
      checkKeys(e, {"force", "torque", "method", "level", "hover"}, "envelope");
      c.envelope.force = e.value("force", c.envelope.force);
      c.envelope.torque = e.value("torque", c.envelope.torque);
      if (e.contains("method")) {
        c.envelope.method = design::envelopeMethodFromString(e["method"].get<std::string>());
      }
      c.envelope.level = e.value("level", c.envelope.level);
      c.envelope.hover = e.value("hover", c.envelope.hover);
    }

    if (j.contains("simulation")) c.sim = simConfigFromJson(j["simulation"], c.sim);
    if (j.contains("gains")) {
      const json& g = j["gains"];
      checkKeys(g, {"lqri", "pid", "allocation"}, "gains");
      if (g.contains("lqri")) c.sim.lqri = control::lqriGainsFromJson(g["lqri"], c.sim.lqri);
      if (g.contains("pid")) c.sim.pid = control::pidGainsFromJson(g["pid"], c.sim.pid);
      if (g.contains("allocation")) {
        c.sim.allocation = control::allocationGainsFromJson(g["allocation"], c.sim.allocation);
      }
    }

    if (j.contains("trajectory")) c.trajectory = j["trajectory"];
    c.trajectory_scale = j.value("trajectory_scale", c.trajectory_scale);

    if (j.contains("condition_scan")) {
      const json& s = j["condition_scan"];
      checkKeys(s, {"hover_direction", "extra_force", "bias", "bias_config", "level"},
                "condition_scan");
      if (s.contains("hover_direction")) {
        c.scan.hover_direction = vec3(s["hover_direction"], "hover_direction");
      }
      c.scan.extra_force = s.value("extra_force", c.scan.extra_force);
      if (s.contains("bias")) c.scan.bias = onOff(s["bias"], "condition_scan.bias");
      if (s.contains("bias_config")) c.scan.bias_config = biasFromJson(s["bias_config"], c.scan.bias_config);
      c.scan.subdivision_level = s.value("level", c.scan.subdivision_level);
    }

    if (ov.seed) c.seed = *ov.seed;
    if (ov.trajectory) c.trajectory = *ov.trajectory;
    if (ov.controller) c.sim.controller = sim::controllerFromString(*ov.controller);
    if (ov.bias) {
      c.sim.bias.enabled = *ov.bias;
      c.scan.bias = *ov.bias;
    }
    if (ov.unwind) {
      c.sim.unwind = true;
      c.sim.wound_arms = *ov.unwind;
    }
    if (ov.cost) c.design.cost = *ov.cost;
    c.sim.seed = c.seed;
    c.design.seed = c.seed;

    c.morphology.validate();
    c.design.validate();
    c.sim.validate();
    if (c.sim.wound_arms > c.morphology.numArms()) {
      throw ConfigError("wound arms exceed the number of arms");
    }
    if (c.envelope.level < 0 || c.envelope.level > 7) throw ConfigError("envelope.level must be in [0, 7]");
    if (c.scan.subdivision_level < 0 || c.scan.subdivision_level > 7) {
      throw ConfigError("condition_scan.level must be in [0, 7]");
    }
    if (!(c.scan.hover_direction.norm() > 0.0)) throw ConfigError("hover_direction must be non-zero");
    if (!(c.trajectory_scale > 0.0)) throw ConfigError("trajectory_scale must be positive");
    if (!c.trajectory.is_string() && !c.trajectory.is_object()) {
      throw ConfigError("trajectory must be a letter a..g, a file path or a waypoint object");
    }
    if (c.trajectory.is_string() && c.trajectory.get<std::string>().size() == 1 &&
        !sim::isNamedTrajectory(c.trajectory.get<std::string>())) {
      throw ConfigError("unknown trajectory \"" + c.trajectory.get<std::string>() + "\" (a..g)");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::exception& e) {
    // PreconditionError, std::invalid_argument and friends from the module parsers
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig loadConfig(const std::optional<fs::path>& path, const Overrides& overrides) {
  if (!path) return configFromJson(json::object(), overrides);
  const json j = readJsonFile(*path);
  return configFromJson(j, overrides, path->parent_path().empty() ? fs::path(".") : path->parent_path());
}

json toJson(const RunConfig& c) {
  json gains = {{"lqri", control::toJson(c.sim.lqri)},
                {"pid", control::toJson(c.sim.pid)},
                {"allocation", control::toJson(c.sim.allocation)}};
  return {{"seed", c.seed},
          {"morphology", morphologyToJson(c.morphology)},
          {"design", design::designProblemToJson(c.design)},
          {"envelope", envelopeToJson(c.envelope)},
          {"simulation", simConfigToJson(c.sim)},
          {"gains", gains},
          {"trajectory", c.trajectory},
          {"trajectory_scale", c.trajectory_scale},
          {"condition_scan", scanToJson(c.scan)}};
}

sim::Trajectory resolveTrajectory(const RunConfig& c) {
  try {
    if (c.trajectory.is_object()) return sim::trajectoryFromJson(c.trajectory);
    const std::string s = c.trajectory.get<std::string>();
    if (sim::isNamedTrajectory(s)) return sim::namedTrajectory(s[0], c.trajectory_scale);
    return sim::trajectoryFromJson(readJsonFile(resolve(c.base_dir, s)));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  }
}

}  // namespace omav::cli
