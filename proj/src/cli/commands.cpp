#include "omav/cli/commands.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "omav/cli/manifest.hpp"
#include "omav/design/design_json.hpp"
#include "omav/sim/stats.hpp"

namespace omav::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string envelopeCsv(const design::EnvelopeMetrics& e) {
  std::ostringstream ss;
  design::writeEnvelopeCsv(ss, e);
  return ss.str();
}

std::string timelineCsv(const std::vector<sim::TimePoint>& points, const char* name) {
  std::string s = fmt::format("t,{}\n", name);
  for (const auto& p : points) s += fmt::format("{:.10g},{:.10g}\n", p.time, p.value);
  return s;
}

json hoverJson(const design::HoverRange& h) {
  return {{"min", h.min}, {"max", h.max}, {"feasible_directions", h.feasible},
          {"directions", h.total}};
}

void finish(const OutputSet& out, const std::string& command, const std::string& status,
            const RunConfig& c, std::ostream& log) {
  const json manifest = makeManifest(command, status, c.seed, toJson(c), out.files());
  const fs::path path = writeManifest(out, manifest);
  log << fmt::format("manifest {} content_hash {}\n", path.string(),
                     manifest["content_hash"].get<std::string>());
}

void printDesign(const design::DesignResult& r, std::ostream& log) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  log << fmt::format("{:>4} {:>9} {:>9}\n", "arm", "theta[deg]", "beta[deg]");
  for (std::size_t i = 0; i < r.theta.size(); ++i) {
    log << fmt::format("{:>4} {:>9.2f} {:>9.2f}\n", i, r.theta[i] * kDeg, r.beta[i] * kDeg);
  }
  const Vec3 J = r.mass.inertia.diagonal();
  log << fmt::format("mass {:.3f} kg  J diag [{:.4f} {:.4f} {:.4f}] kg m^2\n", r.mass.mass, J.x(),
                     J.y(), J.z());
  log << fmt::format("force  min {:7.2f} N    max {:7.2f} N    volume {:.4g}\n", r.force.min,
                     r.force.max, r.force.volume);
  log << fmt::format("torque min {:7.2f} N m  max {:7.2f} N m  volume {:.4g}\n", r.torque.min,
                     r.torque.max, r.torque.volume);
  log << fmt::format("hover eta_f [{:.3f}, {:.3f}]  feasible {}/{}\n", r.hover.min, r.hover.max,
                     r.hover.feasible, r.hover.total);
  log << fmt::format("cost {:.6g}  f_min > m g: {}  evaluations {}\n", r.cost,
                     r.constraint_satisfied ? "yes" : "no", r.evaluations);
}

}  // namespace

int cmdOptimize(const RunConfig& c, const fs::path& out_dir, std::ostream& log) {
  OutputSet out(out_dir);
  const design::DesignResult r = design::optimize(c.design);
  log << fmt::format("optimize: cost {} ({} arms, l = {} m)\n", c.design.cost, c.design.num_arms,
                     c.design.arm_length);
  printDesign(r, log);
  out.write("design_result.json", dumpJson(design::designResultToJson(r)));
  out.write("force_envelope.csv", envelopeCsv(r.force));
  out.write("torque_envelope.csv", envelopeCsv(r.torque));
  const bool ok = r.feasible && r.constraint_satisfied;
  if (!ok) log << "infeasible: " << (r.message.empty() ? "f_min <= m g" : r.message) << "\n";
  finish(out, "optimize", ok ? "ok" : "infeasible", c, log);
  return ok ? kExitOk : kExitInfeasible;
}

int cmdEnvelope(const RunConfig& c, const fs::path& out_dir, std::ostream& log) {
  OutputSet out(out_dir);
  design::EnvelopeOptions opt;
  opt.method = c.envelope.method;
  opt.subdivision_level = c.envelope.level;
  json summary = {{"method", design::toString(c.envelope.method)},
                  {"mass", c.morphology.body.mass},
                  {"weight", c.morphology.body.mass * 9.81}};
  if (c.envelope.force) {
    opt.mode = design::WrenchMode::kForce;
    const auto e = design::computeEnvelope(c.morphology, opt);
    summary["force"] = design::envelopeSummaryToJson(e);
    out.write("force_envelope.csv", envelopeCsv(e));
    log << fmt::format("force  min {:8.3f} N    max {:8.3f} N    ratio {:.3f}\n", e.min, e.max,
                       e.min > 0.0 ? e.max / e.min : INFINITY);
  }
  if (c.envelope.torque) {
    opt.mode = design::WrenchMode::kTorque;
    const auto e = design::computeEnvelope(c.morphology, opt);
    summary["torque"] = design::envelopeSummaryToJson(e);
    out.write("torque_envelope.csv", envelopeCsv(e));
    log << fmt::format("torque min {:8.3f} N m  max {:8.3f} N m\n", e.min, e.max);
  }
  if (c.envelope.hover) {
    const auto h = design::hoverEfficiencyRange(design::hoverSphere(c.morphology, c.envelope.level));
    summary["hover_eta_f"] = hoverJson(h);
    log << fmt::format("hover eta_f [{:.4f}, {:.4f}]  feasible {}/{}\n", h.min, h.max, h.feasible,
                       h.total);
  }
  out.write("envelope.json", dumpJson(summary));
  finish(out, "envelope", "ok", c, log);
  return kExitOk;
}

int cmdSimulate(const RunConfig& c, const fs::path& out_dir, std::ostream& log) {
  const sim::Trajectory traj = resolveTrajectory(c);
  OutputSet out(out_dir);
  const sim::SimLog simlog = sim::runSimulation(c.sim, c.morphology, traj);

  std::ostringstream csv;
  sim::writeSimLogCsv(csv, simlog);
  out.write("sim_log.csv", csv.str());
  out.write("trajectory.json", dumpJson(sim::trajectoryToJson(traj)));
  out.write("eta_f_timeline.csv", timelineCsv(sim::efficiencyTimeline(simlog), "eta_f"));
  out.write("kappa_timeline.csv", timelineCsv(sim::conditionTimeline(simlog), "log_kappa"));

  json stats = {{"controller", sim::toString(c.sim.controller)},
                {"trajectory", c.trajectory},
                {"diverged", simlog.diverged},
                {"message", simlog.message},
                {"samples", simlog.rows.size()}};
  if (!simlog.rows.empty()) {
    const sim::TrackingStats ts = sim::trackingStats(simlog);
    stats["tracking"] = sim::toJson(ts);
    double eta_min = 1.0, kappa_max = 0.0, ep_max = 0.0;
    int kappa_inf = 0;
    for (const auto& r : simlog.rows) {
      eta_min = std::min(eta_min, r.eta_f);
      ep_max = std::max(ep_max, r.error.position.norm());
      if (std::isfinite(r.log_kappa)) {
        kappa_max = std::max(kappa_max, r.log_kappa);
      } else {
        ++kappa_inf;
      }
    }
    const auto& last = simlog.rows.back();
    const double end_alpha = last.alpha.cwiseAbs().maxCoeff();
    stats["duration"] = last.time - simlog.rows.front().time;
    stats["max_position_error"] = ep_max;
    stats["eta_f_min"] = eta_min;
    stats["log_kappa_max_finite"] = kappa_max;
    stats["log_kappa_infinite_samples"] = kappa_inf;
    stats["end_alpha"] = std::vector<double>(last.alpha.data(), last.alpha.data() + last.alpha.size());
    stats["end_max_abs_alpha"] = end_alpha;
    log << fmt::format("simulate: {} rows, |e_p| median {:.4g} m, max {:.4g} m, min eta_f {:.4f}\n",
                       simlog.rows.size(), ts.position_norm.median, ep_max, eta_min);
    if (c.sim.wound_arms > 0) {
      const bool unwound = end_alpha < std::numbers::pi;
      stats["unwind"] = {{"wound_arms", c.sim.wound_arms}, {"all_below_pi", unwound}};
      log << fmt::format("unwind: {} arms from 2 pi, end max |alpha| = {:.4f} rad, all |alpha| < pi: {}\n",
                         c.sim.wound_arms, end_alpha, unwound ? "yes" : "NO");
    }
  }
  out.write("stats.json", dumpJson(stats));
  if (simlog.diverged) log << "diverged: " << simlog.message << "\n";
  finish(out, "simulate", simlog.diverged ? "diverged" : "ok", c, log);
  return simlog.diverged ? kExitDiverged : kExitOk;
}

int cmdConditionScan(const RunConfig& c, const fs::path& out_dir, std::ostream& log) {
  OutputSet out(out_dir);
  const allocation::ConditionScan scan = allocation::conditionScan(c.morphology, c.scan);
  std::ostringstream csv;
  allocation::writeConditionCsv(csv, scan);
  out.write("kappa_grid.csv", csv.str());
  int infinite = 0;
  double max_finite = 0.0;
  for (const auto& s : scan.samples) {
    if (std::isfinite(s.log_kappa)) {
      max_finite = std::max(max_finite, s.log_kappa);
    } else {
      ++infinite;
    }
  }
  json summary = {{"bias", c.scan.bias},
                  {"directions", scan.samples.size()},
                  {"max_log_kappa", std::isfinite(scan.max_log_kappa) ? json(scan.max_log_kappa)
                                                                       : json("inf")},
                  {"max_finite_log_kappa", max_finite},
                  {"infinite_samples", infinite}};
  out.write("condition_scan.json", dumpJson(summary));
  log << fmt::format("condition-scan: bias {}, max log kappa {}, {} of {} directions singular\n",
                     c.scan.bias ? "on" : "off", scan.max_log_kappa, infinite, scan.samples.size());
  finish(out, "condition-scan", "ok", c, log);
  return kExitOk;
}

int runCommand(const std::string& command, const std::optional<fs::path>& config_path,
               const Overrides& overrides, const fs::path& out, std::ostream& log,
               std::ostream& err) {
  try {
    const RunConfig c = loadConfig(config_path, overrides);
    if (command == "optimize") return cmdOptimize(c, out, log);
    if (command == "envelope") return cmdEnvelope(c, out, log);
    if (command == "simulate") return cmdSimulate(c, out, log);
    if (command == "condition-scan") return cmdConditionScan(c, out, log);
    err << "unknown command: " << command << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace omav::cli
