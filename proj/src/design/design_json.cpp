#include "omav/design/design_json.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>

#include "omav/core/morphology_json.hpp"
#include "omav/core/so3.hpp"

namespace omav::design {

using nlohmann::json;

namespace {

double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

json degrees(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(deg(x));
  return a;
}

}  // namespace

EnvelopeMethod envelopeMethodFromString(const std::string& s) {
  if (s == "allocation") return EnvelopeMethod::kAllocation;
  if (s == "reachable") return EnvelopeMethod::kReachable;
  throw PreconditionError("method must be \"allocation\" or \"reachable\"");
}

std::string toString(EnvelopeMethod m) {
  return m == EnvelopeMethod::kAllocation ? "allocation" : "reachable";
}

MassModel massModelFromJson(const json& j, MassModel m) {
  m.core_mass_const = j.value("core_mass_const", m.core_mass_const);
  m.actuation_mass_per_arm = j.value("actuation_mass_per_arm", m.actuation_mass_per_arm);
  m.rotor_group_mass = j.value("rotor_group_mass", m.rotor_group_mass);
  m.tube_mass_per_length = j.value("tube_mass_per_length", m.tube_mass_per_length);
  m.core_radius = j.value("core_radius", m.core_radius);
  m.core_height = j.value("core_height", m.core_height);
  m.tube_inner_radius = j.value("tube_inner_radius", m.tube_inner_radius);
  m.tube_outer_radius = j.value("tube_outer_radius", m.tube_outer_radius);
  m.rotor_radius = j.value("rotor_radius", m.rotor_radius);
  m.rotor_height = j.value("rotor_height", m.rotor_height);
  m.validate();
  return m;
}

json massModelToJson(const MassModel& m) {
  return {{"core_mass_const", m.core_mass_const},
          {"actuation_mass_per_arm", m.actuation_mass_per_arm},
          {"rotor_group_mass", m.rotor_group_mass},
          {"tube_mass_per_length", m.tube_mass_per_length},
          {"core_radius", m.core_radius},
          {"core_height", m.core_height},
          {"tube_inner_radius", m.tube_inner_radius},
          {"tube_outer_radius", m.tube_outer_radius},
          {"rotor_radius", m.rotor_radius},
          {"rotor_height", m.rotor_height}};
}

DesignProblem designProblemFromJson(const json& j) {
  DesignProblem p;
  p.cost = j.value("cost", p.cost);
  if (j.contains("scalarization")) {
    const std::string s = j["scalarization"].get<std::string>();
    if (s == "sum") {
      p.scalarization = Cost2Scalarization::kSum;
    } else if (s == "min") {
      p.scalarization = Cost2Scalarization::kMin;
    } else {
      throw PreconditionError("scalarization must be \"sum\" or \"min\"");
    }
  }
  p.num_arms = j.value("num_arms", p.num_arms);
  p.arm_length = j.value("arm_length", p.arm_length);
  if (j.contains("rotor")) {
    json wrapper = {{"rotor", j["rotor"]}};
    p.rotor = morphologyFromJson(wrapper).rotor;
  }
  if (j.contains("mass_model")) p.mass_model = massModelFromJson(j["mass_model"]);
  if (j.contains("bounds")) {
    p.theta_bound = j["bounds"].value("theta", p.theta_bound);
    p.beta_bound = j["bounds"].value("beta", p.beta_bound);
  }
  p.optimize_theta = j.value("optimize_theta", p.optimize_theta);
  p.theta_regularization = j.value("theta_regularization", p.theta_regularization);
  if (j.contains("torque_hover_direction")) {
    const auto& d = j["torque_hover_direction"];
    if (!d.is_array() || d.size() != 3) throw PreconditionError("torque_hover_direction must be [x,y,z]");
    p.torque_hover_direction = Vec3(d[0].get<double>(), d[1].get<double>(), d[2].get<double>()).normalized();
  }
  if (j.contains("method")) p.method = envelopeMethodFromString(j["method"].get<std::string>());
  p.search_level = j.value("search_level", p.search_level);
  p.report_level = j.value("report_level", p.report_level);
  p.restarts = j.value("restarts", p.restarts);
  p.max_evaluations = j.value("max_evaluations", p.max_evaluations);
  p.seed = j.value("seed", p.seed);
  p.validate();
  return p;
}

json designProblemToJson(const DesignProblem& p) {
  Morphology m;
  m.rotor = p.rotor;
  return {{"cost", p.cost},
          {"scalarization", p.scalarization == Cost2Scalarization::kSum ? "sum" : "min"},
          {"num_arms", p.num_arms},
          {"arm_length", p.arm_length},
          {"rotor", morphologyToJson(m)["rotor"]},
          {"mass_model", massModelToJson(p.mass_model)},
          {"bounds", {{"theta", p.theta_bound}, {"beta", p.beta_bound}}},
          {"optimize_theta", p.optimize_theta},
          {"theta_regularization", p.theta_regularization},
          {"torque_hover_direction",
           {p.torque_hover_direction.x(), p.torque_hover_direction.y(), p.torque_hover_direction.z()}},
          {"method", toString(p.method)},
          {"search_level", p.search_level},
          {"report_level", p.report_level},
          {"restarts", p.restarts},
          {"max_evaluations", p.max_evaluations},
          {"seed", p.seed}};
}

json envelopeSummaryToJson(const EnvelopeMetrics& e) {
  return {{"min", e.min}, {"max", e.max}, {"mean", e.mean}, {"volume", e.volume},
          {"directions", e.samples.size()}};
}

json designResultToJson(const DesignResult& r) {
  const Vec3 J = r.mass.inertia.diagonal();
  return {{"feasible", r.feasible},
          {"message", r.message},
          {"theta_rad", r.theta},
          {"beta_rad", r.beta},
          {"theta_deg", degrees(r.theta)},
          {"beta_deg", degrees(r.beta)},
          {"cost", r.cost},
          {"mass", r.mass.mass},
          {"inertia", {J.x(), J.y(), J.z()}},
          {"weight", r.weight},
          {"force", envelopeSummaryToJson(r.force)},
          {"torque", envelopeSummaryToJson(r.torque)},
          {"hover_eta_f", {{"min", r.hover.min}, {"max", r.hover.max},
                           {"feasible_directions", r.hover.feasible},
                           {"directions", r.hover.total}}},
          {"constraint_satisfied", r.constraint_satisfied},
          {"evaluations", r.evaluations},
          {"morphology", morphologyToJson(r.morphology)}};
}

void writeEnvelopeCsv(std::ostream& os, const EnvelopeMetrics& e) {
  os << "dir_x,dir_y,dir_z,value,eta\n";
  for (const auto& s : e.samples) {
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.direction.x(),
                      s.direction.y(), s.direction.z(), s.value, s.efficiency);
  }
}

}  // namespace omav::design
