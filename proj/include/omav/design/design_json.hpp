#pragma once

#include <iosfwd>

#include <json.hpp>

#include "omav/design/optimizer.hpp"

namespace omav::design {

/// Schema: { "cost": 1|2, "scalarization": "sum"|"min", "num_arms", "arm_length", "rotor": {...}, "mass_model": {...},
///           "bounds": {"theta", "beta"}, "optimize_theta", "theta_regularization",
///           "torque_hover_direction": [x,y,z], "method": "allocation"|"reachable",
///           "search_level", "report_level", "restarts", "max_evaluations", "seed" }
DesignProblem designProblemFromJson(const nlohmann::json& j);
nlohmann::json designProblemToJson(const DesignProblem& p);

MassModel massModelFromJson(const nlohmann::json& j, MassModel base = {});
nlohmann::json massModelToJson(const MassModel& m);

nlohmann::json envelopeSummaryToJson(const EnvelopeMetrics& e);
nlohmann::json designResultToJson(const DesignResult& r);

/// Header dir_x,dir_y,dir_z,value,eta; one line per sample.
void writeEnvelopeCsv(std::ostream& os, const EnvelopeMetrics& e);

EnvelopeMethod envelopeMethodFromString(const std::string& s);
std::string toString(EnvelopeMethod m);

}  // namespace omav::design
