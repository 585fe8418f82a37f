#pragma once

#include <json.hpp>

#include "omav/core/morphology.hpp"

namespace omav {

/// Schema:
///   { "arms": [{"azimuth", "yaw_offset", "inclination", "length", "spins": [..]}],
///     "rotor": {"c_f", "c_d", "omega_min", "omega_max", "rotors_per_arm"},
///     "tilt": {"tau", "rate_limits": {"alpha_dot", "omega_dot"}},
///     "body": {"m", "J": [Jxx, Jyy, Jzz] | 3x3, "r_com": [x, y, z]} }
/// Omitted fields keep the prototype defaults. An omitted "arms" array gives the
/// evenly spaced hexarotor.
Morphology morphologyFromJson(const nlohmann::json& j);
nlohmann::json morphologyToJson(const Morphology& m);

}  // namespace omav
