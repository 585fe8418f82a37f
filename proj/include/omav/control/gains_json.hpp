#pragma once

#include <json.hpp>

#include "omav/control/gains.hpp"

namespace omav::control {

/// Keys: k_p, k_p_i, k_v, k_a, k_R, k_R_i, k_omega, k_psi, r_f_dot[3], r_tau_dot[3].
LqriGains lqriGainsFromJson(const nlohmann::json& j, LqriGains base = {});
nlohmann::json toJson(const LqriGains& g);

/// Keys: k_p, k_p_i, k_v, k_R, k_R_i, k_omega.
PidGains pidGainsFromJson(const nlohmann::json& j, PidGains base = {});
nlohmann::json toJson(const PidGains& g);

/// Keys: k_alpha, v_alpha_dot, v_omega_dot.
AllocationGains allocationGainsFromJson(const nlohmann::json& j, AllocationGains base = {});
nlohmann::json toJson(const AllocationGains& g);

}  // namespace omav::control
