#include "omav/control/gains_json.hpp"

#include "omav/core/so3.hpp"

namespace omav::control {

using nlohmann::json;

namespace {

Vec3 triple(const json& j, const char* key, const Vec3& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j[key];
  if (v.is_number()) return Vec3::Constant(v.get<double>());
  if (!v.is_array() || v.size() != 3) {
    throw PreconditionError(std::string(key) + " must be a number or a 3-element array");
  }
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

void requirePositive(double v, const char* name) {
  if (!(v > 0.0)) throw PreconditionError(std::string(name) + " must be positive");
}

void requireNonNegative(double v, const char* name) {
  if (!(v >= 0.0)) throw PreconditionError(std::string(name) + " must be non-negative");
}

}  // namespace

void LqriGains::validate() const {
  const double q[8] = {k_p, k_p_i, k_v, k_a, k_R, k_R_i, k_omega, k_psi};
  for (double v : q) requireNonNegative(v, "LQRI state weight");
  for (int i = 0; i < 3; ++i) {
    requirePositive(r_f_dot[i], "r_f_dot");
    requirePositive(r_tau_dot[i], "r_tau_dot");
  }
}

void PidGains::validate() const {
  const double g[6] = {k_p, k_p_i, k_v, k_R, k_R_i, k_omega};
  for (double v : g) requireNonNegative(v, "PID gain");
}

void AllocationGains::validate() const {
  requirePositive(k_alpha, "k_alpha");
  requireNonNegative(v_alpha_dot, "v_alpha_dot");
  requireNonNegative(v_omega_dot, "v_omega_dot");
}

LqriGains lqriGainsFromJson(const json& j, LqriGains g) {
  g.k_p = j.value("k_p", g.k_p);
  g.k_p_i = j.value("k_p_i", g.k_p_i);
  g.k_v = j.value("k_v", g.k_v);
  g.k_a = j.value("k_a", g.k_a);
  g.k_R = j.value("k_R", g.k_R);
  g.k_R_i = j.value("k_R_i", g.k_R_i);
  g.k_omega = j.value("k_omega", g.k_omega);
  g.k_psi = j.value("k_psi", g.k_psi);
  g.r_f_dot = triple(j, "r_f_dot", g.r_f_dot);
  g.r_tau_dot = triple(j, "r_tau_dot", g.r_tau_dot);
  g.validate();
  return g;
}

json toJson(const LqriGains& g) {
  return {{"k_p", g.k_p},         {"k_p_i", g.k_p_i},
          {"k_v", g.k_v},         {"k_a", g.k_a},
          {"k_R", g.k_R},         {"k_R_i", g.k_R_i},
          {"k_omega", g.k_omega}, {"k_psi", g.k_psi},
          {"r_f_dot", {g.r_f_dot.x(), g.r_f_dot.y(), g.r_f_dot.z()}},
          {"r_tau_dot", {g.r_tau_dot.x(), g.r_tau_dot.y(), g.r_tau_dot.z()}}};
}

PidGains pidGainsFromJson(const json& j, PidGains g) {
  g.k_p = j.value("k_p", g.k_p);
  g.k_p_i = j.value("k_p_i", g.k_p_i);
  g.k_v = j.value("k_v", g.k_v);
  g.k_R = j.value("k_R", g.k_R);
  g.k_R_i = j.value("k_R_i", g.k_R_i);
  g.k_omega = j.value("k_omega", g.k_omega);
  g.validate();
  return g;
}

json toJson(const PidGains& g) {
  return {{"k_p", g.k_p}, {"k_p_i", g.k_p_i}, {"k_v", g.k_v},
          {"k_R", g.k_R}, {"k_R_i", g.k_R_i}, {"k_omega", g.k_omega}};
}

AllocationGains allocationGainsFromJson(const json& j, AllocationGains g) {
  g.k_alpha = j.value("k_alpha", g.k_alpha);
  g.v_alpha_dot = j.value("v_alpha_dot", g.v_alpha_dot);
  g.v_omega_dot = j.value("v_omega_dot", g.v_omega_dot);
  g.validate();
  return g;
}

json toJson(const AllocationGains& g) {
  return {{"k_alpha", g.k_alpha}, {"v_alpha_dot", g.v_alpha_dot}, {"v_omega_dot", g.v_omega_dot}};
}

}  // namespace omav::control
