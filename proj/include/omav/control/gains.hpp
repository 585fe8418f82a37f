#pragma once

#include "omav/core/types.hpp"

namespace omav::control {

struct LqriGains {
  double k_p = 200.0;
  double k_p_i = 50.0;
  double k_v = 100.0;
  double k_a = 0.0;
  double k_R = 100.0;
  double k_R_i = 100.0;
  double k_omega = 200.0;
  double k_psi = 0.0;
  Vec3 r_f_dot = Vec3(1.0, 1.0, 0.2);
  Vec3 r_tau_dot = Vec3(1.0, 1.0, 1.0);

  void validate() const;
};

struct PidGains {
  double k_p = 5.0;
  double k_p_i = 0.3;
  double k_v = 1.0;
  double k_R = 3.5;
  double k_R_i = 0.3;
  double k_omega = 0.8;

  void validate() const;
};

struct AllocationGains {
  double k_alpha = 1000.0;
  double v_alpha_dot = 1.0;    // unwinding speed [rad/s]
  double v_omega_dot = 250.0;  // [rad/s^2]

  void validate() const;
};

}  // namespace omav::control
