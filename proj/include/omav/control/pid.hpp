#pragma once

#include "omav/control/error_state.hpp"
#include "omav/control/gains.hpp"

namespace omav::control {

/// Acceleration-level PID whose outputs are differentiated into body jerk.
class PidController {
 public:
  explicit PidController(const PidGains& gains = {}, IntegratorLimits limits = {});

  /// Jerk command; the first call (no history) returns zero.
  JerkCommand control(const RigidBodyState& state, const TrajectorySample& ref, double dt);

  /// a_W = a_d - (K_p e_p + K_v e_v + K_i e_p_i), psi_B = R_BW psi_d - (K_R e_R + K_w e_w + K_Ri e_R_i)
  static Vec3 accelerationCommand(const ErrorState& e, const TrajectorySample& ref,
                                  const PidGains& g);
  static Vec3 angularAccelerationCommand(const ErrorState& e, const RigidBodyState& state,
                                         const TrajectorySample& ref, const PidGains& g);

  const ErrorState& lastError() const { return last_error_; }
  const Vec3& lastAccelerationCommand() const { return last_a_; }
  const Vec3& lastAngularAccelerationCommand() const { return last_psi_; }
  void reset();

 private:
  PidGains gains_;
  ErrorIntegrators integrators_;
  ErrorState last_error_;
  Vec3 last_a_ = Vec3::Zero();
  Vec3 last_psi_ = Vec3::Zero();
  bool has_history_ = false;
};

}  // namespace omav::control
