#include "omav/control/pid.hpp"

#include <stdexcept>

namespace omav::control {

PidController::PidController(const PidGains& gains, IntegratorLimits limits)
    : gains_(gains), integrators_(limits) {
  gains_.validate();
}

Vec3 PidController::accelerationCommand(const ErrorState& e, const TrajectorySample& ref,
                                        const PidGains& g) {
  return ref.acceleration - (g.k_p * e.position + g.k_v * e.velocity + g.k_p_i * e.position_integral);
}

Vec3 PidController::angularAccelerationCommand(const ErrorState& e, const RigidBodyState& state,
                                               const TrajectorySample& ref, const PidGains& g) {
  return state.attitude.transpose() * ref.angular_acceleration -
         (g.k_R * e.attitude + g.k_omega * e.angular_velocity + g.k_R_i * e.attitude_integral);
}

JerkCommand PidController::control(const RigidBodyState& state, const TrajectorySample& ref,
                                   double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("PidController: dt must be positive");
  last_error_ = computeErrorState(state, ref, integrators_, dt);
  const Vec3 a = accelerationCommand(last_error_, ref, gains_);
  const Vec3 psi = angularAccelerationCommand(last_error_, state, ref, gains_);
  JerkCommand u;
  if (has_history_) {
    u.linear = state.attitude.transpose() * ((a - last_a_) / dt);
    u.angular = (psi - last_psi_) / dt;
  }
  last_a_ = a;
  last_psi_ = psi;
  has_history_ = true;
  return u;
}

void PidController::reset() {
  integrators_.reset();
  has_history_ = false;
  last_a_.setZero();
  last_psi_.setZero();
}

}  // namespace omav::control
