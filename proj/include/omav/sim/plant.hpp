#pragma once

#include <stdexcept>

#include "omav/core/dynamics.hpp"

namespace omav::sim {

class NonFiniteStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ActuatorCommandRef {
  VecX alpha_ref;
  VecX omega_ref;
};

/// A Omega-tilde(omega^2, alpha)
Wrench actuatorWrench(const MatX& A, const ActuatorState& act);

/// First-order tilt (exact over dt, rate-limited) and rate-limited rotor speed
/// clamped to [omega_min, omega_max].
ActuatorState stepActuators(const ActuatorState& act, const ActuatorCommandRef& cmd,
                            const Morphology& m, double dt);

/// One RK4 step of the rigid body at constant body wrench; attitude advanced with
/// the exponential map. Refreshes the state's accelerations at the end point.
RigidBodyState integrateRigidBody(const RigidBodyState& s, const Wrench& w,
                                  const RigidBodyParams& params, double dt);

struct PlantStep {
  RigidBodyState state;
  ActuatorState actuators;
  Wrench wrench;
};

/// Actuators first, then the rigid body under the updated actuator wrench.
/// Throws NonFiniteStateError when the result is not finite.
PlantStep stepPlant(const RigidBodyState& s, const ActuatorState& act,
                    const ActuatorCommandRef& cmd, const Morphology& m, const MatX& A,
                    double dt);
PlantStep stepPlant(const RigidBodyState& s, const ActuatorState& act,
                    const ActuatorCommandRef& cmd, const Morphology& m, double dt);

}  // namespace omav::sim
