#pragma once

#include "omav/control/trajectory_sample.hpp"
#include "omav/core/dynamics.hpp"

namespace omav::control {

struct WrenchRate {
  Vec3 force = Vec3::Zero();   // d/dt f_B
  Vec3 torque = Vec3::Zero();  // d/dt tau_B

  Vec6 stacked() const {
    Vec6 w;
    w << force, torque;
    return w;
  }
};

/// Body wrench rate that turns the jerk-level error dynamics into
/// e_a' = u_1:3 and e_psi' = u_4:6. Uses the state's world acceleration and
/// body angular acceleration.
WrenchRate feedbackLinearize(const Vec6& u_bar, const RigidBodyState& state,
                             const TrajectorySample& ref, const RigidBodyParams& params);

/// Plant jerk response to a wrench rate: world linear jerk and body angular jerk
/// (derivative of the Newton-Euler equations at fixed parameters).
struct PlantJerk {
  Vec3 linear_world;
  Vec3 angular_body;
};
PlantJerk plantJerk(const WrenchRate& rate, const RigidBodyState& state,
                    const RigidBodyParams& params);

}  // namespace omav::control
