#pragma once

#include "omav/core/types.hpp"

namespace omav::control {

/// Reference at one instant. Translational terms and angular rates are world-frame.
struct TrajectorySample {
  double time = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Vec3 jerk = Vec3::Zero();
  Mat3 attitude = Mat3::Identity();  // R_WBd
  Vec3 angular_velocity = Vec3::Zero();
  Vec3 angular_acceleration = Vec3::Zero();
  Vec3 angular_jerk = Vec3::Zero();
};

/// Body jerk command u = [j_B; zeta_B].
struct JerkCommand {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  Vec6 stacked() const {
    Vec6 u;
    u << linear, angular;
    return u;
  }
};

}  // namespace omav::control
