#pragma once

#include <stdexcept>

#include "omav/core/morphology.hpp"

namespace omav {

/// Position, velocity and acceleration are world-frame; angular quantities are
/// body-frame.
struct RigidBodyState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Mat3 attitude = Mat3::Identity();  // R_WB
  Vec3 angular_velocity = Vec3::Zero();
  Vec3 angular_acceleration = Vec3::Zero();

  bool allFinite() const;
};

struct ActuatorState {
  VecX alpha;  // tilt angle per arm [rad]
  VecX omega;  // rotor speed per rotor [rad/s]
};

struct BodyAccelerations {
  Vec3 linear;   // d/dt v_B (body components)
  Vec3 angular;  // d/dt omega_B
};

class SingularInertiaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton-Euler equations in the body frame:
///   m v_B' = -omega x m v_B + f + m g_B
///   J omega' = -omega x J omega + tau - r_com x f
BodyAccelerations eomForward(const RigidBodyState& state, const Wrench& wrench,
                             const RigidBodyParams& params);

/// World-frame linear and body-frame angular acceleration for the same model.
BodyAccelerations worldAccelerations(const RigidBodyState& state, const Wrench& wrench,
                                     const RigidBodyParams& params);

/// Exact solution of the first-order tilt servo over dt.
double tiltStep(double alpha, double alpha_ref, double tau, double dt);

/// Tilt rate of the first-order servo model.
inline double tiltRate(double alpha, double alpha_ref, double tau) {
  return (alpha_ref - alpha) / tau;
}

}  // namespace omav
