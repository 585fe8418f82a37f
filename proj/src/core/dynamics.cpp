#include "omav/core/dynamics.hpp"

#include <cmath>

#include <Eigen/LU>

namespace omav {

bool RigidBodyState::allFinite() const {
  return position.allFinite() && velocity.allFinite() && acceleration.allFinite() &&
         attitude.allFinite() && angular_velocity.allFinite() &&
         angular_acceleration.allFinite();
}

namespace {

Vec3 angularAcceleration(const Vec3& w, const Wrench& wrench, const RigidBodyParams& params) {
  const Mat3& J = params.inertia;
  Eigen::FullPivLU<Mat3> lu(J);
  if (!lu.isInvertible()) throw SingularInertiaError("inertia matrix is singular");
  const Vec3 rhs = wrench.torque - params.r_com.cross(wrench.force) - w.cross(J * w);
  return lu.solve(rhs);
}

}  // namespace

BodyAccelerations eomForward(const RigidBodyState& state, const Wrench& wrench,
                             const RigidBodyParams& params) {
  const Mat3& R = state.attitude;
  const Vec3& w = state.angular_velocity;
  const Vec3 v_B = R.transpose() * state.velocity;
  const Vec3 g_B = R.transpose() * gravityWorld();
  BodyAccelerations out;
  out.linear = -w.cross(v_B) + wrench.force / params.mass + g_B;
  out.angular = angularAcceleration(w, wrench, params);
  return out;
}

BodyAccelerations worldAccelerations(const RigidBodyState& state, const Wrench& wrench,
                                     const RigidBodyParams& params) {
  BodyAccelerations out;
  out.linear = state.attitude * wrench.force / params.mass + gravityWorld();
  out.angular = angularAcceleration(state.angular_velocity, wrench, params);
  return out;
}

double tiltStep(double alpha, double alpha_ref, double tau, double dt) {
  return alpha_ref + (alpha - alpha_ref) * std::exp(-dt / tau);
}

}  // namespace omav
