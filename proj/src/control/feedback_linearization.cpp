#include "omav/control/feedback_linearization.hpp"

namespace omav::control {

namespace {

Vec3 bodyForce(const RigidBodyState& s, const RigidBodyParams& p) {
  return p.mass * s.attitude.transpose() * (s.acceleration - gravityWorld());
}

}  // namespace

WrenchRate feedbackLinearize(const Vec6& u, const RigidBodyState& s, const TrajectorySample& ref,
                             const RigidBodyParams& p) {
  const Mat3 R_BW = s.attitude.transpose();
  const Vec3& w = s.angular_velocity;
  const Vec3& psi = s.angular_acceleration;
  const Mat3& J = p.inertia;
  WrenchRate out;
  out.force = p.mass * R_BW * (ref.jerk + u.head<3>()) - w.cross(bodyForce(s, p));
  out.torque = p.r_com.cross(out.force) + psi.cross(J * w) + w.cross(J * psi) +
               J * (u.tail<3>() - w.cross(R_BW * ref.angular_acceleration) +
                    R_BW * ref.angular_jerk);
  return out;
}

PlantJerk plantJerk(const WrenchRate& rate, const RigidBodyState& s, const RigidBodyParams& p) {
  const Vec3& w = s.angular_velocity;
  const Vec3& psi = s.angular_acceleration;
  const Mat3& J = p.inertia;
  PlantJerk out;
  out.linear_world = s.attitude * (rate.force + w.cross(bodyForce(s, p))) / p.mass;
  out.angular_body = J.ldlt().solve(rate.torque - p.r_com.cross(rate.force) - psi.cross(J * w) -
                                    w.cross(J * psi));
  return out;
}

}  // namespace omav::control
