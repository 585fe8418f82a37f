#include "omav/control/error_state.hpp"

#include "omav/core/so3.hpp"

namespace omav::control {

Vec24 ErrorState::stacked() const {
  Vec24 e;
  e << position, position_integral, velocity, acceleration, attitude, attitude_integral,
      angular_velocity, angular_acceleration;
  return e;
}

ErrorState ErrorState::fromStacked(const Vec24& e) {
  ErrorState s;
  s.position = e.segment<3>(0);
  s.position_integral = e.segment<3>(3);
  s.velocity = e.segment<3>(6);
  s.acceleration = e.segment<3>(9);
  s.attitude = e.segment<3>(12);
  s.attitude_integral = e.segment<3>(15);
  s.angular_velocity = e.segment<3>(18);
  s.angular_acceleration = e.segment<3>(21);
  return s;
}

void ErrorIntegrators::update(const Vec3& e_p, const Vec3& e_R, double dt) {
  if (!primed_) {
    last_p_ = e_p;
    last_R_ = e_R;
    primed_ = true;
  }
  position_ += 0.5 * dt * (last_p_ + e_p);
  attitude_ += 0.5 * dt * (last_R_ + e_R);
  position_ = position_.cwiseMax(-limits_.position).cwiseMin(limits_.position);
  attitude_ = attitude_.cwiseMax(-limits_.attitude).cwiseMin(limits_.attitude);
  last_p_ = e_p;
  last_R_ = e_R;
}

void ErrorIntegrators::reset() {
  position_.setZero();
  attitude_.setZero();
  primed_ = false;
}

ErrorState instantaneousError(const RigidBodyState& s, const TrajectorySample& r) {
  const Mat3 R_BW = s.attitude.transpose();
  ErrorState e;
  e.position = s.position - r.position;
  e.velocity = s.velocity - r.velocity;
  e.acceleration = s.acceleration - r.acceleration;
  e.attitude = attitudeError(s.attitude, r.attitude);
  e.angular_velocity = s.angular_velocity - R_BW * r.angular_velocity;
  e.angular_acceleration = s.angular_acceleration - R_BW * r.angular_acceleration;
  return e;
}

ErrorState computeErrorState(const RigidBodyState& state, const TrajectorySample& ref,
                             ErrorIntegrators& integrators, double dt) {
  ErrorState e = instantaneousError(state, ref);
  if (dt > 0.0) integrators.update(e.position, e.attitude, dt);
  e.position_integral = integrators.position();
  e.attitude_integral = integrators.attitude();
  return e;
}

}  // namespace omav::control
