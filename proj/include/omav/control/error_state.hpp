#pragma once

#include "omav/control/trajectory_sample.hpp"
#include "omav/core/dynamics.hpp"

namespace omav::control {

using Vec24 = Eigen::Matrix<double, 24, 1>;

/// Block order: e_p, e_p_i, e_v, e_a (world), e_R, e_R_i, e_omega, e_psi (body).
struct ErrorState {
  Vec3 position = Vec3::Zero();
  Vec3 position_integral = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  Vec3 attitude = Vec3::Zero();
  Vec3 attitude_integral = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
  Vec3 angular_acceleration = Vec3::Zero();

  Vec24 stacked() const;
  static ErrorState fromStacked(const Vec24& e);
};

struct IntegratorLimits {
  double position = 2.0;  // [m s]
  double attitude = 1.0;  // [rad s]
};

/// Trapezoidal integrators with symmetric per-component clamps.
class ErrorIntegrators {
 public:
  explicit ErrorIntegrators(IntegratorLimits limits = {}) : limits_(limits) {}

  void update(const Vec3& e_p, const Vec3& e_R, double dt);
  void reset();

  const Vec3& position() const { return position_; }
  const Vec3& attitude() const { return attitude_; }
  const IntegratorLimits& limits() const { return limits_; }

 private:
  IntegratorLimits limits_;
  Vec3 position_ = Vec3::Zero();
  Vec3 attitude_ = Vec3::Zero();
  Vec3 last_p_ = Vec3::Zero();
  Vec3 last_R_ = Vec3::Zero();
  bool primed_ = false;
};

/// Proportional blocks only (integrals left at zero).
ErrorState instantaneousError(const RigidBodyState& state, const TrajectorySample& ref);

/// Full error state; advances `integrators` by dt first (dt = 0 leaves them).
ErrorState computeErrorState(const RigidBodyState& state, const TrajectorySample& ref,
                             ErrorIntegrators& integrators, double dt);

}  // namespace omav::control
