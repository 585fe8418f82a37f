#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace omav {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Standard gravity magnitude [m/s^2].
inline constexpr double kGravity = 9.81;

/// World frame is z-up; gravity points along -z_W.
inline Vec3 gravityWorld() { return Vec3(0.0, 0.0, -kGravity); }

/// Body-frame actuation wrench.
struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();

  Vec6 stacked() const {
    Vec6 w;
    w << force, torque;
    return w;
  }
  static Wrench fromStacked(const Vec6& w) { return {w.head<3>(), w.tail<3>()}; }
};

}  // namespace omav
