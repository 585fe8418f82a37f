#include "omav/core/morphology.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "omav/core/so3.hpp"

namespace omav {

Vec3 ArmGeometry::axis() const {
  const double g = effectiveAzimuth();
  const double b = inclination;
  return Vec3(std::cos(g) * std::cos(b), std::sin(g) * std::cos(b), std::sin(b));
}

Vec3 ArmGeometry::lateralDirection() const {
  const double g = effectiveAzimuth();
  return Vec3(std::sin(g), -std::cos(g), 0.0);
}

Vec3 ArmGeometry::verticalDirection() const {
  const double g = effectiveAzimuth();
  const double b = inclination;
  return Vec3(-std::sin(b) * std::cos(g), -std::sin(b) * std::sin(g), std::cos(b));
}

Vec3 ArmGeometry::thrustDirection(double alpha) const {
  return std::sin(alpha) * lateralDirection() + std::cos(alpha) * verticalDirection();
}

void Morphology::validate() const {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  if (numArms() < 3) throw PreconditionError("morphology needs at least 3 arms");
  if (!(rotor.c_f > 0.0)) throw PreconditionError("c_f must be positive");
  if (!(rotor.omega_min >= 0.0 && rotor.omega_min < rotor.omega_max)) {
    throw PreconditionError("rotor speed bounds must satisfy 0 <= omega_min < omega_max");
  }
  if (rotor.rotors_per_arm < 1) throw PreconditionError("rotors_per_arm must be >= 1");
  for (std::size_t i = 0; i < arms.size(); ++i) {
    const auto& arm = arms[i];
    const std::string where = "arm " + std::to_string(i) + ": ";
    if (!(arm.length > 0.0)) throw PreconditionError(where + "length must be positive");
    if (!(std::abs(arm.yaw_offset) < kHalfPi) || !(std::abs(arm.inclination) < kHalfPi)) {
      throw PreconditionError(where + "yaw offset and inclination must lie in (-pi/2, pi/2)");
    }
    if (static_cast<int>(arm.spins.size()) != rotor.rotors_per_arm) {
      throw PreconditionError(where + "one spin sign per rotor required");
    }
    for (int s : arm.spins) {
      if (s != 1 && s != -1) throw PreconditionError(where + "spin signs must be +-1");
    }
  }
  if (!(tilt.tau > 0.0 && tilt.max_tilt_rate > 0.0 && tilt.max_rotor_accel > 0.0)) {
    throw PreconditionError("tilt parameters must be positive");
  }
  if (!(body.mass > 0.0)) throw PreconditionError("mass must be positive");
  const Mat3& J = body.inertia;
  const double scale = J.trace();
  if ((J - J.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PreconditionError("inertia must be symmetric");
  }
  const Mat3 off = J - Mat3(J.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw PreconditionError("products of inertia must vanish");
  }
  if (J.diagonal().minCoeff() <= 0.0) throw PreconditionError("inertia must be positive definite");
  if (!body.r_com.allFinite()) throw PreconditionError("r_com must be finite");
}

Morphology Morphology::evenlySpaced(int num_arms, double arm_length, int rotors_per_arm) {
  Morphology m;
  m.rotor.rotors_per_arm = rotors_per_arm;
  m.arms.resize(num_arms);
  for (int i = 0; i < num_arms; ++i) {
    auto& arm = m.arms[i];
    arm.azimuth = std::numbers::pi / num_arms * (2 * i + 1);
    arm.length = arm_length;
    arm.spins.assign(rotors_per_arm, 1);
    const int upper = (i % 2 == 0) ? 1 : -1;
    for (int r = 0; r < rotors_per_arm; ++r) arm.spins[r] = (r % 2 == 0) ? upper : -upper;
  }
  return m;
}

Morphology Morphology::hexarotor(const std::vector<double>& inclinations,
                                 const std::vector<double>& yaw_offsets) {
  Morphology m = evenlySpaced(6, 0.3, 2);
  for (int i = 0; i < 6; ++i) {
    if (!inclinations.empty()) m.arms[i].inclination = inclinations.at(i);
    if (!yaw_offsets.empty()) m.arms[i].yaw_offset = yaw_offsets.at(i);
  }
  return m;
}

}  // namespace omav
