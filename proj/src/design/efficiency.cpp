#include "omav/design/efficiency.hpp"

#include <numeric>

namespace omav::design {

namespace {

double totalThrust(std::span<const double> magnitudes) {
  double sum = 0.0;
  for (double m : magnitudes) {
    if (m < 0.0) throw std::domain_error("thrust magnitudes must be non-negative");
    sum += m;
  }
  if (!(sum > 0.0)) throw ZeroThrustError("efficiency index undefined for zero total thrust");
  return sum;
}

double totalThrust(std::span<const Vec3> thrusts) {
  double sum = 0.0;
  for (const auto& f : thrusts) sum += f.norm();
  if (!(sum > 0.0)) throw ZeroThrustError("efficiency index undefined for zero total thrust");
  return sum;
}

}  // namespace

double forceEfficiency(const Vec3& desired_force, std::span<const double> thrust_magnitudes) {
  return desired_force.norm() / totalThrust(thrust_magnitudes);
}

double forceEfficiency(const Vec3& desired_force, std::span<const Vec3> rotor_thrusts) {
  return desired_force.norm() / totalThrust(rotor_thrusts);
}

double torqueEfficiency(const Vec3& desired_torque, std::span<const double> thrust_magnitudes,
                        double arm_length) {
  return desired_torque.norm() / (arm_length * totalThrust(thrust_magnitudes));
}

double torqueEfficiency(const Vec3& desired_torque, std::span<const Vec3> rotor_thrusts,
                        double arm_length) {
  return desired_torque.norm() / (arm_length * totalThrust(rotor_thrusts));
}

}  // namespace omav::design
