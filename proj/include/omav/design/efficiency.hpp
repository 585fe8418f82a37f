#pragma once

#include <span>
#include <stdexcept>

#include "omav/core/types.hpp"

namespace omav::design {

class ZeroThrustError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// ||f_d|| / sum_i |f_i|. Throws ZeroThrustError if all thrusts vanish.
double forceEfficiency(const Vec3& desired_force, std::span<const double> thrust_magnitudes);
double forceEfficiency(const Vec3& desired_force, std::span<const Vec3> rotor_thrusts);

/// ||tau_d|| / (l * sum_i |f_i|).
double torqueEfficiency(const Vec3& desired_torque, std::span<const double> thrust_magnitudes,
                        double arm_length);
double torqueEfficiency(const Vec3& desired_torque, std::span<const Vec3> rotor_thrusts,
                        double arm_length);

}  // namespace omav::design
