#pragma once

#include <vector>

#include "omav/core/morphology.hpp"

namespace omav::design {

/// Parametric component masses and shapes. Core: solid cylinder about z_B.
/// Arms: tubes along the arm axis. Rotor groups: cylinders at the arm tip with
/// their two transverse inertias averaged (tilt independent).
struct MassModel {
  double core_mass_const = 2.1330665616;  // [kg]
  double actuation_mass_per_arm = 0.057;  // tilt servo [kg]
  double rotor_group_mass = 0.2241555731;  // [kg]
  double tube_mass_per_length = 0.1;      // [kg/m]
  double core_radius = 0.1169;            // [m]
  double core_height = 0.04;
  double tube_inner_radius = 0.008;
  double tube_outer_radius = 0.01;
  double rotor_radius = 0.0310590417;  // motor and tilt housing
  double rotor_height = 0.03;

  void validate() const;
};

struct MassProperties {
  double mass = 0.0;
  Mat3 inertia = Mat3::Zero();
};

MassProperties computeMassInertia(const std::vector<ArmGeometry>& arms, const MassModel& model);

/// Refits core_mass_const, rotor_group_mass and rotor_radius of `initial` so that
/// the evenly spaced flat hexarotor with 0.3 m arms reaches `target`.
MassModel calibrateMassModel(const MassProperties& target, const MassModel& initial = {});

/// Mass 4.0 kg, inertia diag(0.0725, 0.0725, 0.1439) kg m^2.
MassProperties referenceFlatHexMassProperties();

}  // namespace omav::design
