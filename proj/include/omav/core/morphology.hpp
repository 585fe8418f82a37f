#pragma once

#include <vector>

#include "omav/core/types.hpp"

namespace omav {

/// One tilt arm. The arm axis is R_z(azimuth + yaw_offset) R_y(-inclination) x_B;
/// the rotor group tilts about that axis.
struct ArmGeometry {
  double azimuth = 0.0;      // gamma [rad]
  double yaw_offset = 0.0;   // theta [rad], |theta| < pi/2
  double inclination = 0.0;  // beta [rad], |beta| < pi/2
  double length = 0.3;       // [m]
  std::vector<int> spins{1, -1};  // one entry per rotor on the arm, +-1

  double effectiveAzimuth() const { return azimuth + yaw_offset; }
  Vec3 axis() const;
  /// In-plane thrust directions at alpha = pi/2 (lateral) and alpha = 0 (vertical).
  Vec3 lateralDirection() const;
  Vec3 verticalDirection() const;
  Vec3 thrustDirection(double alpha) const;
};

struct RotorParams {
  double c_f = 7.1e-6;      // [N s^2 / rad^2]
  double c_d = 0.01;        // drag torque / thrust [m]
  double omega_min = 0.0;   // [rad/s]
  double omega_max = 1250.0;
  int rotors_per_arm = 2;

  double torqueCoefficient() const { return c_f * c_d; }
  double maxThrust() const { return c_f * omega_max * omega_max; }
};

struct TiltParams {
  double tau = 0.05;               // tilt time constant [s]
  double max_tilt_rate = 6.0;      // [rad/s]
  double max_rotor_accel = 10000;  // [rad/s^2]
};

struct RigidBodyParams {
  double mass = 4.27;
  Mat3 inertia = Vec3(0.086, 0.088, 0.16).asDiagonal();
  Vec3 r_com = Vec3::Zero();
};

struct Morphology {
  std::vector<ArmGeometry> arms;
  RotorParams rotor;
  TiltParams tilt;
  RigidBodyParams body;

  int numArms() const { return static_cast<int>(arms.size()); }
  int numRotors() const { return numArms() * rotor.rotors_per_arm; }
  /// Rotors are ordered layer-major: rotor k sits on arm k % n, layer k / n.
  int armOfRotor(int k) const { return k % numArms(); }
  int layerOfRotor(int k) const { return k / numArms(); }
  int spinOfRotor(int k) const { return arms[armOfRotor(k)].spins[layerOfRotor(k)]; }

  /// Throws PreconditionError on any violated invariant.
  void validate() const;

  /// Six arms evenly spaced at gamma = pi/6 * (1, 3, ..., 11), arm length 0.3 m,
  /// counter-rotating dual rotors with upper spin alternating between arms.
  static Morphology hexarotor(const std::vector<double>& inclinations = {},
                              const std::vector<double>& yaw_offsets = {});
  /// Evenly spaced n-arm layout with the same conventions as hexarotor().
  static Morphology evenlySpaced(int num_arms, double arm_length, int rotors_per_arm);
};

}  // namespace omav
