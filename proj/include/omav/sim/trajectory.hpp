#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "omav/control/trajectory_sample.hpp"
#include "omav/sim/polynomial.hpp"

namespace omav::sim {

using control::TrajectorySample;

struct Waypoint {
  double time = 0.0;
  Vec3 position = Vec3::Zero();
  Mat3 attitude = Mat3::Identity();  // R_WB
};

/// Septic spline through pose waypoints. Attitude is R_0 exp(phi(t)) where phi is
/// the spline of the unwrapped rotation vectors log(R_0^T R_i); each waypoint's
/// branch is chosen closest to its predecessor, so consecutive waypoints must be
/// less than pi apart.
class Trajectory {
 public:
  /// Throws std::invalid_argument for < 2 waypoints or non-increasing times.
  static Trajectory fromWaypoints(std::vector<Waypoint> waypoints);
  /// Stationary trajectory of the given duration (>= 0).
  static Trajectory hover(const Vec3& position, const Mat3& attitude, double duration);

  /// Reference at t; outside [start, end] the end pose is held at rest.
  TrajectorySample sample(double t) const;
  /// Samples at start + k dt, k = 0..floor(duration / dt).
  std::vector<TrajectorySample> sampleUniform(double dt) const;

  double startTime() const { return start_; }
  double endTime() const { return end_; }
  double duration() const { return end_ - start_; }
  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  /// Unwrapped rotation vector relative to the first waypoint attitude.
  Vec3 rotationVector(double t) const;

 private:
  TrajectorySample evaluate(double t) const;
  Vec3 angularVelocityWorld(double t) const;

  std::vector<Waypoint> waypoints_;
  std::vector<PiecewisePolynomial> pos_;
  std::vector<PiecewisePolynomial> rot_;
  Mat3 R0_ = Mat3::Identity();
  double start_ = 0.0;
  double end_ = 0.0;
  bool stationary_ = false;
};

/// {"waypoints": [{"t": s, "p": [x,y,z], "R": 3x3 | "rotvec": [..] | "rpy_deg": [..]}]}
Trajectory trajectoryFromJson(const nlohmann::json& j);
nlohmann::json trajectoryToJson(const Trajectory& traj);

/// Tilt of z_B from z_W [rad].
double tiltAngle(const Mat3& R_WB);

}  // namespace omav::sim
