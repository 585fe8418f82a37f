#include "omav/sim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "omav/core/so3.hpp"

namespace omav::sim {

namespace {

constexpr double kFdStep = 1e-3;

// Right Jacobian of SO(3): d/dt exp(phi) = exp(phi) [J_r(phi) phi_dot]_x
Mat3 rightJacobian(const Vec3& phi) {
  const double a = phi.norm();
  const Mat3 K = skew(phi);
  if (a < 1e-6) return Mat3::Identity() - 0.5 * K + K * K / 6.0;
  const double a2 = a * a;
  return Mat3::Identity() - (1.0 - std::cos(a)) / a2 * K + (a - std::sin(a)) / (a2 * a) * K * K;
}

// Rotation vector equivalent to v, shifted by a multiple of 2 pi along its axis
// to lie closest to `prev`.
Vec3 nearestBranch(const Vec3& v, const Vec3& prev) {
  const double a = v.norm();
  if (a < 1e-12) {
    const double p = prev.norm();
    if (p < 1e-12) return v;
    const Vec3 axis = prev / p;
    const double k = std::round(p / (2.0 * std::numbers::pi));
    return axis * (2.0 * std::numbers::pi * k);
  }
  const Vec3 axis = v / a;
  Vec3 best = v;
  double best_d = (v - prev).norm();
  for (int k = -4; k <= 4; ++k) {
    for (double sign : {1.0, -1.0}) {
      const Vec3 c = axis * (sign * a + 2.0 * std::numbers::pi * k);
      const double d = (c - prev).norm();
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
  }
  return best;
}

Mat3 attitudeFromJson(const nlohmann::json& w) {
  if (w.contains("R")) {
    Mat3 R;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) R(r, c) = w.at("R").at(r).at(c).get<double>();
    if (!isRotation(R, 1e-6)) throw std::invalid_argument("waypoint R is not a rotation");
    return orthonormalize(R);
  }
  if (w.contains("rotvec")) {
    const auto& v = w.at("rotvec");
    return expSO3(Vec3(v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<double>()));
  }
  if (w.contains("rpy_deg")) {
    const auto& v = w.at("rpy_deg");
    const double d = std::numbers::pi / 180.0;
    return rotZ(v.at(2).get<double>() * d) * rotY(v.at(1).get<double>() * d) *
           rotX(v.at(0).get<double>() * d);
  }
  return Mat3::Identity();
}

}  // namespace

Trajectory Trajectory::fromWaypoints(std::vector<Waypoint> waypoints) {
  if (waypoints.size() < 2) throw std::invalid_argument("trajectory needs >= 2 waypoints");
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if (!(waypoints[i].time > waypoints[i - 1].time)) {
      throw std::invalid_argument("waypoint times must be strictly increasing");
    }
  }
  Trajectory tr;
  tr.waypoints_ = std::move(waypoints);
  tr.R0_ = tr.waypoints_.front().attitude;
  tr.start_ = tr.waypoints_.front().time;
  tr.end_ = tr.waypoints_.back().time;
  std::vector<double> times;
  std::vector<std::vector<double>> p(3), r(3);
  Vec3 prev = Vec3::Zero();
  for (const auto& w : tr.waypoints_) {
    times.push_back(w.time);
    const Vec3 phi = nearestBranch(logSO3(tr.R0_.transpose() * w.attitude), prev);
    if ((phi - prev).norm() >= std::numbers::pi) {
      throw std::invalid_argument("consecutive waypoint attitudes must differ by less than pi");
    }
    prev = phi;
    for (int a = 0; a < 3; ++a) {
      p[a].push_back(w.position[a]);
      r[a].push_back(phi[a]);
    }
  }
  for (int a = 0; a < 3; ++a) {
    tr.pos_.push_back(PiecewisePolynomial::septicSpline(times, p[a]));
    tr.rot_.push_back(PiecewisePolynomial::septicSpline(times, r[a]));
  }
  return tr;
}

Trajectory Trajectory::hover(const Vec3& position, const Mat3& attitude, double duration) {
  if (!(duration >= 0.0)) throw std::invalid_argument("hover duration must be >= 0");
  Trajectory tr;
  tr.waypoints_ = {{0.0, position, attitude}, {duration, position, attitude}};
  tr.R0_ = attitude;
  tr.end_ = duration;
  tr.stationary_ = true;
  return tr;
}

Vec3 Trajectory::rotationVector(double t) const {
  if (stationary_) return Vec3::Zero();
  return Vec3(rot_[0].evaluate(t), rot_[1].evaluate(t), rot_[2].evaluate(t));
}

Vec3 Trajectory::angularVelocityWorld(double t) const {
  const Vec3 phi = rotationVector(t);
  const Vec3 dphi(rot_[0].evaluate(t, 1), rot_[1].evaluate(t, 1), rot_[2].evaluate(t, 1));
  return R0_ * expSO3(phi) * (rightJacobian(phi) * dphi);
}

TrajectorySample Trajectory::evaluate(double t) const {
  TrajectorySample s;
  s.time = t;
  for (int a = 0; a < 3; ++a) {
    s.position[a] = pos_[a].evaluate(t);
    s.velocity[a] = pos_[a].evaluate(t, 1);
    s.acceleration[a] = pos_[a].evaluate(t, 2);
    s.jerk[a] = pos_[a].evaluate(t, 3);
  }
  s.attitude = orthonormalize(R0_ * expSO3(rotationVector(t)));
  s.angular_velocity = angularVelocityWorld(t);
  const double h = kFdStep;
  const Vec3 wm = angularVelocityWorld(t - h);
  const Vec3 wp = angularVelocityWorld(t + h);
  s.angular_acceleration = (wp - wm) / (2.0 * h);
  s.angular_jerk = (wp - 2.0 * s.angular_velocity + wm) / (h * h);
  return s;
}

TrajectorySample Trajectory::sample(double t) const {
  if (stationary_ || t <= start_ || t >= end_) {
    const Waypoint& w = (stationary_ || t <= start_) ? waypoints_.front() : waypoints_.back();
    TrajectorySample s;
    s.time = t;
    s.position = w.position;
    s.attitude = stationary_ ? R0_ : orthonormalize(R0_ * expSO3(rotationVector(t <= start_ ? start_ : end_)));
    return s;
  }
  return evaluate(t);
}

std::vector<TrajectorySample> Trajectory::sampleUniform(double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("sampleUniform: dt must be positive");
  std::vector<TrajectorySample> out;
  const auto n = static_cast<long>(std::floor(duration() / dt + 1e-9));
  out.reserve(n + 1);
  for (long k = 0; k <= n; ++k) out.push_back(sample(start_ + k * dt));
  return out;
}

Trajectory trajectoryFromJson(const nlohmann::json& j) {
  const auto& arr = j.at("waypoints");
  if (!arr.is_array()) throw std::invalid_argument("\"waypoints\" must be an array");
  std::vector<Waypoint> wps;
  for (const auto& w : arr) {
    Waypoint wp;
    wp.time = w.at("t").get<double>();
    const auto& p = w.at("p");
    wp.position = Vec3(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
    wp.attitude = attitudeFromJson(w);
    wps.push_back(wp);
  }
  return Trajectory::fromWaypoints(std::move(wps));
}

nlohmann::json trajectoryToJson(const Trajectory& traj) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : traj.waypoints()) {
    nlohmann::json R = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) R.push_back({w.attitude(r, 0), w.attitude(r, 1), w.attitude(r, 2)});
    arr.push_back({{"t", w.time},
                   {"p", {w.position.x(), w.position.y(), w.position.z()}},
                   {"R", R}});
  }
  return {{"waypoints", arr}};
}

double tiltAngle(const Mat3& R_WB) {
  return std::acos(std::clamp(R_WB(2, 2), -1.0, 1.0));
}

}  // namespace omav::sim
