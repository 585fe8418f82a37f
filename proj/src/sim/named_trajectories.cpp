#include "omav/sim/named_trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "omav/core/so3.hpp"

namespace omav::sim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Zero velocity and acceleration at both ends.
double ease(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x - std::sin(2.0 * kPi * x) / (2.0 * kPi);
}

double ramp(double t, double t0, double t1, double v0, double v1) {
  return v0 + (v1 - v0) * ease((t - t0) / (t1 - t0));
}

struct Pose {
  Vec3 p;
  Mat3 R;
};

Trajectory sampled(double duration, double spacing, const std::function<Pose(double)>& f) {
  const int n = static_cast<int>(std::ceil(duration / spacing));
  std::vector<Waypoint> wps;
  for (int k = 0; k <= n; ++k) {
    const double t = duration * k / n;
    const Pose pose = f(t);
    wps.push_back({t, pose.p, pose.R});
  }
  return Trajectory::fromWaypoints(std::move(wps));
}

Trajectory figureEight(double duration, double max_tilt, double spacing, double scale) {
  const double lead = 1.0;
  auto phase = [&](double t) { return 2.0 * kPi * ease((t - lead) / (duration - 2.0 * lead)); };
  auto attitude = [](double u, double s) {
    return rotZ(0.5 * s * std::sin(u)) * rotY(0.6 * s * std::sin(2.0 * u)) * rotX(s * std::sin(u));
  };
  auto peakTilt = [&](double s) {
    double m = 0.0;
    for (int i = 0; i <= 2000; ++i) m = std::max(m, tiltAngle(attitude(2.0 * kPi * i / 2000, s)));
    return m;
  };
  double lo = 0.0;
  double hi = 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (peakTilt(mid) > max_tilt ? hi : lo) = mid;
  }
  const double s = lo;
  return sampled(duration, spacing, [&](double t) {
    const double u = phase(t);
    const Vec3 p = scale * Vec3(1.5 * std::sin(u), 0.75 * std::sin(2.0 * u), 0.25 * std::sin(u));
    return Pose{p, attitude(u, s)};
  });
}

Trajectory singularTranslation(double scale) {
  // hover | roll 90 | +x | back | rotate about y_B | back | roll 0 | hover
  return sampled(36.1, 0.25, [&](double t) {
    double roll = 0.0;
    if (t >= 1.5) roll = ramp(t, 1.5, 7.5, 0.0, kPi / 2.0);
    if (t >= 31.5) roll = ramp(t, 31.5, 35.1, kPi / 2.0, 0.0);
    double x = 0.0;
    if (t >= 7.5) x = ramp(t, 7.5, 13.5, 0.0, 1.5 * scale);
    if (t >= 13.5) x = ramp(t, 13.5, 19.5, 1.5 * scale, 0.0);
    double q = 0.0;
    if (t >= 19.5) q = ramp(t, 19.5, 25.5, 0.0, kPi / 2.0);
    if (t >= 25.5) q = ramp(t, 25.5, 31.5, kPi / 2.0, 0.0);
    return Pose{Vec3(x, 0.0, 0.0), rotX(roll) * rotY(q)};
  });
}

// Angle swept by a rate profile that ramps smoothly from 0 to `rate` over `ramp`
// seconds after t0, holds, and ramps back down before t1.
double trapezoidAngle(double t, double t0, double t1, double ramp, double rate) {
  auto up = [&](double x) {
    x = std::clamp(x, 0.0, 1.0);
    return ramp * (0.5 * x * x + (std::cos(2.0 * kPi * x) - 1.0) / (4.0 * kPi * kPi));
  };
  const double total = rate * (t1 - t0 - ramp);
  if (t <= t0) return 0.0;
  if (t >= t1) return total;
  if (t < t0 + ramp) return rate * up((t - t0) / ramp);
  if (t <= t1 - ramp) return rate * (0.5 * ramp + (t - t0 - ramp));
  return total - rate * up((t1 - t) / ramp);
}

Trajectory cartwheel(double scale) {
  constexpr double kSpinStart = 5.0;
  constexpr double kSpinEnd = 30.5;
  constexpr double kRamp = 3.0;
  const double rate = 4.0 * kPi / (kSpinEnd - kSpinStart - kRamp);
  return sampled(35.5, 0.25, [&](double t) {
    double roll = 0.0;
    if (t >= 1.0) roll = ramp(t, 1.0, kSpinStart, 0.0, kPi / 2.0);
    if (t >= kSpinEnd) roll = ramp(t, kSpinEnd, 34.5, kPi / 2.0, 0.0);
    const double yaw = trapezoidAngle(t, kSpinStart, kSpinEnd, kRamp, rate);
    const double c = 0.5 * yaw;
    const Vec3 p = scale * Vec3(std::sin(c), 1.0 - std::cos(c), 0.0);
    return Pose{p, rotX(roll) * rotZ(yaw)};
  });
}

Trajectory flip(double duration, double lead, bool roll, double spacing) {
  return sampled(duration, spacing, [&](double t) {
    const double a = ramp(t, lead, duration - lead, 0.0, 2.0 * kPi);
    return Pose{Vec3::Zero(), roll ? rotX(a) : rotY(a)};
  });
}

}  // namespace

Trajectory namedTrajectory(char kind, double scale) {
  switch (kind) {
    case 'a': return figureEight(29.4, 25.0 * kDeg, 0.3, scale);
    case 'b': return figureEight(29.4, 75.0 * kDeg, 0.3, scale);
    case 'c': return figureEight(10.7, 25.0 * kDeg, 0.2, scale);
    case 'd': return singularTranslation(scale);
    case 'e': return cartwheel(scale);
    case 'f': return flip(16.0, 2.0, true, 0.2);
    case 'g': return flip(8.0, 1.0, false, 0.1);
    default: throw std::invalid_argument(std::string("unknown trajectory '") + kind + "'");
  }
}

bool isNamedTrajectory(const std::string& s) {
  return s.size() == 1 && s[0] >= 'a' && s[0] <= 'g';
}

}  // namespace omav::sim
