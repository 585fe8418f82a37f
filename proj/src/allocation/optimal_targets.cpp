#include "omav/allocation/optimal_targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/QR>

#include "omav/core/allocation.hpp"

namespace omav::allocation {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rateTowards(double delta, double speed, double step) {
  if (step > 0.0) return std::clamp(delta / step, -speed, speed);
  return delta > 0.0 ? speed : (delta < 0.0 ? -speed : 0.0);
}

MatX pinvOf(const Morphology& m) {
  return staticAllocation(m).completeOrthogonalDecomposition().pseudoInverse();
}

// Allocation of `wrench` with the rotors of `off` arms removed; empty when the
// remaining rotors cannot produce it within the speed limit.
std::optional<VecX> reducedAllocation(const Morphology& m, const std::vector<int>& off,
                                      const Vec6& wrench, double speed_limit) {
  const int n = m.numArms();
  const int nr = m.numRotors();
  MatX A = staticAllocation(m);
  for (int a : off) {
    for (int k = a; k < nr; k += n) A.middleCols<2>(2 * k).setZero();
  }
  const VecX x = A.completeOrthogonalDecomposition().pseudoInverse() * wrench;
  if ((A * x - wrench).norm() > 1e-6 * std::max(1.0, wrench.norm())) return std::nullopt;
  const double limit = speed_limit * speed_limit;
  for (int k = 0; k < nr; ++k) {
    if (x.segment<2>(2 * k).norm() > limit) return std::nullopt;
  }
  return x;
}

}  // namespace

VecX alphaBias(const std::vector<Vec3>& dirs, const BiasConfig& cfg) {
  const int n = static_cast<int>(dirs.size());
  VecX bias = VecX::Zero(n);
  if (!cfg.enabled) return bias;
  const double min_cos = std::cos(cfg.colinearity_angle);
  for (int i = 0; i < n; ++i) {
    if (dirs[i].norm() == 0.0) continue;
    bool colinear = true;
    for (int j = 0; j < n && colinear; ++j) {
      if (j == i || dirs[j].norm() == 0.0) continue;
      colinear = std::abs(dirs[i].normalized().dot(dirs[j].normalized())) >= min_cos;
    }
    if (colinear) bias[i] = (i % 2 == 0) ? cfg.delta : -cfg.delta;
  }
  return bias;
}

VecX alphaBias(const Morphology& m, const Vec3& f_d_body, const BiasConfig& cfg) {
  const int n = m.numArms();
  if (!cfg.enabled) return VecX::Zero(n);
  Vec6 w = Vec6::Zero();
  w.head<3>() = f_d_body;
  const StaticCommands s = staticCommands(m, w);
  std::vector<Vec3> dirs(n);
  for (int a = 0; a < n; ++a) dirs[a] = m.arms[a].thrustDirection(s.alpha[a]);
  return alphaBias(dirs, cfg);
}

StaticCommands staticCommands(const Morphology& m, const Vec6& wrench) {
  const int n = m.numArms();
  const int nr = m.numRotors();
  const VecX x = pinvOf(m) * wrench;
  StaticCommands s;
  s.alpha = VecX::Zero(n);
  s.omega = VecX::Zero(nr);
  for (int a = 0; a < n; ++a) {
    double lat = 0.0, vert = 0.0;
    for (int k = a; k < nr; k += n) {
      lat += x[2 * k];
      vert += x[2 * k + 1];
    }
    if (std::hypot(lat, vert) > 0.0) s.alpha[a] = std::atan2(lat, vert);
  }
  for (int k = 0; k < nr; ++k) s.omega[k] = std::sqrt(x.segment<2>(2 * k).norm());
  return s;
}

OptimalTargets optimalTargets(const Morphology& m, const MatX& A_pinv, const VecX& alpha_c,
                              const VecX& omega_c, const Vec6& wrench, const TargetConfig& cfg,
                              const std::vector<int>& latched) {
  const int n = m.numArms();
  const int nr = m.numRotors();
  if (alpha_c.size() != n || omega_c.size() != nr) {
    throw DimensionError("optimalTargets: actuator vectors do not match the morphology");
  }
  VecX x = A_pinv * wrench;
  OptimalTargets t;
  t.alpha_star = alpha_c;
  t.omega_star = VecX::Zero(nr);
  auto tilts = [&](const VecX& alloc) {
    const double scale = alloc.cwiseAbs().maxCoeff();
    for (int a = 0; a < n; ++a) {
      if (std::find(t.unloaded.begin(), t.unloaded.end(), a) != t.unloaded.end()) continue;
      double lat = 0.0, vert = 0.0;
      for (int k = a; k < nr; k += n) {
        lat += alloc[2 * k];
        vert += alloc[2 * k + 1];
      }
      if (!(std::hypot(lat, vert) > 1e-12 * scale)) continue;  // zero-thrust arm holds its angle
      const double raw = std::atan2(lat, vert);
      const double ref = cfg.unwind ? cfg.home : alpha_c[a];
      t.alpha_star[a] = raw + kTwoPi * std::round((ref - raw) / kTwoPi);
    }
  };
  tilts(x);

  if (cfg.unload) {
    // Arms already spinning slowest go first so the choice persists between calls.
    std::vector<std::pair<double, int>> far;
    for (int a = 0; a < n; ++a) {
      if (std::abs(t.alpha_star[a] - alpha_c[a]) <= 0.5 * std::numbers::pi) continue;
      const bool wound = std::abs(alpha_c[a] - cfg.home) > cfg.unload_gap;
      if (!wound && std::find(latched.begin(), latched.end(), a) == latched.end()) continue;
      double load = 0.0;
      for (int k = a; k < nr; k += n) load += omega_c[k] * omega_c[k];
      far.emplace_back(load, a);
    }
    std::sort(far.begin(), far.end());
    std::optional<VecX> reduced;
    for (const auto& [load, a] : far) {
      std::vector<int> trial = t.unloaded;
      trial.push_back(a);
      auto r = reducedAllocation(m, trial, wrench, cfg.unload_margin * m.rotor.omega_max);
      if (!r) continue;
      t.unloaded = std::move(trial);
      reduced = std::move(r);
    }
    if (reduced) {
      x = *reduced;
      tilts(x);
    }
  }
  for (int k = 0; k < nr; ++k) t.omega_star[k] = std::sqrt(x.segment<2>(2 * k).norm());
  for (int a : t.unloaded) {
    for (int k = a; k < nr; k += n) t.omega_star[k] = m.rotor.omega_min;
  }

  std::vector<Vec3> dirs(n);
  for (int a = 0; a < n; ++a) dirs[a] = m.arms[a].thrustDirection(t.alpha_star[a]);
  t.bias = alphaBias(dirs, cfg.bias);
  t.alpha_star += t.bias;

  t.u_star = VecX::Zero(nr + n);
  for (int k = 0; k < nr; ++k) {
    t.u_star[k] = rateTowards(t.omega_star[k] - omega_c[k], cfg.v_omega_dot, cfg.step);
  }
  for (int a = 0; a < n; ++a) {
    t.u_star[nr + a] = rateTowards(t.alpha_star[a] - alpha_c[a], cfg.v_alpha_dot, cfg.step);
  }
  return t;
}

OptimalTargets optimalTargets(const Morphology& m, const VecX& alpha_c, const VecX& omega_c,
                              const TargetConfig& cfg) {
  const MatX A = staticAllocation(m);
  const Vec6 w = A * omegaTilde(squared(omega_c), alpha_c);
  return optimalTargets(m, pinvOf(m), alpha_c, omega_c, w, cfg);
}

}  // namespace omav::allocation
