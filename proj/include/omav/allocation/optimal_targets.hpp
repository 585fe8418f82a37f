#pragma once

#include <vector>

#include "omav/core/morphology.hpp"

namespace omav::allocation {

/// Singularity handling hook. Default scheme: when an arm's thrust direction lies
/// within `colinearity_angle` of every other arm's, it receives an alternating
/// +-delta tilt offset (sign by arm index).
struct BiasConfig {
  bool enabled = false;
  double delta = 0.15;              // [rad]
  double colinearity_angle = 0.15;  // [rad]
};

/// Bias for given per-arm thrust directions (body frame, unit or zero).
VecX alphaBias(const std::vector<Vec3>& arm_thrust_directions, const BiasConfig& cfg);

/// Bias for a desired body force (allocated with the static pseudo-inverse).
VecX alphaBias(const Morphology& m, const Vec3& f_d_body, const BiasConfig& cfg);

struct TargetConfig {
  double v_omega_dot = 250.0;  // [rad/s^2]
  double v_alpha_dot = 1.0;    // [rad/s]
  bool unwind = true;          // pick the 2pi branch nearest `home`, else nearest alpha_c
  double home = 0.0;
  BiasConfig bias;
  // > 0: |u*| is reduced to |delta| / step when the target is reached within one
  // step; 0 gives the bare sign law.
  double step = 0.0;
  // Arms more than pi/2 from their tilt target that are wound further than
  // `unload_gap` from `home` (or latched by the caller) get omega* = omega_min; the
  // wrench is re-allocated over the remaining arms as long as no remaining rotor
  // exceeds unload_margin * omega_max.
  bool unload = true;
  double unload_gap = 4.71238898038469;  // [rad]
  double unload_margin = 0.9;
};

struct OptimalTargets {
  VecX alpha_star;
  VecX omega_star;
  VecX u_star;  // [omega_dot*; alpha_dot*]
  VecX bias;
  std::vector<int> unloaded;  // arm indices
};

/// A^+ allocation of `wrench`, per-arm tilt from the summed lateral/vertical
/// components, branch selection, unloading, optional bias, then the sign law.
/// `latched` arms stay unloaded until they are within pi/2 of their target.
OptimalTargets optimalTargets(const Morphology& m, const MatX& A_pinv, const VecX& alpha_c,
                              const VecX& omega_c, const Vec6& wrench, const TargetConfig& cfg,
                              const std::vector<int>& latched = {});

/// Convenience overload computing the wrench as A Omega-tilde(omega_c, alpha_c).
OptimalTargets optimalTargets(const Morphology& m, const VecX& alpha_c, const VecX& omega_c,
                              const TargetConfig& cfg);

/// Static hover commands for `wrench` without branch or bias handling.
struct StaticCommands {
  VecX alpha;
  VecX omega;
};
StaticCommands staticCommands(const Morphology& m, const Vec6& wrench);

}  // namespace omav::allocation
