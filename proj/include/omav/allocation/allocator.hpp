#pragma once

#include "omav/allocation/diff_allocation.hpp"
#include "omav/allocation/optimal_targets.hpp"

namespace omav::allocation {

struct AllocatorConfig {
  double k_alpha = 1000.0;
  TargetConfig targets;
  ActuatorLimits limits;
  bool null_space_task = true;  // false: u* = 0
};

struct AllocationStep {
  OptimalTargets targets;
  SolveResult solve;
  ActuatorCommand command;
  double kappa = 0.0;  // condition number of A_alpha at the new tilt command
};

/// Differential allocator state for one vehicle: integrated actuator commands.
class DifferentialAllocator {
 public:
  DifferentialAllocator(const Morphology& m, const AllocatorConfig& cfg, VecX alpha0, VecX omega0);

  AllocationStep step(const Vec6& wrench_rate, double dt);

  const VecX& alphaRef() const { return alpha_ref_; }
  const VecX& omegaRef() const { return omega_ref_; }
  /// A Omega-tilde(omega_ref, alpha_ref)
  Vec6 commandedWrench() const;
  const MatX& staticMatrix() const { return A_; }
  const std::vector<int>& unloadedArms() const { return unloaded_; }

 private:
  Morphology morphology_;
  AllocatorConfig cfg_;
  MatX A_;
  MatX A_pinv_;
  VecX alpha_ref_;
  VecX omega_ref_;
  std::vector<int> unloaded_;
};

}  // namespace omav::allocation
