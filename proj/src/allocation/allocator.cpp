#include "omav/allocation/allocator.hpp"

#include <Eigen/QR>

#include "omav/core/allocation.hpp"

namespace omav::allocation {

DifferentialAllocator::DifferentialAllocator(const Morphology& m, const AllocatorConfig& cfg,
                                             VecX alpha0, VecX omega0)
    : morphology_(m), cfg_(cfg), alpha_ref_(std::move(alpha0)), omega_ref_(std::move(omega0)) {
  m.validate();
  if (alpha_ref_.size() != m.numArms() || omega_ref_.size() != m.numRotors()) {
    throw DimensionError("DifferentialAllocator: initial commands do not match the morphology");
  }
  A_ = staticAllocation(m);
  A_pinv_ = A_.completeOrthogonalDecomposition().pseudoInverse();
}

Vec6 DifferentialAllocator::commandedWrench() const {
  return A_ * omegaTilde(squared(omega_ref_), alpha_ref_);
}

AllocationStep DifferentialAllocator::step(const Vec6& wrench_rate, double dt) {
  AllocationStep s;
  const DiffAllocation diff = buildDiffAllocation(A_, omega_ref_, alpha_ref_, cfg_.k_alpha);
  if (cfg_.null_space_task) {
    TargetConfig tc = cfg_.targets;
    if (tc.step == 0.0) tc.step = dt;
    s.targets = optimalTargets(morphology_, A_pinv_, alpha_ref_, omega_ref_, commandedWrench(), tc,
                               unloaded_);
    unloaded_ = s.targets.unloaded;
  } else {
    s.targets.alpha_star = alpha_ref_;
    s.targets.omega_star = omega_ref_;
    s.targets.u_star = VecX::Zero(omega_ref_.size() + alpha_ref_.size());
    s.targets.bias = VecX::Zero(alpha_ref_.size());
  }
  s.solve = solveDiffAllocation(diff, s.targets.u_star, wrench_rate);
  s.command = saturateIntegrate(s.solve.u, cfg_.limits, dt, alpha_ref_, omega_ref_);
  alpha_ref_ = s.command.alpha_ref;
  omega_ref_ = s.command.omega_ref;
  s.kappa = conditionNumber(instantaneousAllocation(A_, alpha_ref_));
  return s;
}

}  // namespace omav::allocation
