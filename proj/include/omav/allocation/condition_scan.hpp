#pragma once

#include <iosfwd>
#include <vector>

#include "omav/allocation/optimal_targets.hpp"

namespace omav::allocation {

struct ConditionSample {
  Vec3 direction;
  double log_kappa = 0.0;  // +inf for rank-deficient A_alpha
};

struct ConditionScan {
  std::vector<ConditionSample> samples;
  double max_log_kappa = 0.0;
};

struct ConditionScanOptions {
  Vec3 hover_direction = Vec3::UnitZ();  // body-frame direction of the hover force
  double extra_force = -1.0;             // [N]; negative means m g
  bool bias = false;
  BiasConfig bias_config{true};
  int subdivision_level = 3;
};

/// log kappa(A_alpha(alpha*)) for w = m g hover_dir + extra d over the sphere.
/// OpenMP-parallel; identical to conditionScanSerial().
ConditionScan conditionScan(const Morphology& m, const ConditionScanOptions& options);
ConditionScan conditionScanSerial(const Morphology& m, const ConditionScanOptions& options);

/// Header dir_x,dir_y,dir_z,log_kappa
void writeConditionCsv(std::ostream& os, const ConditionScan& scan);

}  // namespace omav::allocation
