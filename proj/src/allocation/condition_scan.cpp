#include "omav/allocation/condition_scan.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/QR>
#include <fmt/format.h>

#include "omav/core/allocation.hpp"
#include "omav/design/sphere.hpp"

namespace omav::allocation {

namespace {

struct ScanContext {
  MatX A;
  MatX pinv;
  TargetConfig targets;
  Vec3 hover;
  double extra;
  VecX alpha0;
  VecX omega0;
};

ScanContext makeContext(const Morphology& m, const ConditionScanOptions& o) {
  m.validate();
  ScanContext c;
  c.A = staticAllocation(m);
  c.pinv = c.A.completeOrthogonalDecomposition().pseudoInverse();
  c.targets.bias = o.bias_config;
  c.targets.bias.enabled = o.bias;
  const double mg = m.body.mass * kGravity;
  c.hover = mg * o.hover_direction.normalized();
  c.extra = o.extra_force < 0.0 ? mg : o.extra_force;
  c.alpha0 = VecX::Zero(m.numArms());
  c.omega0 = VecX::Zero(m.numRotors());
  return c;
}

double logKappaAt(const Morphology& m, const ScanContext& c, const Vec3& d) {
  Vec6 w = Vec6::Zero();
  w.head<3>() = c.hover + c.extra * d;
  const OptimalTargets t = optimalTargets(m, c.pinv, c.alpha0, c.omega0, w, c.targets);
  return std::log(conditionNumber(instantaneousAllocation(c.A, t.alpha_star)));
}

ConditionScan finish(std::vector<ConditionSample> samples) {
  ConditionScan s;
  s.max_log_kappa = -std::numeric_limits<double>::infinity();
  for (const auto& x : samples) s.max_log_kappa = std::max(s.max_log_kappa, x.log_kappa);
  s.samples = std::move(samples);
  return s;
}

}  // namespace

ConditionScan conditionScan(const Morphology& m, const ConditionScanOptions& o) {
  const ScanContext c = makeContext(m, o);
  const design::SphereGrid grid = design::icosphere(o.subdivision_level);
  const int count = static_cast<int>(grid.vertices.size());
  std::vector<ConditionSample> samples(count);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    samples[i] = {grid.vertices[i], logKappaAt(m, c, grid.vertices[i])};
  }
  return finish(std::move(samples));
}

ConditionScan conditionScanSerial(const Morphology& m, const ConditionScanOptions& o) {
  const ScanContext c = makeContext(m, o);
  const design::SphereGrid grid = design::icosphere(o.subdivision_level);
  std::vector<ConditionSample> samples;
  samples.reserve(grid.vertices.size());
  for (const auto& d : grid.vertices) samples.push_back({d, logKappaAt(m, c, d)});
  return finish(std::move(samples));
}

void writeConditionCsv(std::ostream& os, const ConditionScan& scan) {
  os << "dir_x,dir_y,dir_z,log_kappa\n";
  for (const auto& s : scan.samples) {
    os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.direction.x(), s.direction.y(),
                      s.direction.z(), s.log_kappa);
  }
}

}  // namespace omav::allocation
