#pragma once

#include <optional>
#include <vector>

#include "omav/core/morphology.hpp"
#include "omav/design/sphere.hpp"

namespace omav::design {

enum class WrenchMode { kForce, kTorque };

/// kAllocation: the wrench direction is allocated with the pseudo-inverse of the
/// static allocation matrix and scaled until the first rotor saturates.
/// kReachable: true maximum over free tilt angles and rotor speeds (convex
/// program; each arm's thrust disk is replaced by an inscribed polygon).
enum class EnvelopeMethod { kAllocation, kReachable };

struct DirectionalMax {
  double value = 0.0;       // [N] or [N m]; 0 when infeasible
  double efficiency = 0.0;  // eta_f (force) or eta_tau (torque) at the maximum
  std::vector<double> thrusts;  // per-rotor thrust magnitude at the maximum [N]
};

/// Precomputes everything that depends on the morphology only; solve() is const
/// and thread-safe.
class EnvelopeSolver {
 public:
  EnvelopeSolver(const Morphology& m, WrenchMode mode, EnvelopeMethod method,
                 std::optional<Vec3> hover_force = std::nullopt, int polygon_sides = 128);

  DirectionalMax solve(const Vec3& unit_direction) const;

 private:
  DirectionalMax solveAllocation(const Vec3& d) const;
  DirectionalMax solveReachable(const Vec3& d) const;

  Morphology morphology_;
  WrenchMode mode_;
  EnvelopeMethod method_;
  Vec3 hover_force_;
  int polygon_sides_;
  MatX A_;
  MatX pinv_;
  VecX hover_alloc_;
  std::vector<MatX> arm_blocks_;
  double mean_arm_length_ = 0.0;
};

/// Largest lambda such that lambda * dir is attainable (force mode: with zero
/// torque; torque mode: together with `hover_force`, default m g z_B).
double maxWrenchInDirection(const Morphology& m, const Vec3& unit_direction, WrenchMode mode,
                            std::optional<Vec3> hover_force = std::nullopt,
                            EnvelopeMethod method = EnvelopeMethod::kAllocation);

struct EnvelopeSample {
  Vec3 direction;
  double value = 0.0;
  double efficiency = 0.0;
};

struct EnvelopeMetrics {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double volume = 0.0;
  std::vector<EnvelopeSample> samples;
};

struct EnvelopeOptions {
  WrenchMode mode = WrenchMode::kForce;
  EnvelopeMethod method = EnvelopeMethod::kAllocation;
  int subdivision_level = 3;  // 1280 faces, 642 directions
  std::optional<Vec3> hover_force;
  int polygon_sides = 128;
};

/// OpenMP-parallel over directions; aggregation runs in direction order so the
/// result is bit-identical to computeEnvelopeSerial().
EnvelopeMetrics computeEnvelope(const Morphology& m, const EnvelopeOptions& options);
EnvelopeMetrics computeEnvelopeSerial(const Morphology& m, const EnvelopeOptions& options);

/// Metrics over precomputed radii on `grid` (one per vertex).
EnvelopeMetrics summarizeEnvelope(const SphereGrid& grid, std::vector<EnvelopeSample> samples);

struct HoverSample {
  Vec3 gravity_direction;  // body frame
  bool feasible = false;
  double efficiency = 0.0;
};

struct HoverRange {
  double min = 0.0;
  double max = 0.0;
  int feasible = 0;
  int total = 0;
};

/// Static hover (f = -m g dir, tau = 0) for every gravity direction of the grid,
/// allocated with the pseudo-inverse.
std::vector<HoverSample> hoverSphere(const Morphology& m, int subdivision_level = 3);
HoverRange hoverEfficiencyRange(const std::vector<HoverSample>& samples);

}  // namespace omav::design
