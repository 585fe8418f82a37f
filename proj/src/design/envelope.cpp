#include "omav/design/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/QR>

#include "omav/core/allocation.hpp"
#include "omav/design/linear_program.hpp"

namespace omav::design {

namespace {

Vec6 stackedDirection(WrenchMode mode, const Vec3& d) {
  Vec6 w = Vec6::Zero();
  if (mode == WrenchMode::kForce) {
    w.head<3>() = d;
  } else {
    w.tail<3>() = d;
  }
  return w;
}

}  // namespace

EnvelopeSolver::EnvelopeSolver(const Morphology& m, WrenchMode mode, EnvelopeMethod method,
                               std::optional<Vec3> hover_force, int polygon_sides)
    : morphology_(m), mode_(mode), method_(method), polygon_sides_(polygon_sides) {
  m.validate();
  hover_force_ = mode == WrenchMode::kTorque
                     ? hover_force.value_or(Vec3(0.0, 0.0, m.body.mass * kGravity))
                     : Vec3::Zero();
  A_ = staticAllocation(m);
  pinv_ = A_.completeOrthogonalDecomposition().pseudoInverse();
  Vec6 w0 = Vec6::Zero();
  w0.head<3>() = hover_force_;
  hover_alloc_ = pinv_ * w0;
  const int n = m.numArms();
  arm_blocks_.assign(n, MatX::Zero(6, 2));
  for (int k = 0; k < m.numRotors(); ++k) arm_blocks_[m.armOfRotor(k)] += A_.middleCols(2 * k, 2);
  for (const auto& arm : m.arms) mean_arm_length_ += arm.length / n;
}

DirectionalMax EnvelopeSolver::solve(const Vec3& unit_direction) const {
  return method_ == EnvelopeMethod::kAllocation ? solveAllocation(unit_direction)
                                                : solveReachable(unit_direction);
}

DirectionalMax EnvelopeSolver::solveAllocation(const Vec3& d) const {
  const VecX x1 = pinv_ * stackedDirection(mode_, d);
  const VecX& x0 = hover_alloc_;
  const double limit = std::pow(morphology_.rotor.omega_max, 2);
  const int nr = morphology_.numRotors();
  DirectionalMax out;
  double lambda = std::numeric_limits<double>::infinity();
  for (int k = 0; k < nr; ++k) {
    const Eigen::Vector2d p0 = x0.segment<2>(2 * k);
    const Eigen::Vector2d p1 = x1.segment<2>(2 * k);
    // ||p0 + lambda p1||^2 <= limit^2
    const double a = p1.squaredNorm();
    const double b = p0.dot(p1);
    const double c = p0.squaredNorm() - limit * limit;
    if (c > 0.0) return out;  // hover wrench alone saturates this rotor
    if (a <= 0.0) continue;
    lambda = std::min(lambda, (-b + std::sqrt(b * b - a * c)) / a);
  }
  if (!std::isfinite(lambda)) return out;
  out.value = lambda;
  out.thrusts.resize(nr);
  double total = 0.0;
  for (int k = 0; k < nr; ++k) {
    out.thrusts[k] = morphology_.rotor.c_f * (x0.segment<2>(2 * k) + lambda * x1.segment<2>(2 * k)).norm();
    total += out.thrusts[k];
  }
  if (total > 0.0) {
    out.efficiency = mode_ == WrenchMode::kForce ? lambda / total
                                                 : lambda / (mean_arm_length_ * total);
  }
  return out;
}

DirectionalMax EnvelopeSolver::solveReachable(const Vec3& d) const {
  const int n = morphology_.numArms();
  const int K = polygon_sides_;
  const double limit = std::pow(morphology_.rotor.omega_max, 2);
  const int nvars = n * K + 1;
  MatX A_eq(6, nvars);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < K; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / K;
      A_eq.col(i * K + j) = limit * arm_blocks_[i] * Eigen::Vector2d(std::sin(phi), std::cos(phi));
    }
  }
  A_eq.col(nvars - 1) = -stackedDirection(mode_, d);
  Vec6 b_eq = Vec6::Zero();
  b_eq.head<3>() = hover_force_;
  MatX A_ub = MatX::Zero(n, nvars);
  for (int i = 0; i < n; ++i) A_ub.block(i, i * K, 1, K).setOnes();
  const VecX b_ub = VecX::Ones(n);
  VecX c = VecX::Zero(nvars);
  c[nvars - 1] = 1.0;
  const LpResult lp = solveLinearProgram(c, A_eq, b_eq, A_ub, b_ub);
  DirectionalMax out;
  if (lp.status != LpStatus::kOptimal) return out;
  out.value = lp.x[nvars - 1];
  const int rpa = morphology_.rotor.rotors_per_arm;
  out.thrusts.assign(morphology_.numRotors(), 0.0);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector2d x = Eigen::Vector2d::Zero();
    for (int j = 0; j < K; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / K;
      x += lp.x[i * K + j] * limit * Eigen::Vector2d(std::sin(phi), std::cos(phi));
    }
    const double per_rotor = morphology_.rotor.c_f * x.norm();
    for (int r = 0; r < rpa; ++r) out.thrusts[r * n + i] = per_rotor;
    total += rpa * per_rotor;
  }
  if (total > 0.0) {
    out.efficiency = mode_ == WrenchMode::kForce ? out.value / total
                                                 : out.value / (mean_arm_length_ * total);
  }
  return out;
}

double maxWrenchInDirection(const Morphology& m, const Vec3& unit_direction, WrenchMode mode,
                            std::optional<Vec3> hover_force, EnvelopeMethod method) {
  if (std::abs(unit_direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("maxWrenchInDirection: direction must be a unit vector");
  }
  return EnvelopeSolver(m, mode, method, hover_force).solve(unit_direction).value;
}

EnvelopeMetrics summarizeEnvelope(const SphereGrid& grid, std::vector<EnvelopeSample> samples) {
  EnvelopeMetrics out;
  if (samples.empty()) return out;
  std::vector<double> radii(samples.size());
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = samples[i].value;
    radii[i] = v;
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
    sum += v;
  }
  out.mean = sum / static_cast<double>(samples.size());
  out.volume = radialVolume(grid, radii);
  out.samples = std::move(samples);
  return out;
}

EnvelopeMetrics computeEnvelope(const Morphology& m, const EnvelopeOptions& options) {
  const SphereGrid grid = icosphere(options.subdivision_level);
  const EnvelopeSolver solver(m, options.mode, options.method, options.hover_force,
                              options.polygon_sides);
  const int count = static_cast<int>(grid.vertices.size());
  std::vector<EnvelopeSample> samples(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < count; ++i) {
    const DirectionalMax r = solver.solve(grid.vertices[i]);
    samples[i] = {grid.vertices[i], r.value, r.efficiency};
  }
  return summarizeEnvelope(grid, std::move(samples));
}

EnvelopeMetrics computeEnvelopeSerial(const Morphology& m, const EnvelopeOptions& options) {
  const SphereGrid grid = icosphere(options.subdivision_level);
  const EnvelopeSolver solver(m, options.mode, options.method, options.hover_force,
                              options.polygon_sides);
  std::vector<EnvelopeSample> samples;
  samples.reserve(grid.vertices.size());
  for (const auto& d : grid.vertices) {
    const DirectionalMax r = solver.solve(d);
    samples.push_back({d, r.value, r.efficiency});
  }
  return summarizeEnvelope(grid, std::move(samples));
}

std::vector<HoverSample> hoverSphere(const Morphology& m, int subdivision_level) {
  m.validate();
  const SphereGrid grid = icosphere(subdivision_level);
  const MatX A = staticAllocation(m);
  const MatX pinv = A.completeOrthogonalDecomposition().pseudoInverse();
  const double weight = m.body.mass * kGravity;
  const double limit = std::pow(m.rotor.omega_max, 2);
  const double lower = std::pow(m.rotor.omega_min, 2);
  const int count = static_cast<int>(grid.vertices.size());
  std::vector<HoverSample> out(count);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < count; ++i) {
    const Vec3& g = grid.vertices[i];
    Vec6 w = Vec6::Zero();
    w.head<3>() = -weight * g;
    const VecX x = pinv * w;
    bool feasible = true;
    double total = 0.0;
    for (int k = 0; k < m.numRotors(); ++k) {
      const double mag = x.segment<2>(2 * k).norm();
      feasible = feasible && mag <= limit * (1.0 + 1e-12) && mag >= lower;
      total += m.rotor.c_f * mag;
    }
    out[i] = {g, feasible, total > 0.0 ? weight / total : 0.0};
  }
  return out;
}

HoverRange hoverEfficiencyRange(const std::vector<HoverSample>& samples) {
  HoverRange r;
  r.total = static_cast<int>(samples.size());
  r.min = std::numeric_limits<double>::infinity();
  r.max = 0.0;
  for (const auto& s : samples) {
    if (!s.feasible) continue;
    ++r.feasible;
    r.min = std::min(r.min, s.efficiency);
    r.max = std::max(r.max, s.efficiency);
  }
  if (r.feasible == 0) r.min = 0.0;
  return r;
}

}  // namespace omav::design
