#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omav/core/morphology.hpp"
#include "omav/design/envelope.hpp"
#include "omav/design/mass_model.hpp"

namespace omav::design {

/// How cost 2 combines the normalized minima f_min/(m g) and tau_min/(m g l).
enum class Cost2Scalarization { kSum, kMin };

struct DesignProblem {
  int cost = 1;  // 1: max f(z_B) s.t. f_min > mg; 2: max f_min and tau_min (scalarized)
  Cost2Scalarization scalarization = Cost2Scalarization::kSum;
  int num_arms = 6;
  double arm_length = 0.3;
  RotorParams rotor;
  MassModel mass_model;
  double theta_bound = 1.5707963267948966;
  double beta_bound = 1.5707963267948966;
  bool optimize_theta = true;
  double theta_regularization = 1e-2;  // weight on mean(theta^2); breaks the yaw degeneracy
  Vec3 torque_hover_direction = Vec3::UnitZ();
  EnvelopeMethod method = EnvelopeMethod::kAllocation;
  int search_level = 3;  // icosphere level used inside the cost
  int report_level = 3;
  int restarts = 8;
  // Optima form families related by yaw offsets. A theta = 0 member is reported
  // when its cost is within this relative tolerance of the free optimum.
  double family_tolerance = 5e-3;
  int max_evaluations = 6000;  // per restart
  std::uint64_t seed = 1;

  void validate() const;
};

struct DesignResult {
  bool feasible = false;
  std::string message;
  std::vector<double> theta;
  std::vector<double> beta;
  double cost = 0.0;
  double weight = 0.0;  // m g [N]
  MassProperties mass;
  EnvelopeMetrics force;
  EnvelopeMetrics torque;
  HoverRange hover;
  bool constraint_satisfied = false;  // f_min > m g and strict angle bounds
  int evaluations = 0;
  Morphology morphology;
};

/// Morphology for the given angles with body mass/inertia from the mass model.
/// Products of inertia from inclined arms are dropped (diagonal inertia).
Morphology morphologyFor(const DesignProblem& problem, const std::vector<double>& theta,
                         const std::vector<double>& beta);

/// Scalar cost of a candidate; +penalty when f_min <= mg.
double designCost(const DesignProblem& problem, const std::vector<double>& theta,
                  const std::vector<double>& beta);

/// Full metrics for fixed angles, same fields as an optimization result.
DesignResult evaluateDesign(const DesignProblem& problem, const std::vector<double>& theta,
                            const std::vector<double>& beta);

/// Multi-start Nelder-Mead; restarts run concurrently and are reduced in index order.
DesignResult optimize(const DesignProblem& problem);

struct ComparisonRow {
  std::string label;
  double f_min = 0.0, f_max = 0.0, f_volume = 0.0;
  double tau_min = 0.0, tau_max = 0.0, tau_volume = 0.0;
  double mass = 0.0;
};

/// Rows divided by the first row. Throws std::domain_error on a zero reference entry.
std::vector<ComparisonRow> compare(const std::vector<ComparisonRow>& rows);
ComparisonRow comparisonRow(const std::string& label, const DesignResult& result);

}  // namespace omav::design
