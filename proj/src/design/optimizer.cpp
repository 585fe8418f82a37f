#include "omav/design/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "omav/core/so3.hpp"
#include "omav/design/nelder_mead.hpp"

namespace omav::design {

namespace {

constexpr double kPenalty = 10.0;

struct Candidate {
  std::vector<double> theta;
  std::vector<double> beta;
};

// Unconstrained search variable y maps to bound * tanh(y), strictly inside the bounds.
Candidate decode(const DesignProblem& p, const VecX& y) {
  Candidate c;
  c.theta.assign(p.num_arms, 0.0);
  c.beta.assign(p.num_arms, 0.0);
  for (int i = 0; i < p.num_arms; ++i) {
    c.beta[i] = p.beta_bound * std::tanh(y[i]);
    if (p.optimize_theta) c.theta[i] = p.theta_bound * std::tanh(y[p.num_arms + i]);
  }
  return c;
}

double encode(double x, double bound) {
  return std::atanh(std::clamp(x / bound, -0.999999, 0.999999));
}

double minOverSphere(const EnvelopeSolver& solver, const SphereGrid& grid) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& d : grid.vertices) lo = std::min(lo, solver.solve(d).value);
  return lo;
}

}  // namespace

void DesignProblem::validate() const {
  if (cost != 1 && cost != 2) throw PreconditionError("cost must be 1 or 2");
  if (num_arms < 3) throw PreconditionError("num_arms must be >= 3");
  if (!(arm_length > 0.0)) throw PreconditionError("arm_length must be positive");
  constexpr double kHalfPi = 1.5707963267948966;
  if (!(theta_bound > 0.0 && theta_bound <= kHalfPi && beta_bound > 0.0 && beta_bound <= kHalfPi)) {
    throw PreconditionError("angle bounds must lie in (0, pi/2]");
  }
  if (restarts < 1 || max_evaluations < 1) throw PreconditionError("restarts and evaluations must be positive");
  if (search_level < 0 || report_level < 0) throw PreconditionError("sphere levels must be >= 0");
  if (std::abs(torque_hover_direction.norm() - 1.0) > 1e-9) {
    throw PreconditionError("torque_hover_direction must be a unit vector");
  }
  mass_model.validate();
}

Morphology morphologyFor(const DesignProblem& p, const std::vector<double>& theta,
                         const std::vector<double>& beta) {
  if (static_cast<int>(theta.size()) != p.num_arms || static_cast<int>(beta.size()) != p.num_arms) {
    throw PreconditionError("one theta and one beta per arm required");
  }
  Morphology m = Morphology::evenlySpaced(p.num_arms, p.arm_length, p.rotor.rotors_per_arm);
  m.rotor = p.rotor;
  for (int i = 0; i < p.num_arms; ++i) {
    m.arms[i].yaw_offset = theta[i];
    m.arms[i].inclination = beta[i];
  }
  const MassProperties mp = computeMassInertia(m.arms, p.mass_model);
  m.body.mass = mp.mass;
  m.body.inertia = mp.inertia.diagonal().asDiagonal();
  return m;
}

double designCost(const DesignProblem& p, const std::vector<double>& theta,
                  const std::vector<double>& beta) {
  static thread_local int cached_level = -1;
  static thread_local SphereGrid grid;
  if (cached_level != p.search_level) {
    grid = icosphere(p.search_level);
    cached_level = p.search_level;
  }
  const Morphology m = morphologyFor(p, theta, beta);
  const double mg = m.body.mass * kGravity;
  const EnvelopeSolver force(m, WrenchMode::kForce, p.method);
  const double f_min = minOverSphere(force, grid);

  double reg = 0.0;
  for (double t : theta) reg += t * t;
  reg *= p.theta_regularization / p.num_arms;

  double value;
  if (p.cost == 1) {
    value = -force.solve(Vec3::UnitZ()).value / mg;
  } else {
    const EnvelopeSolver torque(m, WrenchMode::kTorque, p.method, mg * p.torque_hover_direction);
    const double tau_min = minOverSphere(torque, grid);
    const double fn = f_min / mg;
    const double tn = tau_min / (mg * p.arm_length);
    value = p.scalarization == Cost2Scalarization::kSum ? -(fn + tn) : -std::min(fn, tn);
  }
  if (!(f_min > mg)) value += kPenalty * (1.0 + (mg - f_min) / mg);
  return value + reg;
}

DesignResult evaluateDesign(const DesignProblem& p, const std::vector<double>& theta,
                            const std::vector<double>& beta) {
  DesignResult r;
  r.theta = theta;
  r.beta = beta;
  r.morphology = morphologyFor(p, theta, beta);
  r.mass = {r.morphology.body.mass, r.morphology.body.inertia};
  r.weight = r.mass.mass * kGravity;
  EnvelopeOptions fo;
  fo.method = p.method;
  fo.subdivision_level = p.report_level;
  r.force = computeEnvelope(r.morphology, fo);
  EnvelopeOptions to = fo;
  to.mode = WrenchMode::kTorque;
  to.hover_force = r.weight * p.torque_hover_direction;
  r.torque = computeEnvelope(r.morphology, to);
  r.hover = hoverEfficiencyRange(hoverSphere(r.morphology, p.report_level));
  r.cost = designCost(p, theta, beta);
  bool inside = true;
  for (int i = 0; i < p.num_arms; ++i) {
    inside = inside && std::abs(theta[i]) < p.theta_bound && std::abs(beta[i]) < p.beta_bound;
  }
  r.constraint_satisfied = inside && r.force.min > r.weight;
  r.feasible = r.constraint_satisfied;
  r.message = r.feasible ? "ok" : "constraint f_min > m g violated";
  return r;
}

namespace {

NelderMeadResult multiStart(const DesignProblem& p, bool with_theta) {
  const int dim = with_theta ? 2 * p.num_arms : p.num_arms;
  DesignProblem local = p;
  local.optimize_theta = with_theta;
  auto objective = [&local](const VecX& y) {
    const Candidate c = decode(local, y);
    return designCost(local, c.theta, c.beta);
  };
  std::vector<NelderMeadResult> runs(p.restarts);
  NelderMeadOptions opts;
  opts.initial_step = 0.3;
  opts.max_evaluations = p.max_evaluations;
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < p.restarts; ++k) {
    VecX y0 = VecX::Zero(dim);
    if (k > 0) {
      std::mt19937_64 rng(p.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k) +
                          (with_theta ? 0x1000ULL : 0ULL));
      std::uniform_real_distribution<double> u(-0.9, 0.9);
      for (int i = 0; i < p.num_arms; ++i) y0[i] = encode(u(rng) * p.beta_bound, p.beta_bound);
      for (int i = p.num_arms; i < dim; ++i) y0[i] = encode(u(rng) * p.theta_bound * 0.5, p.theta_bound);
    }
    NelderMeadResult r = nelderMead(objective, y0, opts);
    // Restart from the converged point to escape simplex collapse.
    for (int polish = 0; polish < 2; ++polish) {
      NelderMeadOptions po = opts;
      po.initial_step = 0.05;
      NelderMeadResult again = nelderMead(objective, r.x, po);
      again.evaluations += r.evaluations;
      if (again.value <= r.value) r = again; else r.evaluations = again.evaluations;
    }
    runs[k] = r;
  }
  NelderMeadResult best = runs.front();
  int evaluations = 0;
  for (const auto& r : runs) {
    evaluations += r.evaluations;
    if (r.value < best.value) best = r;
  }
  best.evaluations = evaluations;
  if (!with_theta) {
    best.x.conservativeResize(2 * p.num_arms);
    best.x.tail(p.num_arms).setZero();
  }
  return best;
}

}  // namespace

DesignResult optimize(const DesignProblem& p) {
  p.validate();
  NelderMeadResult best = multiStart(p, false);
  int evaluations = best.evaluations;
  if (p.optimize_theta) {
    const NelderMeadResult free = multiStart(p, true);
    evaluations += free.evaluations;
    if (best.value > free.value + p.family_tolerance * std::abs(free.value)) best = free;
  }
  DesignProblem full = p;
  full.optimize_theta = true;
  const Candidate c = decode(full, best.x);
  DesignResult result = evaluateDesign(p, c.theta, c.beta);
  result.evaluations = evaluations;
  if (!result.feasible) result.message = "no feasible morphology found";
  return result;
}

ComparisonRow comparisonRow(const std::string& label, const DesignResult& r) {
  return {label,          r.force.min,  r.force.max,  r.force.volume,
          r.torque.min,   r.torque.max, r.torque.volume, r.mass.mass};
}

std::vector<ComparisonRow> compare(const std::vector<ComparisonRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("compare needs at least two rows");
  const ComparisonRow& ref = rows.front();
  auto ratio = [](double v, double r) {
    if (r == 0.0) throw std::domain_error("compare: zero reference metric");
    return v / r;
  };
  std::vector<ComparisonRow> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    out.push_back({row.label, ratio(row.f_min, ref.f_min), ratio(row.f_max, ref.f_max),
                   ratio(row.f_volume, ref.f_volume), ratio(row.tau_min, ref.tau_min),
                   ratio(row.tau_max, ref.tau_max), ratio(row.tau_volume, ref.tau_volume),
                   ratio(row.mass, ref.mass)});
  }
  return out;
}

}  // namespace omav::design
