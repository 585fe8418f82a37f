#include "omav/sim/simulator.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>

#include "omav/allocation/allocator.hpp"
#include "omav/control/feedback_linearization.hpp"
#include "omav/control/lqri.hpp"
#include "omav/control/pid.hpp"
#include "omav/core/allocation.hpp"
#include "omav/sim/plant.hpp"
#include "omav/sim/sg_filter.hpp"

namespace omav::sim {

ControllerKind controllerFromString(const std::string& s) {
  if (s == "lqri") return ControllerKind::kLqri;
  if (s == "pid") return ControllerKind::kPid;
  throw std::invalid_argument("controller must be \"lqri\" or \"pid\", got \"" + s + "\"");
}

std::string toString(ControllerKind k) { return k == ControllerKind::kLqri ? "lqri" : "pid"; }

void SimConfig::validate() const {
  if (!(dt_physics > 0.0 && dt_control > 0.0 && dt_physics <= dt_control)) {
    throw std::invalid_argument("need 0 < dt_physics <= dt_control");
  }
  const double ratio = dt_control / dt_physics;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw std::invalid_argument("dt_control must be an integer multiple of dt_physics");
  }
  if (sg_window < 3 || sg_window % 2 == 0 || sg_order < 1 || sg_order >= sg_window) {
    throw std::invalid_argument("SG window must be odd and larger than the order (>= 1)");
  }
  if (!(sigma_accel >= 0.0 && sigma_gyro >= 0.0)) {
    throw std::invalid_argument("noise levels must be >= 0");
  }
  if (wound_arms < 0) throw std::invalid_argument("wound_arms must be >= 0");
  if (!(tail_time >= 0.0)) throw std::invalid_argument("tail_time must be >= 0");
  if (!(divergence_threshold > 0.0)) throw std::invalid_argument("divergence threshold must be > 0");
  lqri.validate();
  pid.validate();
  allocation.validate();
}

double actuatorEfficiency(const Morphology& m, const ActuatorState& act) {
  Vec3 net = Vec3::Zero();
  double sum = 0.0;
  for (int k = 0; k < m.numRotors(); ++k) {
    const int arm = m.armOfRotor(k);
    const double f = m.rotor.c_f * act.omega[k] * act.omega[k];
    net += f * m.arms[arm].thrustDirection(act.alpha[arm]);
    sum += f;
  }
  return sum > 0.0 ? net.norm() / sum : 0.0;
}

namespace {

// Measurement path: ground truth, or noisy signals sampled at the physics rate and
// smoothed / differentiated with Savitzky-Golay filters.
class Estimator {
 public:
  Estimator(const SimConfig& cfg)
      : enabled_(cfg.use_estimator),
        sigma_a_(cfg.sigma_accel),
        sigma_w_(cfg.sigma_gyro),
        rng_(cfg.seed),
        accel_(cfg.sg_window, cfg.sg_order, cfg.dt_physics),
        gyro_(cfg.sg_window, cfg.sg_order, cfg.dt_physics) {}

  void measure(const RigidBodyState& s) {
    if (!enabled_) return;
    accel_.push(s.acceleration + noise(sigma_a_));
    last_gyro_ = s.angular_velocity + noise(sigma_w_);
    gyro_.push(last_gyro_);
  }

  RigidBodyState estimate(const RigidBodyState& truth) const {
    if (!enabled_) return truth;
    RigidBodyState e = truth;
    e.acceleration = accel_.value();
    e.angular_velocity = last_gyro_;
    e.angular_acceleration = gyro_.derivative();
    return e;
  }

 private:
  Vec3 noise(double sigma) {
    if (sigma == 0.0) return Vec3::Zero();
    return Vec3(sigma * normal_(rng_), sigma * normal_(rng_), sigma * normal_(rng_));
  }

  bool enabled_;
  double sigma_a_;
  double sigma_w_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  SgFilter3 accel_;
  SgFilter3 gyro_;
  Vec3 last_gyro_ = Vec3::Zero();
};

Vec6 hoverWrench(const RigidBodyState& s, const control::TrajectorySample& ref,
                 const RigidBodyParams& p) {
  Vec6 w;
  const Vec3 f = p.mass * s.attitude.transpose() * (ref.acceleration - gravityWorld());
  w << f, p.r_com.cross(f);
  return w;
}

}  // namespace

SimLog runSimulation(const SimConfig& cfg, const Morphology& m, const Trajectory& traj) {
  cfg.validate();
  m.validate();
  const MatX A = staticAllocation(m);
  const RigidBodyParams& body = m.body;
  const int substeps = static_cast<int>(std::lround(cfg.dt_control / cfg.dt_physics));
  const double dt = cfg.dt_control;

  SimLog log;
  log.num_arms = m.numArms();
  log.num_rotors = m.numRotors();

  const control::TrajectorySample ref0 = traj.sample(traj.startTime());
  RigidBodyState state;
  state.position = ref0.position + cfg.initial_offset;
  state.attitude = ref0.attitude;
  state.velocity = ref0.velocity;

  const auto hover = allocation::staticCommands(m, hoverWrench(state, ref0, body));
  ActuatorState act{hover.alpha, hover.omega};
  for (int i = 0; i < std::min(cfg.wound_arms, m.numArms()); ++i) act.alpha[i] += 2.0 * std::numbers::pi;
  {
    const Wrench w = actuatorWrench(A, act);
    state.acceleration = state.attitude * w.force / body.mass + gravityWorld();
    state.angular_acceleration = body.inertia.inverse() *
                                 (w.torque - body.r_com.cross(w.force) -
                                  state.angular_velocity.cross(body.inertia * state.angular_velocity));
  }

  allocation::AllocatorConfig acfg;
  acfg.k_alpha = cfg.allocation.k_alpha;
  acfg.targets.v_alpha_dot = cfg.allocation.v_alpha_dot;
  acfg.targets.v_omega_dot = cfg.allocation.v_omega_dot;
  acfg.targets.unwind = cfg.unwind;
  acfg.targets.unload = cfg.unload_gap > 0.0;
  acfg.targets.unload_gap = cfg.unload_gap;
  acfg.targets.bias = cfg.bias;
  acfg.limits = allocation::ActuatorLimits::fromMorphology(m);
  allocation::DifferentialAllocator allocator(m, acfg, act.alpha, act.omega);

  control::LqriController lqri(cfg.lqri, cfg.integrator_limits);
  control::PidController pid(cfg.pid, cfg.integrator_limits);
  Estimator estimator(cfg);
  estimator.measure(state);

  const double t_end = traj.endTime() + cfg.tail_time;
  const long ticks = std::lround((t_end - traj.startTime()) / dt);
  for (long k = 0; k <= ticks; ++k) {
    const double t = traj.startTime() + k * dt;
    const control::TrajectorySample ref = traj.sample(t);
    const RigidBodyState est = estimator.estimate(state);

    SimLogRow row;
    row.time = t;
    row.state = state;
    row.reference = ref;
    Vec6 wrench_rate;
    if (cfg.controller == ControllerKind::kLqri) {
      const Vec6 u = lqri.virtualInput(est, ref, k == 0 ? 0.0 : dt);
      wrench_rate = control::feedbackLinearize(u, est, ref, body).stacked();
      row.error = lqri.lastError();
      row.stability_lhs = lqri.lastStability().lhs;
      row.stability_rhs = lqri.lastStability().rhs;
    } else {
      pid.control(est, ref, dt);
      row.error = pid.lastError();
      // Desired wrench from the PID accelerations, differenced against the
      // wrench the allocator currently commands.
      const Vec3 a = pid.lastAccelerationCommand();
      const Vec3 psi = pid.lastAngularAccelerationCommand();
      const Vec3& w = est.angular_velocity;
      Vec6 desired;
      const Vec3 f = body.mass * est.attitude.transpose() * (a - gravityWorld());
      desired << f, body.inertia * psi + w.cross(body.inertia * w) + body.r_com.cross(f);
      wrench_rate = (desired - allocator.commandedWrench()) / dt;
    }

    const double e_p = row.error.position.norm();
    if (!std::isfinite(e_p) || e_p > cfg.divergence_threshold) {
      row.alpha_ref = allocator.alphaRef();
      row.omega_ref = allocator.omegaRef();
      row.alpha = act.alpha;
      row.omega = act.omega;
      row.eta_f = actuatorEfficiency(m, act);
      log.append(std::move(row));
      log.diverged = true;
      log.message = "position error exceeded " + std::to_string(cfg.divergence_threshold) +
                    " m at t = " + std::to_string(t) + " s";
      return log;
    }

    const allocation::AllocationStep step = allocator.step(wrench_rate, dt);
    row.alpha_ref = allocator.alphaRef();
    row.omega_ref = allocator.omegaRef();
    row.alpha = act.alpha;
    row.omega = act.omega;
    row.eta_f = actuatorEfficiency(m, act);
    row.log_kappa = std::log(step.kappa);
    row.regularized = step.solve.regularized;
    row.saturated = step.command.saturated;
    row.residual = step.solve.residual;
    log.append(std::move(row));
    if (k == ticks) break;

    const ActuatorCommandRef cmd{allocator.alphaRef(), allocator.omegaRef()};
    try {
      for (int s = 0; s < substeps; ++s) {
        PlantStep ps = stepPlant(state, act, cmd, m, A, cfg.dt_physics);
        state = ps.state;
        act = ps.actuators;
        estimator.measure(state);
      }
    } catch (const NonFiniteStateError& err) {
      log.diverged = true;
      log.message = err.what();
      return log;
    }
  }
  return log;
}

std::vector<SimLog> runSimulations(const std::vector<SimJob>& jobs) {
  std::vector<SimLog> logs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(jobs.size()); ++i) {
    try {
      logs[i] = runSimulation(jobs[i].config, jobs[i].morphology, jobs[i].trajectory);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return logs;
}

}  // namespace omav::sim
