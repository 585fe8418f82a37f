#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omav/allocation/optimal_targets.hpp"
#include "omav/control/error_state.hpp"
#include "omav/control/gains.hpp"
#include "omav/sim/sim_log.hpp"
#include "omav/sim/trajectory.hpp"

namespace omav::sim {

enum class ControllerKind { kLqri, kPid };

ControllerKind controllerFromString(const std::string& s);
std::string toString(ControllerKind k);

struct SimConfig {
  double dt_physics = 1e-3;
  double dt_control = 1e-2;
  double sigma_accel = 0.0;  // [m/s^2] white noise on measured acceleration
  double sigma_gyro = 0.0;   // [rad/s]
  bool use_estimator = false;  // SG-filtered measurements instead of ground truth
  int sg_window = 21;
  int sg_order = 1;
  ControllerKind controller = ControllerKind::kPid;
  control::LqriGains lqri;
  control::PidGains pid;
  control::AllocationGains allocation;
  control::IntegratorLimits integrator_limits;
  allocation::BiasConfig bias;
  bool unwind = true;
  double unload_gap = 4.71238898038469;  // [rad], <= 0 never unloads an arm
  int wound_arms = 0;  // first N arms start at alpha = 2 pi
  Vec3 initial_offset = Vec3::Zero();
  double tail_time = 0.0;  // hover after the trajectory ends [s]
  double divergence_threshold = 10.0;  // |e_p| [m]
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// Force efficiency of the actual rotor thrusts: |sum f_k| / sum |f_k| (0 without thrust).
double actuatorEfficiency(const Morphology& m, const ActuatorState& act);

/// Closed loop: control and allocation at dt_control, plant at dt_physics with
/// zero-order hold. Stops early with log.diverged set when |e_p| exceeds the
/// threshold or the plant turns non-finite.
SimLog runSimulation(const SimConfig& cfg, const Morphology& m, const Trajectory& traj);

struct SimJob {
  SimConfig config;
  Morphology morphology;
  Trajectory trajectory;
};

/// Independent runs, one per OpenMP worker; results in job order.
std::vector<SimLog> runSimulations(const std::vector<SimJob>& jobs);

}  // namespace omav::sim
