#include "omav/sim/plant.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "omav/core/allocation.hpp"
#include "omav/core/so3.hpp"

namespace omav::sim {

Wrench actuatorWrench(const MatX& A, const ActuatorState& act) {
  return Wrench::fromStacked(A * omegaTilde(squared(act.omega), act.alpha));
}

ActuatorState stepActuators(const ActuatorState& act, const ActuatorCommandRef& cmd,
                            const Morphology& m, double dt) {
  if (cmd.alpha_ref.size() != act.alpha.size() || cmd.omega_ref.size() != act.omega.size()) {
    throw DimensionError("stepActuators: command size mismatch");
  }
  ActuatorState out = act;
  const double max_da = m.tilt.max_tilt_rate * dt;
  const double max_dw = m.tilt.max_rotor_accel * dt;
  for (Eigen::Index i = 0; i < act.alpha.size(); ++i) {
    const double next = tiltStep(act.alpha[i], cmd.alpha_ref[i], m.tilt.tau, dt);
    out.alpha[i] = act.alpha[i] + std::clamp(next - act.alpha[i], -max_da, max_da);
  }
  for (Eigen::Index k = 0; k < act.omega.size(); ++k) {
    const double next = act.omega[k] + std::clamp(cmd.omega_ref[k] - act.omega[k], -max_dw, max_dw);
    out.omega[k] = std::clamp(next, m.rotor.omega_min, m.rotor.omega_max);
  }
  return out;
}

namespace {

struct Deriv {
  Vec3 dp, dv, dw, dtheta;
};

Vec3 angularAccel(const Vec3& w, const Wrench& wr, const RigidBodyParams& p, const Mat3& J_inv) {
  return J_inv * (wr.torque - p.r_com.cross(wr.force) - w.cross(p.inertia * w));
}

Deriv derivative(const Vec3& v, const Mat3& R, const Vec3& w, const Wrench& wr,
                 const RigidBodyParams& p, const Mat3& J_inv) {
  return {v, R * wr.force / p.mass + gravityWorld(), angularAccel(w, wr, p, J_inv), w};
}

}  // namespace

RigidBodyState integrateRigidBody(const RigidBodyState& s, const Wrench& wr,
                                  const RigidBodyParams& p, double dt) {
  const Mat3 J_inv = p.inertia.inverse();
  const Deriv k1 = derivative(s.velocity, s.attitude, s.angular_velocity, wr, p, J_inv);
  const double h = 0.5 * dt;
  const Deriv k2 = derivative(s.velocity + h * k1.dv, s.attitude * expSO3(h * k1.dtheta),
                              s.angular_velocity + h * k1.dw, wr, p, J_inv);
  const Deriv k3 = derivative(s.velocity + h * k2.dv, s.attitude * expSO3(h * k2.dtheta),
                              s.angular_velocity + h * k2.dw, wr, p, J_inv);
  const Deriv k4 = derivative(s.velocity + dt * k3.dv, s.attitude * expSO3(dt * k3.dtheta),
                              s.angular_velocity + dt * k3.dw, wr, p, J_inv);
  const double c = dt / 6.0;
  RigidBodyState out;
  out.position = s.position + c * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp);
  out.velocity = s.velocity + c * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  out.angular_velocity = s.angular_velocity + c * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
  out.attitude =
      s.attitude * expSO3(c * (k1.dtheta + 2.0 * k2.dtheta + 2.0 * k3.dtheta + k4.dtheta));
  out.acceleration = out.attitude * wr.force / p.mass + gravityWorld();
  out.angular_acceleration = angularAccel(out.angular_velocity, wr, p, J_inv);
  return out;
}

PlantStep stepPlant(const RigidBodyState& s, const ActuatorState& act,
                    const ActuatorCommandRef& cmd, const Morphology& m, const MatX& A,
                    double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("stepPlant: dt must be positive");
  PlantStep out;
  out.actuators = stepActuators(act, cmd, m, dt);
  out.wrench = actuatorWrench(A, out.actuators);
  out.state = integrateRigidBody(s, out.wrench, m.body, dt);
  if (!out.state.allFinite() || !out.actuators.alpha.allFinite() ||
      !out.actuators.omega.allFinite()) {
    throw NonFiniteStateError("plant state became non-finite (position " +
                              std::to_string(s.position.x()) + ", " +
                              std::to_string(s.position.y()) + ", " +
                              std::to_string(s.position.z()) + ")");
  }
  return out;
}

PlantStep stepPlant(const RigidBodyState& s, const ActuatorState& act,
                    const ActuatorCommandRef& cmd, const Morphology& m, double dt) {
  return stepPlant(s, act, cmd, m, staticAllocation(m), dt);
}

}  // namespace omav::sim
