#include "omav/allocation/diff_allocation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "omav/core/allocation.hpp"

namespace omav::allocation {

MatX defaultWeight(int num_rotors, int num_arms, double k_alpha) {
  if (!(k_alpha > 0.0)) throw std::invalid_argument("k_alpha must be positive");
  VecX d(num_rotors + num_arms);
  d.head(num_rotors).setOnes();
  d.tail(num_arms).setConstant(k_alpha);
  return d.asDiagonal();
}

MatX omegaTildeJacobian(const VecX& omega_c, const VecX& alpha_c) {
  const Eigen::Index nr = omega_c.size();
  const Eigen::Index n = alpha_c.size();
  if (n == 0 || nr % n != 0) throw DimensionError("rotor count must be a multiple of arm count");
  MatX J = MatX::Zero(2 * nr, nr + n);
  for (Eigen::Index k = 0; k < nr; ++k) {
    const Eigen::Index a = k % n;
    const double w = omega_c[k];
    const double s = std::sin(alpha_c[a]);
    const double c = std::cos(alpha_c[a]);
    J(2 * k, k) = 2.0 * w * s;
    J(2 * k + 1, k) = 2.0 * w * c;
    J(2 * k, nr + a) = w * w * c;
    J(2 * k + 1, nr + a) = -w * w * s;
  }
  return J;
}

DiffAllocation buildDiffAllocation(const MatX& A, const VecX& omega_c, const VecX& alpha_c,
                                   double k_alpha) {
  if (A.rows() != 6 || A.cols() != 2 * omega_c.size()) {
    throw DimensionError("buildDiffAllocation: A must be 6 x 2 n_r");
  }
  if (omega_c.minCoeff() < 0.0) throw std::domain_error("rotor speeds must be non-negative");
  DiffAllocation d;
  d.delta_A = omegaTildeJacobian(omega_c, alpha_c);
  d.A_tilde = A * d.delta_A;
  d.W = defaultWeight(static_cast<int>(omega_c.size()), static_cast<int>(alpha_c.size()), k_alpha);
  return d;
}

Vec6 jerkToWrenchRate(const Vec6& jerk, const RigidBodyParams& p) {
  Vec6 out;
  out.head<3>() = p.mass * jerk.head<3>();
  out.tail<3>() = p.inertia * jerk.tail<3>();
  return out;
}

SolveResult solveWithMetric(const MatX& At, const MatX& M, const VecX& u_star, const Vec6& w_dot) {
  SolveResult r;
  const MatX MAt = M * At.transpose();
  Mat6 G = At * MAt;
  const VecX rhs = w_dot - At * u_star;
  Eigen::JacobiSVD<Mat6> svd(G);
  const Vec6 s = svd.singularValues();
  r.condition = s[5] > 0.0 ? s[0] / s[5] : kInfiniteCondition;
  if (!(r.condition <= 1e12)) {
    G += 1e-9 * G.trace() / 6.0 * Mat6::Identity();
    r.regularized = true;
  }
  r.u = u_star + MAt * G.ldlt().solve(rhs);
  r.residual = (At * r.u - w_dot).norm();
  return r;
}

SolveResult solveDiffAllocation(const DiffAllocation& d, const VecX& u_star, const Vec6& w_dot) {
  const MatX Winv = d.W.inverse();
  return solveWithMetric(d.A_tilde, Winv * Winv, u_star, w_dot);
}

ActuatorLimits ActuatorLimits::fromMorphology(const Morphology& m) {
  return {m.tilt.max_rotor_accel, m.tilt.max_tilt_rate, m.rotor.omega_min, m.rotor.omega_max};
}

ActuatorCommand saturateIntegrate(const VecX& u, const ActuatorLimits& lim, double dt,
                                  const VecX& alpha_prev, const VecX& omega_prev) {
  if (!(dt > 0.0)) throw std::invalid_argument("saturateIntegrate: dt must be positive");
  const Eigen::Index nr = omega_prev.size();
  const Eigen::Index n = alpha_prev.size();
  if (u.size() != nr + n) throw DimensionError("saturateIntegrate: u has wrong length");
  ActuatorCommand c;
  c.u_raw = u;
  c.u_saturated = u;
  c.u_saturated.head(nr) = u.head(nr).cwiseMax(-lim.max_omega_dot).cwiseMin(lim.max_omega_dot);
  c.u_saturated.tail(n) = u.tail(n).cwiseMax(-lim.max_alpha_dot).cwiseMin(lim.max_alpha_dot);
  c.saturated = (c.u_saturated - u).cwiseAbs().maxCoeff() > 0.0;
  c.omega_ref = (omega_prev + dt * c.u_saturated.head(nr))
                    .cwiseMax(lim.omega_min)
                    .cwiseMin(lim.omega_max);
  c.alpha_ref = alpha_prev + dt * c.u_saturated.tail(n);
  return c;
}

}  // namespace omav::allocation
