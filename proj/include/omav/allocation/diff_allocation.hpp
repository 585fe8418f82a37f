#pragma once

#include "omav/core/morphology.hpp"

namespace omav::allocation {

/// u-tilde ordering: [omega_dot (n_r); alpha_dot (n)]. Rotor k belongs to arm k % n.
struct DiffAllocation {
  MatX delta_A;  // 2 n_r x (n_r + n), chain rule of Omega-tilde
  MatX A_tilde;  // 6 x (n_r + n)
  MatX W;        // (n_r + n) x (n_r + n), SPD

  int numRotors() const { return static_cast<int>(delta_A.rows() / 2); }
  int numArms() const { return static_cast<int>(delta_A.cols() - delta_A.rows() / 2); }
};

/// blkdiag(I_nr, k_alpha I_n)
MatX defaultWeight(int num_rotors, int num_arms, double k_alpha);

MatX omegaTildeJacobian(const VecX& omega_c, const VecX& alpha_c);

DiffAllocation buildDiffAllocation(const MatX& A, const VecX& omega_c, const VecX& alpha_c,
                                   double k_alpha = 1000.0);

/// [f_dot; tau_dot] = blkdiag(m I, J) [j_B; zeta_B]
Vec6 jerkToWrenchRate(const Vec6& jerk, const RigidBodyParams& params);

struct SolveResult {
  VecX u;
  double residual = 0.0;      // |A_tilde u - w_dot|
  double condition = 0.0;     // condition number of A_tilde M A_tilde^T
  bool regularized = false;
};

/// Minimizer of |W (u - u*)| subject to A_tilde u = w_dot:
///   u = u* + M A~^T (A~ M A~^T)^-1 (w_dot - A~ u*),  M = W^-2.
/// Falls back to Tikhonov (1e-9 trace-scaled) when the condition number exceeds 1e12.
SolveResult solveDiffAllocation(const DiffAllocation& diff, const VecX& u_star, const Vec6& w_dot);

/// Same with an explicit metric M (M = W gives the literal pseudo-inverse form).
SolveResult solveWithMetric(const MatX& A_tilde, const MatX& M, const VecX& u_star,
                            const Vec6& w_dot);

struct ActuatorLimits {
  double max_omega_dot = 10000.0;  // [rad/s^2]
  double max_alpha_dot = 6.0;      // [rad/s]
  double omega_min = 0.0;
  double omega_max = 1250.0;

  static ActuatorLimits fromMorphology(const Morphology& m);
};

struct ActuatorCommand {
  VecX alpha_ref;
  VecX omega_ref;
  VecX u_raw;
  VecX u_saturated;
  bool saturated = false;
};

/// Clamp rates, integrate with explicit Euler, clamp omega_ref to [omega_min, omega_max].
ActuatorCommand saturateIntegrate(const VecX& u, const ActuatorLimits& limits, double dt,
                                  const VecX& alpha_prev, const VecX& omega_prev);

}  // namespace omav::allocation
