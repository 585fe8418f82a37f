#include "omav/control/lqri.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "omav/control/care.hpp"

namespace omav::control {

LinearSystem linearizedSystem() {
  LinearSystem s;
  s.A.setZero();
  s.B.setZero();
  const Mat3 I = Mat3::Identity();
  s.A.block<3, 3>(0, 6) = I;    // e_p'   = e_v
  s.A.block<3, 3>(3, 0) = I;    // e_p_i' = e_p
  s.A.block<3, 3>(6, 9) = I;    // e_v'   = e_a
  s.A.block<3, 3>(12, 18) = I;  // e_R'   = e_omega
  s.A.block<3, 3>(15, 12) = I;  // e_R_i' = e_R
  s.A.block<3, 3>(18, 21) = I;  // e_omega' = e_psi
  s.B.block<3, 3>(9, 0) = I;    // e_a'   = u_1:3
  s.B.block<3, 3>(21, 3) = I;   // e_psi' = u_4:6
  return s;
}

LqriWeights lqriWeights(const LqriGains& g) {
  g.validate();
  LqriWeights w;
  const double q[8] = {g.k_p, g.k_p_i, g.k_v, g.k_a, g.k_R, g.k_R_i, g.k_omega, g.k_psi};
  VecX diag(24);
  for (int b = 0; b < 8; ++b) diag.segment<3>(3 * b).setConstant(q[b]);
  w.Q = diag.asDiagonal();
  Vec6 r;
  r << g.r_f_dot, g.r_tau_dot;
  w.R = r.asDiagonal();
  return w;
}

Mat6x24 lqriGain(const Mat24& P, const Mat24x6& B, const Mat6& R) {
  return R.llt().solve(B.transpose() * P);
}

Vec6 lqriControl(const Vec24& e, const Mat6x24& K) { return -K * e; }

double stabilityMargin(const Mat24& Q, const Mat6& R, const Mat24& P, const Mat24x6& B) {
  const Mat24 M = Q + P * B * R.llt().solve(B.transpose() * P);
  const double lambda_min = Eigen::SelfAdjointEigenSolver<Mat24>(M, Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .minCoeff();
  const double p_norm = Eigen::SelfAdjointEigenSolver<Mat24>(P, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .cwiseAbs()
                            .maxCoeff();
  return lambda_min / (2.0 * p_norm);
}

namespace {

StabilityCheck checkAgainst(double rhs, const Vec24& e, const Vec3& e_omega) {
  StabilityCheck c;
  c.rhs = rhs;
  const double en = e.norm();
  if (en == 0.0) return c;
  c.lhs = (3.0 + std::sqrt(2.0)) / std::sqrt(2.0) * e_omega.norm() / en;
  c.satisfied = c.lhs < c.rhs;
  return c;
}

}  // namespace

StabilityCheck stabilityCondition(const Mat24& Q, const Mat6& R, const Mat24& P,
                                  const Mat24x6& B, const Vec24& e, const Vec3& e_omega) {
  return checkAgainst(stabilityMargin(Q, R, P, B), e, e_omega);
}

LqriController::LqriController(const LqriGains& gains, IntegratorLimits limits)
    : weights_(lqriWeights(gains)), sys_(linearizedSystem()), integrators_(limits) {
  P_ = solveCare(sys_.A, sys_.B, weights_.Q, weights_.R);
  K_ = lqriGain(P_, sys_.B, weights_.R);
  margin_ = stabilityMargin(weights_.Q, weights_.R, P_, sys_.B);
}

Vec6 LqriController::virtualInput(const RigidBodyState& state, const TrajectorySample& ref,
                                  double dt) {
  last_error_ = computeErrorState(state, ref, integrators_, dt);
  const Vec24 e = last_error_.stacked();
  last_stability_ = checkAgainst(margin_, e, last_error_.angular_velocity);
  return lqriControl(e, K_);
}

}  // namespace omav::control
