#pragma once

#include "omav/control/error_state.hpp"
#include "omav/control/gains.hpp"

namespace omav::control {

using Mat24 = Eigen::Matrix<double, 24, 24>;
using Mat24x6 = Eigen::Matrix<double, 24, 6>;
using Mat6x24 = Eigen::Matrix<double, 6, 24>;

struct LinearSystem {
  Mat24 A;
  Mat24x6 B;
};

/// Error dynamics linearized at zero attitude error: chained integrators per
/// axis with the virtual inputs entering at e_a and e_psi.
LinearSystem linearizedSystem();

struct LqriWeights {
  Mat24 Q;
  Mat6 R;
};

LqriWeights lqriWeights(const LqriGains& gains);

/// K = R^-1 B^T P
Mat6x24 lqriGain(const Mat24& P, const Mat24x6& B, const Mat6& R);

/// u = -K e
Vec6 lqriControl(const Vec24& e, const Mat6x24& K);

struct StabilityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
};

/// lambda_min(Q + P B R^-1 B^T P) / (2 |P|_2), the right-hand side below.
double stabilityMargin(const Mat24& Q, const Mat6& R, const Mat24& P, const Mat24x6& B);

/// Sufficient condition (3 + sqrt2)/sqrt2 |e_omega|/|e| < lambda_min(Q + P B R^-1 B^T P) / (2 |P|).
/// |e| = 0 counts as satisfied.
StabilityCheck stabilityCondition(const Mat24& Q, const Mat6& R, const Mat24& P,
                                  const Mat24x6& B, const Vec24& e, const Vec3& e_omega);

/// Holds P, K and the integrators for one vehicle.
class LqriController {
 public:
  explicit LqriController(const LqriGains& gains = {}, IntegratorLimits limits = {});

  /// Virtual input u-bar for the current error; advances integrators by dt.
  Vec6 virtualInput(const RigidBodyState& state, const TrajectorySample& ref, double dt);

  const ErrorState& lastError() const { return last_error_; }
  const StabilityCheck& lastStability() const { return last_stability_; }
  const Mat24& P() const { return P_; }
  const Mat6x24& K() const { return K_; }
  const LqriWeights& weights() const { return weights_; }
  void reset() { integrators_.reset(); }

 private:
  LqriWeights weights_;
  LinearSystem sys_;
  Mat24 P_;
  Mat6x24 K_;
  ErrorIntegrators integrators_;
  ErrorState last_error_;
  StabilityCheck last_stability_;
  double margin_ = 0.0;
};

}  // namespace omav::control
