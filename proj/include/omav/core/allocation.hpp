#pragma once

#include <limits>
#include <stdexcept>

#include "omav/core/morphology.hpp"

namespace omav {

class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct RotorWrench {
  double thrust = 0.0;  // c_f * omega^2 [N]
  double torque = 0.0;  // c_f * c_d * omega^2 [N m]
};

/// Thrust and drag torque magnitudes of a single rotor. Throws std::domain_error
/// for negative speeds.
RotorWrench rotorWrench(double omega, const RotorParams& params);

/// Static allocation matrix A (6 x 2 n_r): w_B = A * omegaTilde(Omega, alpha).
/// Column 2k is the lateral and 2k+1 the vertical component of rotor k.
MatX staticAllocation(const Morphology& m);

/// Interleaved [sin(a) Omega_k, cos(a) Omega_k] with a the tilt of rotor k's arm.
VecX omegaTilde(const VecX& Omega, const VecX& alpha);

/// A_alpha (6 x n_r) with A_alpha * Omega == A * omegaTilde(Omega, alpha).
MatX instantaneousAllocation(const MatX& A, const VecX& alpha);

/// Squared rotor speeds.
VecX squared(const VecX& omega);

inline constexpr double kInfiniteCondition = std::numeric_limits<double>::infinity();

/// sigma_max / sigma_min, or +inf when sigma_min < 1e-12 * sigma_max.
double conditionNumber(const MatX& M);

}  // namespace omav
