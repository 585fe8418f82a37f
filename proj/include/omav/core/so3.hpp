#pragma once

#include <stdexcept>

#include "omav/core/types.hpp"

namespace omav {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// [v]_x such that skew(v) * w == v.cross(w).
Mat3 skew(const Vec3& v);

/// Inverse of skew(). Throws PreconditionError unless M is antisymmetric
/// within `tol`.
Vec3 vee(const Mat3& M, double tol = 1e-9);

/// Rodrigues exponential of a rotation vector.
Mat3 expSO3(const Vec3& rotvec);

/// Principal logarithm (angle in [0, pi]).
Vec3 logSO3(const Mat3& R);

Mat3 rotX(double angle);
Mat3 rotY(double angle);
Mat3 rotZ(double angle);

/// Projects a nearly-orthonormal matrix back onto SO(3) (SVD polar factor).
Mat3 orthonormalize(const Mat3& R);

bool isRotation(const Mat3& R, double tol = 1e-9);

/// Geometric attitude error 0.5 * vee(Rd^T R - R^T Rd), body frame.
Vec3 attitudeError(const Mat3& R_WB, const Mat3& R_WBd);

}  // namespace omav
