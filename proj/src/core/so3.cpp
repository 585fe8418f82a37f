#include "omav/core/so3.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace omav {

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& M, double tol) {
  const double asym = (M + M.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol) {
    throw PreconditionError("vee: matrix is not antisymmetric");
  }
  return Vec3(M(2, 1), M(0, 2), M(1, 0));
}

Mat3 expSO3(const Vec3& rotvec) {
  const double angle = rotvec.norm();
  const Mat3 K = skew(rotvec);
  if (angle < 1e-8) {
    // second-order Taylor expansion
    return Mat3::Identity() + K + 0.5 * K * K;
  }
  const double a = std::sin(angle) / angle;
  const double b = (1.0 - std::cos(angle)) / (angle * angle);
  return Mat3::Identity() + a * K + b * K * K;
}

Vec3 logSO3(const Mat3& R) {
  const Eigen::AngleAxisd aa(R);
  return aa.angle() * aa.axis();
}

Mat3 rotX(double angle) { return Eigen::AngleAxisd(angle, Vec3::UnitX()).toRotationMatrix(); }
Mat3 rotY(double angle) { return Eigen::AngleAxisd(angle, Vec3::UnitY()).toRotationMatrix(); }
Mat3 rotZ(double angle) { return Eigen::AngleAxisd(angle, Vec3::UnitZ()).toRotationMatrix(); }

Mat3 orthonormalize(const Mat3& R) {
  Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 U = svd.matrixU();
  const Mat3 V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) {
    U.col(2) *= -1.0;
  }
  return U * V.transpose();
}

bool isRotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() < tol &&
         std::abs(R.determinant() - 1.0) < tol;
}

Vec3 attitudeError(const Mat3& R_WB, const Mat3& R_WBd) {
  const Mat3 E = R_WBd.transpose() * R_WB - R_WB.transpose() * R_WBd;
  return 0.5 * Vec3(E(2, 1), E(0, 2), E(1, 0));
}

}  // namespace omav
