#include "omav/core/allocation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

namespace omav {

RotorWrench rotorWrench(double omega, const RotorParams& params) {
  if (omega < 0.0) throw std::domain_error("rotor speed must be non-negative");
  const double Omega = omega * omega;
  return {params.c_f * Omega, params.torqueCoefficient() * Omega};
}

MatX staticAllocation(const Morphology& m) {
  const int nr = m.numRotors();
  MatX A(6, 2 * nr);
  const double cf = m.rotor.c_f;
  const double cd = m.rotor.c_d;
  for (int k = 0; k < nr; ++k) {
    const ArmGeometry& arm = m.arms[m.armOfRotor(k)];
    const Vec3 position = arm.length * arm.axis();
    const double s = m.spinOfRotor(k);
    const Vec3 dirs[2] = {arm.lateralDirection(), arm.verticalDirection()};
    for (int c = 0; c < 2; ++c) {
      A.block<3, 1>(0, 2 * k + c) = cf * dirs[c];
      A.block<3, 1>(3, 2 * k + c) = cf * (position.cross(dirs[c]) - s * cd * dirs[c]);
    }
  }
  return A;
}

VecX omegaTilde(const VecX& Omega, const VecX& alpha) {
  const Eigen::Index n = alpha.size();
  if (n == 0 || Omega.size() % n != 0) {
    throw DimensionError("omegaTilde: rotor count must be a multiple of the arm count");
  }
  VecX out(2 * Omega.size());
  for (Eigen::Index k = 0; k < Omega.size(); ++k) {
    const double a = alpha[k % n];
    out[2 * k] = std::sin(a) * Omega[k];
    out[2 * k + 1] = std::cos(a) * Omega[k];
  }
  return out;
}

MatX instantaneousAllocation(const MatX& A, const VecX& alpha) {
  const Eigen::Index nr = A.cols() / 2;
  const Eigen::Index n = alpha.size();
  if (A.cols() % 2 != 0 || n == 0 || nr % n != 0) {
    throw DimensionError("instantaneousAllocation: inconsistent dimensions");
  }
  MatX Aa(A.rows(), nr);
  for (Eigen::Index k = 0; k < nr; ++k) {
    const double a = alpha[k % n];
    Aa.col(k) = std::sin(a) * A.col(2 * k) + std::cos(a) * A.col(2 * k + 1);
  }
  return Aa;
}

VecX squared(const VecX& omega) { return omega.array().square().matrix(); }

double conditionNumber(const MatX& M) {
  if (M.size() == 0) return kInfiniteCondition;
  Eigen::JacobiSVD<MatX> svd(M);
  const auto& sv = svd.singularValues();
  const double smax = sv.maxCoeff();
  const double smin = sv.minCoeff();
  if (!(smax > 0.0) || smin < 1e-12 * smax) return kInfiniteCondition;
  return smax / smin;
}

}  // namespace omav
