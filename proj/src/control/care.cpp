#include "omav/control/care.hpp"

#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace omav::control {

namespace {

using CMat = Eigen::MatrixXcd;

// Swaps the diagonal entries k and k+1 of the upper triangular T, updating Z.
void swapAdjacent(CMat& T, CMat& Z, Eigen::Index k) {
  const std::complex<double> t11 = T(k, k);
  const std::complex<double> t22 = T(k + 1, k + 1);
  Eigen::JacobiRotation<std::complex<double>> G;
  G.makeGivens(T(k, k + 1), t22 - t11);
  T.applyOnTheLeft(k, k + 1, G.adjoint());
  T.applyOnTheRight(k, k + 1, G);
  Z.applyOnTheRight(k, k + 1, G);
  T(k + 1, k) = 0.0;
}

void checkSquare(const MatX& A, const MatX& B, const MatX& Q, const MatX& R) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || Q.rows() != n || Q.cols() != n ||
      R.rows() != B.cols() || R.cols() != B.cols()) {
    throw std::invalid_argument("CARE: inconsistent dimensions");
  }
}

}  // namespace

MatX solveCare(const MatX& A, const MatX& B, const MatX& Q, const MatX& R) {
  checkSquare(A, B, Q, R);
  const Eigen::Index n = A.rows();
  const MatX G = B * R.llt().solve(B.transpose());
  MatX H(2 * n, 2 * n);
  H << A, -G, -Q, -A.transpose();

  Eigen::ComplexSchur<CMat> schur(H.cast<std::complex<double>>());
  CMat T = schur.matrixT();
  CMat Z = schur.matrixU();
  const double scale = 1.0 + H.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (std::abs(T(i, i).real()) < 1e-10 * scale) {
      throw StabilizabilityError("CARE: Hamiltonian has eigenvalues on the imaginary axis");
    }
  }
  // Bubble the stable eigenvalues to the leading block.
  Eigen::Index placed = 0;
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    if (T(i, i).real() < 0.0) {
      for (Eigen::Index k = i; k > placed; --k) swapAdjacent(T, Z, k - 1);
      ++placed;
    }
  }
  if (placed != n) throw StabilizabilityError("CARE: stable subspace has wrong dimension");

  const CMat U1 = Z.topLeftCorner(n, n);
  const CMat U2 = Z.bottomLeftCorner(n, n);
  Eigen::PartialPivLU<CMat> lu(U1.transpose());
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) throw StabilizabilityError("CARE: stable subspace is not a graph");
  const CMat Pc = lu.solve(U2.transpose()).transpose();
  MatX P = Pc.real();
  P = 0.5 * (P + P.transpose());
  if (!P.allFinite()) throw StabilizabilityError("CARE: non-finite solution");
  const Eigen::VectorXcd closed = Eigen::EigenSolver<MatX>(A - G * P).eigenvalues();
  for (Eigen::Index i = 0; i < closed.size(); ++i) {
    if (!(closed[i].real() < 0.0)) throw StabilizabilityError("CARE: closed loop is not Hurwitz");
  }
  return P;
}

MatX solveLyapunov(const MatX& A, const MatX& M) {
  const Eigen::Index n = A.rows();
  const MatX I = MatX::Identity(n, n);
  MatX K = MatX::Zero(n * n, n * n);
  // vec(A^T X + X A) = (I kron A^T + A^T kron I) vec(X)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      K.block(i * n, j * n, n, n) += I(i, j) * A.transpose();
      K.block(i * n, j * n, n, n) += A(j, i) * I;
    }
  }
  const VecX rhs = -Eigen::Map<const VecX>(M.data(), n * n);
  const VecX x = K.partialPivLu().solve(rhs);
  MatX X = Eigen::Map<const MatX>(x.data(), n, n);
  return 0.5 * (X + X.transpose());
}

MatX solveCareKleinman(const MatX& A, const MatX& B, const MatX& Q, const MatX& R,
                       int max_iterations, double tolerance) {
  checkSquare(A, B, Q, R);
  const Eigen::Index n = A.rows();
  // Bass: (A + b I) Z + Z (A + b I)^T = 2 B B^T, K0 = B^T Z^-1.
  const double shift = 1.0 + A.cwiseAbs().rowwise().sum().maxCoeff();
  const MatX As = A + shift * MatX::Identity(n, n);
  const MatX Zb = solveLyapunov(-As.transpose(), 2.0 * B * B.transpose());
  MatX K = B.transpose() * Zb.inverse();
  const MatX Rinv = R.inverse();
  MatX P = MatX::Zero(n, n);
  for (int it = 0; it < max_iterations; ++it) {
    const MatX Ak = A - B * K;
    const MatX Pn = solveLyapunov(Ak, Q + K.transpose() * R * K);
    const double change = (Pn - P).norm() / std::max(1.0, Pn.norm());
    P = Pn;
    K = Rinv * B.transpose() * P;
    if (change < tolerance) break;
  }
  return P;
}

double careResidual(const MatX& A, const MatX& B, const MatX& Q, const MatX& R, const MatX& P) {
  const MatX res = A.transpose() * P + P * A - P * B * R.llt().solve(B.transpose() * P) + Q;
  return res.norm();
}

int controllabilityRank(const MatX& A, const MatX& B) {
  const Eigen::Index n = A.rows();
  MatX C(n, n * B.cols());
  MatX blk = B;
  for (Eigen::Index i = 0; i < n; ++i) {
    C.middleCols(i * B.cols(), B.cols()) = blk;
    blk = A * blk;
  }
  Eigen::JacobiSVD<MatX> svd(C);
  const VecX s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s[i] > 1e-9 * s[0];
  return rank;
}

}  // namespace omav::control
