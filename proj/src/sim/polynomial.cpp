#include "omav/sim/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace omav::sim {

namespace {

// d^k/ds^k s^j at s
double monomialDerivative(int j, int k, double s) {
  if (k > j) return 0.0;
  double c = 1.0;
  for (int i = 0; i < k; ++i) c *= j - i;
  return c * std::pow(s, j - k);
}

}  // namespace

PiecewisePolynomial PiecewisePolynomial::septicSpline(const std::vector<double>& times,
                                                      const std::vector<double>& values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw std::invalid_argument("septicSpline: need >= 2 knots with one value each");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("septicSpline: knot times must be strictly increasing");
    }
  }
  const int M = static_cast<int>(times.size()) - 1;
  const int N = 8 * M;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(N);
  int row = 0;
  auto dt = [&](int i) { return times[i + 1] - times[i]; };
  // Row entries for d^k/dt^k of segment i at local s (scaled by T^-k).
  auto put = [&](int r, int seg, int k, double s, double sign) {
    const double scale = std::pow(dt(seg), -k);
    for (int j = 0; j < 8; ++j) S(r, 8 * seg + j) += sign * scale * monomialDerivative(j, k, s);
  };
  for (int i = 0; i < M; ++i) {
    put(row, i, 0, 0.0, 1.0);
    b[row++] = values[i];
    put(row, i, 0, 1.0, 1.0);
    b[row++] = values[i + 1];
  }
  for (int k = 1; k <= 3; ++k) put(row++, 0, k, 0.0, 1.0);
  for (int k = 1; k <= 3; ++k) put(row++, M - 1, k, 1.0, 1.0);
  for (int i = 0; i + 1 < M; ++i) {
    for (int k = 1; k <= 6; ++k) {
      put(row, i, k, 1.0, 1.0);
      put(row, i + 1, k, 0.0, -1.0);
      ++row;
    }
  }
  const Eigen::VectorXd c = S.partialPivLu().solve(b);
  PiecewisePolynomial p;
  p.knots_ = times;
  p.coeffs_.resize(M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < 8; ++j) p.coeffs_[i][j] = c[8 * i + j];
  }
  return p;
}

double PiecewisePolynomial::evaluate(double t, int derivative) const {
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  int seg = static_cast<int>(it - knots_.begin()) - 1;
  seg = std::clamp(seg, 0, numSegments() - 1);
  const double T = knots_[seg + 1] - knots_[seg];
  const double s = (t - knots_[seg]) / T;
  double v = 0.0;
  for (int j = 7; j >= derivative; --j) {
    double c = coeffs_[seg][j];
    for (int i = 0; i < derivative; ++i) c *= j - i;
    v = v * s + c;
  }
  return v * std::pow(T, -derivative);
}

}  // namespace omav::sim
