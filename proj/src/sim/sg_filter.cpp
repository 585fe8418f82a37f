#include "omav/sim/sg_filter.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace omav::sim {

std::vector<double> savitzkyGolayWeights(int window, int order, int derivative) {
  if (window < 1 || order < 0 || order >= window || window % 2 == 0) {
    throw std::invalid_argument("SG filter needs an odd window > order >= 0");
  }
  if (derivative < 0 || derivative > order) {
    throw std::invalid_argument("SG derivative order must be within the fit order");
  }
  // Local abscissa x = i - (window - 1), newest sample at x = 0.
  MatX V(window, order + 1);
  for (int i = 0; i < window; ++i) {
    const double x = static_cast<double>(i - (window - 1));
    for (int k = 0; k <= order; ++k) V(i, k) = std::pow(x, k);
  }
  const MatX pinv = V.completeOrthogonalDecomposition().pseudoInverse();
  double fact = 1.0;
  for (int k = 2; k <= derivative; ++k) fact *= k;
  std::vector<double> w(window);
  for (int i = 0; i < window; ++i) w[i] = fact * pinv(derivative, i);
  return w;
}

SgOutput sgFilter(const std::vector<double>& buffer, int window, int order) {
  if (buffer.empty()) throw std::invalid_argument("sgFilter: empty buffer");
  if (static_cast<int>(buffer.size()) < window) return {buffer.back(), false};
  const auto w = savitzkyGolayWeights(window, order, 0);
  const std::size_t off = buffer.size() - window;
  double v = 0.0;
  for (int i = 0; i < window; ++i) v += w[i] * buffer[off + i];
  return {v, true};
}

SgOutput sgDerivative(const std::vector<double>& buffer, double dt, int window, int order) {
  if (buffer.empty()) throw std::invalid_argument("sgDerivative: empty buffer");
  if (!(dt > 0.0)) throw std::invalid_argument("sgDerivative: dt must be positive");
  const std::size_t n = buffer.size();
  if (static_cast<int>(n) < window) {
    return {n < 2 ? 0.0 : (buffer[n - 1] - buffer[n - 2]) / dt, false};
  }
  const auto w = savitzkyGolayWeights(window, order, 1);
  const std::size_t off = n - window;
  double v = 0.0;
  for (int i = 0; i < window; ++i) v += w[i] * buffer[off + i];
  return {v / dt, true};
}

SgFilter3::SgFilter3(int window, int order, double dt)
    : window_(window),
      dt_(dt),
      w0_(savitzkyGolayWeights(window, order, 0)),
      w1_(savitzkyGolayWeights(window, order, 1)) {
  if (!(dt > 0.0)) throw std::invalid_argument("SgFilter3: dt must be positive");
}

void SgFilter3::push(const Vec3& x) {
  buffer_.push_back(x);
  if (static_cast<int>(buffer_.size()) > window_) buffer_.pop_front();
}

Vec3 SgFilter3::value() const {
  if (buffer_.empty()) return Vec3::Zero();
  if (!ready()) return buffer_.back();
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < window_; ++i) v += w0_[i] * buffer_[i];
  return v;
}

Vec3 SgFilter3::derivative() const {
  const std::size_t n = buffer_.size();
  if (n < 2) return Vec3::Zero();
  if (!ready()) return (buffer_[n - 1] - buffer_[n - 2]) / dt_;
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < window_; ++i) v += w1_[i] * buffer_[i];
  return v / dt_;
}

}  // namespace omav::sim
