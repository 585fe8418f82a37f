#pragma once

#include <deque>
#include <vector>

#include "omav/core/types.hpp"

namespace omav::sim {

/// Savitzky-Golay weights for a causal window of `window` uniformly spaced samples
/// (oldest first) fitted with a degree-`order` polynomial and evaluated at the
/// newest sample. derivative = 0 gives the smoothed value, 1 the slope per sample.
std::vector<double> savitzkyGolayWeights(int window, int order, int derivative);

struct SgOutput {
  double value = 0.0;
  bool filtered = false;  // false: buffer shorter than the window, value passed through
};

/// Smoothed newest value of `buffer` (oldest first).
SgOutput sgFilter(const std::vector<double>& buffer, int window, int order = 1);
/// Derivative of the local fit at the newest sample; dt is the sample spacing.
/// Short buffers fall back to a backward difference (0 for a single sample).
SgOutput sgDerivative(const std::vector<double>& buffer, double dt, int window, int order = 1);

/// Streaming 3-axis filter.
class SgFilter3 {
 public:
  SgFilter3(int window, int order, double dt);

  void push(const Vec3& x);
  void reset() { buffer_.clear(); }
  /// Smoothed newest sample (raw newest sample until the window is full).
  Vec3 value() const;
  /// Slope of the fit at the newest sample.
  Vec3 derivative() const;
  bool ready() const { return static_cast<int>(buffer_.size()) == window_; }

 private:
  int window_;
  double dt_;
  std::vector<double> w0_;
  std::vector<double> w1_;
  std::deque<Vec3> buffer_;
};

}  // namespace omav::sim
