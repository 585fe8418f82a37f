#pragma once

#include <array>
#include <vector>

namespace omav::sim {

/// Piecewise degree-7 polynomial in one variable.
class PiecewisePolynomial {
 public:
  /// Interpolating spline through (times[i], values[i]): derivatives 1..6
  /// continuous at interior knots, derivatives 1..3 zero at both ends.
  /// Throws std::invalid_argument for < 2 knots or non-increasing times.
  static PiecewisePolynomial septicSpline(const std::vector<double>& times,
                                          const std::vector<double>& values);

  /// Derivative of order `derivative` (0..7). Outside the knot range the end
  /// segments are extrapolated.
  double evaluate(double t, int derivative = 0) const;

  double startTime() const { return knots_.front(); }
  double endTime() const { return knots_.back(); }
  int numSegments() const { return static_cast<int>(coeffs_.size()); }

 private:
  std::vector<double> knots_;
  // Coefficients in the normalized local variable s = (t - t_i) / T_i.
  std::vector<std::array<double, 8>> coeffs_;
};

}  // namespace omav::sim
