#pragma once

#include <string>

#include "omav/sim/trajectory.hpp"

namespace omav::sim {

/// Test suite:
///   a  figure eight, tilt <= 30 deg, 29.4 s     b  same path, tilt <= 80 deg, 29.4 s
///   c  fast figure eight, tilt <= 30 deg, 10.7 s
///   d  90 deg roll, translate and back, rotate about y_B, 36.1 s
///   e  90 deg roll, two turns about z_B along a circle, 35.5 s
///   f  roll flip, 16 s                          g  pitch flip, 8 s
/// `scale` multiplies translational amplitudes. Throws std::invalid_argument for
/// an unknown kind.
Trajectory namedTrajectory(char kind, double scale = 1.0);

bool isNamedTrajectory(const std::string& s);

}  // namespace omav::sim
