#pragma once

#include <functional>

#include "omav/core/types.hpp"

namespace omav::design {

struct NelderMeadOptions {
  double initial_step = 0.2;
  int max_evaluations = 20000;
  double f_tolerance = 1e-12;
  double x_tolerance = 1e-9;
};

struct NelderMeadResult {
  VecX x;
  double value = 0.0;
  int evaluations = 0;
};

/// Adaptive Nelder-Mead (dimension-dependent coefficients of Gao & Han).
NelderMeadResult nelderMead(const std::function<double(const VecX&)>& f, const VecX& x0,
                            const NelderMeadOptions& options = {});

}  // namespace omav::design
