#pragma once

#include "omav/core/types.hpp"

namespace omav::design {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  VecX x;
  double objective = 0.0;
};

/// Dense two-phase simplex for
///   maximize c^T x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
/// Either constraint block may have zero rows. Dantzig pricing with a switch to
/// Bland's rule after a run of degenerate pivots.
LpResult solveLinearProgram(const VecX& c, const MatX& A_eq, const VecX& b_eq,
                            const MatX& A_ub, const VecX& b_ub, int max_iterations = 20000);

}  // namespace omav::design
