#include "omav/design/linear_program.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace omav::design {

namespace {

constexpr double kPivotTol = 1e-11;

class Tableau {
 public:
  Tableau(MatX table, std::vector<int> basis) : t_(std::move(table)), basis_(std::move(basis)) {}

  // Last row holds reduced costs of a minimization objective; last column is the rhs.
  LpStatus optimize(int num_candidates, int max_iterations, int& iterations) {
    const Eigen::Index obj = t_.rows() - 1;
    const Eigen::Index rhs = t_.cols() - 1;
    int degenerate_run = 0;
    bool bland = false;
    while (iterations < max_iterations) {
      ++iterations;
      bland = bland || degenerate_run > 50;
      int enter = -1;
      double best = -1e-10;
      for (int j = 0; j < num_candidates; ++j) {
        const double rc = t_(obj, j);
        if (rc < best) {
          enter = j;
          if (bland) break;
          best = rc;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < obj; ++i) {
        const double a = t_(i, enter);
        if (a > kPivotTol) {
          const double r = t_(i, rhs) / a;
          const double tie = 1e-12 * (1.0 + std::abs(ratio));
          if (leave < 0 || r < ratio - tie || (r <= ratio + tie && basis_[i] < basis_[leave])) {
            ratio = r;
            leave = static_cast<int>(i);
          }
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      degenerate_run = ratio < 1e-12 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    return LpStatus::kIterationLimit;
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != row) {
        const double f = t_(i, col);
        if (f != 0.0) t_.row(i) -= f * t_.row(row);
      }
    }
    basis_[row] = col;
  }

  MatX& table() { return t_; }
  std::vector<int>& basis() { return basis_; }

 private:
  MatX t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solveLinearProgram(const VecX& c, const MatX& A_eq, const VecX& b_eq,
                            const MatX& A_ub, const VecX& b_ub, int max_iterations) {
  const Eigen::Index n = c.size();
  const Eigen::Index meq = A_eq.rows();
  const Eigen::Index mub = A_ub.rows();
  if ((meq > 0 && A_eq.cols() != n) || (mub > 0 && A_ub.cols() != n) || b_eq.size() != meq ||
      b_ub.size() != mub) {
    throw std::invalid_argument("solveLinearProgram: inconsistent dimensions");
  }
  const Eigen::Index m = meq + mub;

  // Columns: x | slack/surplus (one per inequality) | artificials (one per row) | rhs.
  const Eigen::Index slack0 = n;
  const Eigen::Index art0 = n + mub;
  const Eigen::Index ncols = n + mub + m + 1;
  MatX t = MatX::Zero(m + 1, ncols);
  std::vector<int> basis(m);
  for (Eigen::Index i = 0; i < meq; ++i) {
    const double sign = b_eq[i] < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * A_eq.row(i);
    t(i, ncols - 1) = sign * b_eq[i];
  }
  for (Eigen::Index i = 0; i < mub; ++i) {
    const Eigen::Index r = meq + i;
    const double sign = b_ub[i] < 0.0 ? -1.0 : 1.0;
    t.row(r).head(n) = sign * A_ub.row(i);
    t(r, slack0 + i) = sign;
    t(r, ncols - 1) = sign * b_ub[i];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, art0 + i) = 1.0;
    basis[i] = static_cast<int>(art0 + i);
  }
  // Phase 1: minimize the sum of artificials.
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) t(m, art0 + i) = 0.0;

  Tableau tab(std::move(t), std::move(basis));
  int iterations = 0;
  LpResult result;
  LpStatus status = tab.optimize(static_cast<int>(art0), max_iterations, iterations);
  MatX& T = tab.table();
  if (status == LpStatus::kIterationLimit) {
    result.status = status;
    return result;
  }
  const double scale = 1.0 + (m > 0 ? T.col(ncols - 1).head(m).cwiseAbs().maxCoeff() : 0.0);
  if (-T(m, ncols - 1) > 1e-9 * scale) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  // Drive remaining artificials out of the basis where possible.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[i] >= art0) {
      for (Eigen::Index j = 0; j < art0; ++j) {
        if (std::abs(T(i, j)) > 1e-9) {
          tab.pivot(static_cast<int>(i), static_cast<int>(j));
          break;
        }
      }
    }
  }
  // Phase 2: minimize -c^T x. Artificial columns are excluded from pricing.
  T.row(m).setZero();
  T.row(m).head(n) = -c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const int b = tab.basis()[i];
    if (b < art0 && T(m, b) != 0.0) T.row(m) -= T(m, b) * T.row(i);
  }
  status = tab.optimize(static_cast<int>(art0), max_iterations, iterations);
  result.status = status;
  if (status != LpStatus::kOptimal) return result;
  result.x = VecX::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const int b = tab.basis()[i];
    if (b < n) result.x[b] = T(i, ncols - 1);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace omav::design
