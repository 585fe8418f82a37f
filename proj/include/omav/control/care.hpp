#pragma once

#include <stdexcept>

#include "omav/core/types.hpp"

namespace omav::control {

class StabilizabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stabilizing solution of A^T P + P A - P B R^-1 B^T P + Q = 0 from the stable
/// invariant subspace of the Hamiltonian (ordered complex Schur form).
/// Throws StabilizabilityError when the Hamiltonian has eigenvalues on the
/// imaginary axis or the subspace is not a graph.
MatX solveCare(const MatX& A, const MatX& B, const MatX& Q, const MatX& R);

/// Kleinman-Newton iteration started from a Bass stabilizing gain. Slow
/// (Kronecker Lyapunov solves), intended as a test oracle for small systems.
MatX solveCareKleinman(const MatX& A, const MatX& B, const MatX& Q, const MatX& R,
                       int max_iterations = 100, double tolerance = 1e-13);

/// Solves A^T X + X A = -M (dense Kronecker form).
MatX solveLyapunov(const MatX& A, const MatX& M);

/// || A^T P + P A - P B R^-1 B^T P + Q ||_F
double careResidual(const MatX& A, const MatX& B, const MatX& Q, const MatX& R, const MatX& P);

/// Number of linearly independent columns of [B, AB, ..., A^{n-1}B].
int controllabilityRank(const MatX& A, const MatX& B);

}  // namespace omav::control
