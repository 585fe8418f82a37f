#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "omav/control/error_state.hpp"
#include "omav/core/dynamics.hpp"

namespace omav::sim {

inline constexpr int kSimLogSchemaVersion = 1;

struct SimLogRow {
  double time = 0.0;
  RigidBodyState state;
  control::TrajectorySample reference;
  control::ErrorState error;
  VecX alpha_ref;
  VecX omega_ref;
  VecX alpha;
  VecX omega;
  double eta_f = 0.0;
  double log_kappa = 0.0;
  double stability_lhs = 0.0;
  double stability_rhs = 0.0;
  bool regularized = false;
  bool saturated = false;
  double residual = 0.0;
};

struct SimLog {
  int num_arms = 0;
  int num_rotors = 0;
  std::vector<SimLogRow> rows;
  bool diverged = false;
  std::string message;

  void append(SimLogRow row);
};

std::vector<std::string> simLogColumns(int num_arms, int num_rotors);

/// CSV with a header row; numbers with 10 significant digits.
void writeSimLogCsv(std::ostream& os, const SimLog& log);

}  // namespace omav::sim
