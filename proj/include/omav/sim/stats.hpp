#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "omav/sim/sim_log.hpp"

namespace omav::sim {

/// Box-plot summary; whiskers are the most extreme data within 1.5 IQR of the box.
struct BoxStats {
  double median = 0.0;
  double lower_quartile = 0.0;
  double upper_quartile = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
};

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantileSorted(const std::vector<double>& sorted, double q);

/// Throws std::invalid_argument for empty data.
BoxStats boxStats(std::vector<double> values);

struct TrackingStats {
  std::array<BoxStats, 3> position;  // e_p x, y, z [m]
  std::array<BoxStats, 3> attitude;  // e_R x, y, z [rad]
  BoxStats position_norm;
  std::size_t samples = 0;
};

/// Throws std::invalid_argument for an empty log.
TrackingStats trackingStats(const SimLog& log);

struct TimePoint {
  double time;
  double value;
};
std::vector<TimePoint> efficiencyTimeline(const SimLog& log);
std::vector<TimePoint> conditionTimeline(const SimLog& log);

nlohmann::json toJson(const BoxStats& b);
nlohmann::json toJson(const TrackingStats& s);

}  // namespace omav::sim
