#include "omav/sim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace omav::sim {

double quantileSorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

BoxStats boxStats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("boxStats: no data");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.median = quantileSorted(values, 0.5);
  b.lower_quartile = quantileSorted(values, 0.25);
  b.upper_quartile = quantileSorted(values, 0.75);
  const double iqr = b.upper_quartile - b.lower_quartile;
  const double lo = b.lower_quartile - 1.5 * iqr;
  const double hi = b.upper_quartile + 1.5 * iqr;
  b.whisker_low = *std::lower_bound(values.begin(), values.end(), lo);
  b.whisker_high = *(std::upper_bound(values.begin(), values.end(), hi) - 1);
  return b;
}

TrackingStats trackingStats(const SimLog& log) {
  if (log.rows.empty()) throw std::invalid_argument("trackingStats: empty log");
  TrackingStats s;
  s.samples = log.rows.size();
  std::array<std::vector<double>, 3> p, r;
  std::vector<double> pn;
  for (const auto& row : log.rows) {
    for (int a = 0; a < 3; ++a) {
      p[a].push_back(row.error.position[a]);
      r[a].push_back(row.error.attitude[a]);
    }
    pn.push_back(row.error.position.norm());
  }
  for (int a = 0; a < 3; ++a) {
    s.position[a] = boxStats(std::move(p[a]));
    s.attitude[a] = boxStats(std::move(r[a]));
  }
  s.position_norm = boxStats(std::move(pn));
  return s;
}

std::vector<TimePoint> efficiencyTimeline(const SimLog& log) {
  std::vector<TimePoint> out;
  out.reserve(log.rows.size());
  for (const auto& row : log.rows) out.push_back({row.time, row.eta_f});
  return out;
}

std::vector<TimePoint> conditionTimeline(const SimLog& log) {
  std::vector<TimePoint> out;
  out.reserve(log.rows.size());
  for (const auto& row : log.rows) out.push_back({row.time, row.log_kappa});
  return out;
}

nlohmann::json toJson(const BoxStats& b) {
  return {{"median", b.median},
          {"q1", b.lower_quartile},
          {"q3", b.upper_quartile},
          {"whisker_low", b.whisker_low},
          {"whisker_high", b.whisker_high}};
}

nlohmann::json toJson(const TrackingStats& s) {
  nlohmann::json j;
  const char* axes[] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    j["position"][axes[a]] = toJson(s.position[a]);
    j["attitude"][axes[a]] = toJson(s.attitude[a]);
  }
  j["position_norm"] = toJson(s.position_norm);
  j["samples"] = s.samples;
  return j;
}

}  // namespace omav::sim
