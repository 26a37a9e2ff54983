#include "aliasscope/maxima.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "aliasscope/errors.hpp"
#include "aliasscope/log.hpp"

namespace aliasscope {

ActivityInterval find_max_activity_interval(const FluctuationSeries& fluct) {
  const std::vector<double>& f = fluct.values;
  if (f.size() < 3)
    throw std::invalid_argument("find_max_activity_interval: need at least 3 samples");

  const auto [lo_it, hi_it] = std::minmax_element(f.begin(), f.end());
  if (*lo_it == *hi_it)
    throw DegenerateIntervalError(
        "find_max_activity_interval: constant series has no fluctuation structure");

  // positions of the two largest values, earliest first on ties
  std::size_t first = 0, second = std::size_t(-1);
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] > f[first]) first = i;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == first) continue;
    if (second == std::size_t(-1) || f[i] > f[second]) second = i;
  }

  ActivityInterval out;
  out.start = std::min(first, second);
  out.end = std::max(first, second);
  out.degenerate_width = out.end - out.start < 2;
  if (out.degenerate_width)
    log::warn("find_max_activity_interval: the two strongest fluctuations are adjacent; "
              "interval has no interior");
  return out;
}

namespace {

// Local maxima of the thresholded profile inside the interval: contiguous
// above-threshold positions form hills, and within a hill a position counts
// when it exceeds its in-hill neighbors; plateaus count once, at their
// leftmost point. Hills separated by below-threshold gaps are independent,
// so an isolated spike always contributes exactly one maximum.
std::vector<std::size_t> maxima_above(const std::vector<double>& f, const ActivityInterval& j,
                                      double p) {
  std::vector<std::size_t> out;
  std::size_t i = j.start;
  while (i <= j.end) {
    if (!(f[i] > p)) {
      ++i;
      continue;
    }
    std::size_t hill_end = i;
    while (hill_end + 1 <= j.end && f[hill_end + 1] > p) ++hill_end;

    std::size_t pos = i;
    while (pos <= hill_end) {
      std::size_t plateau_end = pos;
      while (plateau_end + 1 <= hill_end && f[plateau_end + 1] == f[pos]) ++plateau_end;
      const bool left_ok = pos == i || f[pos - 1] < f[pos];
      const bool right_ok = plateau_end == hill_end || f[plateau_end + 1] < f[pos];
      if (left_ok && right_ok) out.push_back(pos);
      pos = plateau_end + 1;
    }
    i = hill_end + 1;
  }
  return out;
}

}  // namespace

ThresholdScan threshold_scan(const FluctuationSeries& fluct, const ActivityInterval& interval,
                             int target_count) {
  if (target_count < 1) throw std::invalid_argument("threshold_scan: target count must be >= 1");
  if (interval.end >= fluct.values.size())
    throw std::invalid_argument("threshold_scan: interval outside the series");

  // candidate thresholds: distinct nonnegative values inside J, descending
  std::set<double, std::greater<double>> candidates;
  for (std::size_t i = interval.start; i <= interval.end; ++i)
    if (fluct.values[i] >= 0.0) candidates.insert(fluct.values[i]);

  ThresholdScan scan;
  std::set<int> seen_counts;
  for (double p : candidates) {
    const auto maxima = maxima_above(fluct.values, interval, p);
    const int count = static_cast<int>(maxima.size());
    scan.traversed.emplace_back(p, count);
    seen_counts.insert(count);
    if (count == target_count) {
      scan.threshold = p;
      scan.maxima = maxima;
      return scan;
    }
  }
  throw NotAchievableError(
      "threshold_scan: no threshold yields " + std::to_string(target_count) + " local maxima",
      std::vector<int>(seen_counts.begin(), seen_counts.end()));
}

SpacingReport spacing_report(const std::vector<std::size_t>& maxima, double candidate_period) {
  if (maxima.size() < 2) throw std::invalid_argument("spacing_report: need at least 2 maxima");

  SpacingReport rep;
  rep.candidate_period = candidate_period;
  rep.distances.reserve(maxima.size() - 1);
  for (std::size_t i = 1; i < maxima.size(); ++i)
    rep.distances.push_back(static_cast<long>(maxima[i]) - static_cast<long>(maxima[i - 1]));

  const auto [lo, hi] = std::minmax_element(rep.distances.begin(), rep.distances.end());
  rep.dispersion = *hi - *lo;
  for (long d : rep.distances) {
    if (static_cast<double>(d) == candidate_period) ++rep.exact_matches;
    if (std::abs(static_cast<double>(d) - candidate_period) <= 1.0) ++rep.within_one;
  }
  return rep;
}

MaximaReport analyze_maxima(const FluctuationSeries& fluct, int target_count,
                            double candidate_period) {
  MaximaReport rep;
  rep.interval = find_max_activity_interval(fluct);
  rep.interval_start_label = fluct.start_label + static_cast<long>(rep.interval.start);
  rep.interval_end_label = fluct.start_label + static_cast<long>(rep.interval.end);

  const ThresholdScan scan = threshold_scan(fluct, rep.interval, target_count);
  rep.threshold = scan.threshold;
  rep.maxima_labels.reserve(scan.maxima.size());
  for (std::size_t pos : scan.maxima)
    rep.maxima_labels.push_back(fluct.start_label + static_cast<long>(pos));

  rep.spacing = spacing_report(scan.maxima, candidate_period);
  return rep;
}

}  // namespace aliasscope
