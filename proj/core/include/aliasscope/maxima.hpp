#pragma once

#include <cstddef>
#include <vector>

#include "aliasscope/timeseries.hpp"

namespace aliasscope {

// Maximum-activity interval: the span between the positions of the two
// largest fluctuation values, both ends inclusive (index space).
struct ActivityInterval {
  std::size_t start = 0;
  std::size_t end = 0;
  bool degenerate_width = false;  // fewer than one interior sample

  std::size_t length() const { return end - start + 1; }
};

// Ties go to the earliest position. Throws DegenerateIntervalError when the
// series is constant (no fluctuation structure to bracket).
ActivityInterval find_max_activity_interval(const FluctuationSeries& fluct);

struct ThresholdScan {
  double threshold = 0.0;               // the largest qualifying p
  std::vector<std::size_t> maxima;      // positions (index space), ascending
  std::vector<std::pair<double, int>> traversed;  // every (p, count) visited
};

// Sweeps p over the distinct nonnegative values of F inside J, descending,
// and returns the largest p whose above-threshold local-maxima count equals
// target_count. Contiguous above-threshold positions form hills; a position
// counts when it exceeds its in-hill neighbors, plateaus count once at their
// leftmost point, and an isolated spike is one maximum. Throws
// NotAchievableError (with the achievable counts) when no p qualifies.
ThresholdScan threshold_scan(const FluctuationSeries& fluct, const ActivityInterval& interval,
                             int target_count);

struct SpacingReport {
  std::vector<long> distances;  // successive differences, samples
  long dispersion = 0;          // max(distances) - min(distances)
  double candidate_period = 0.0;
  int exact_matches = 0;    // distances equal to the candidate period
  int within_one = 0;       // distances within +/- 1 sample of it
};

// Needs at least 2 positions (ascending).
SpacingReport spacing_report(const std::vector<std::size_t>& maxima, double candidate_period);

// find_max_activity_interval -> threshold_scan -> spacing_report, with
// positions translated to series labels.
struct MaximaReport {
  ActivityInterval interval;
  long interval_start_label = 0;
  long interval_end_label = 0;
  double threshold = 0.0;
  std::vector<long> maxima_labels;
  SpacingReport spacing;
};

MaximaReport analyze_maxima(const FluctuationSeries& fluct, int target_count,
                            double candidate_period);

}  // namespace aliasscope
