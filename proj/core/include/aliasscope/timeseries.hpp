#pragma once

#include <string>
#include <vector>

namespace aliasscope {

enum class Spacing { day, rotation, month };

std::string to_string(Spacing s);
Spacing spacing_from_string(const std::string& s);

// Synodic Carrington rotation period, days.
inline constexpr double kCarringtonRotationDays = 27.2753;

// Uniformly sampled series. pad_before/pad_after hold extra samples used
// only to compute centered running means near the edges (the role played
// by adjacent-cycle data in hand analyses); they are not part of the
// series proper.
struct TimeSeries {
  std::vector<double> values;
  Spacing spacing = Spacing::day;
  long start_label = 0;  // e.g. Carrington rotation number or day index
  std::vector<double> pad_before;
  std::vector<double> pad_after;

  std::size_t size() const { return values.size(); }
};

// Throws std::invalid_argument if values is empty or contains non-finite
// entries. Operations assume series were validated on construction.
void validate(const TimeSeries& series);

// Series minus its centered running mean.
struct FluctuationSeries {
  std::vector<double> values;
  Spacing spacing = Spacing::day;
  long start_label = 0;
  int source_window = 0;  // window of the subtracted running mean, samples

  std::size_t size() const { return values.size(); }
};

enum class EdgePolicy {
  require_pads,  // pads must cover the half-window; output keeps length N
  truncate,      // no pads needed; output shrinks by window-1
};

// Default detrending window: 13 samples for rotation/month series,
// 365 for daily series.
int default_detrend_window(Spacing s);

// Centered arithmetic mean over an odd window. With EdgePolicy::require_pads
// the pads must each supply at least (window-1)/2 samples and the output has
// the input length; with truncate the output covers only the fully interior
// centers and start_label advances by the half-window.
TimeSeries running_mean(const TimeSeries& series, int window,
                        EdgePolicy policy = EdgePolicy::require_pads);

// series - running_mean(series), same edge rules as running_mean.
FluctuationSeries detrend(const TimeSeries& series, int window,
                          EdgePolicy policy = EdgePolicy::require_pads);

// Daily series to rotation means over fixed-length blocks: day i belongs to
// block floor(i / rotation_length_days); only fully covered blocks are
// emitted. Archival rotation means rarely document their block rule; this
// one is deterministic and order-preserving.
TimeSeries aggregate_to_rotation(const TimeSeries& daily,
                                 double rotation_length_days = kCarringtonRotationDays);

}  // namespace aliasscope
