#include "aliasscope/timeseries.hpp"

#include <cmath>
#include <stdexcept>

#include "aliasscope/errors.hpp"

namespace aliasscope {

std::string to_string(Spacing s) {
  switch (s) {
    case Spacing::day: return "day";
    case Spacing::rotation: return "rotation";
    case Spacing::month: return "month";
  }
  return "day";
}

Spacing spacing_from_string(const std::string& s) {
  if (s == "day") return Spacing::day;
  if (s == "rotation") return Spacing::rotation;
  if (s == "month") return Spacing::month;
  throw std::invalid_argument("unknown spacing: " + s);
}

void validate(const TimeSeries& series) {
  if (series.values.empty()) throw std::invalid_argument("series is empty");
  auto finite = [](const std::vector<double>& v) {
    for (double x : v)
      if (!std::isfinite(x)) return false;
    return true;
  };
  if (!finite(series.values) || !finite(series.pad_before) || !finite(series.pad_after))
    throw std::invalid_argument("series contains non-finite values");
}

int default_detrend_window(Spacing s) {
  return s == Spacing::day ? 365 : 13;
}

namespace {

// values with pads spliced on, plus the offset of values[0] inside it
std::vector<double> padded(const TimeSeries& s) {
  std::vector<double> out;
  out.reserve(s.pad_before.size() + s.values.size() + s.pad_after.size());
  out.insert(out.end(), s.pad_before.begin(), s.pad_before.end());
  out.insert(out.end(), s.values.begin(), s.values.end());
  out.insert(out.end(), s.pad_after.begin(), s.pad_after.end());
  return out;
}

}  // namespace

TimeSeries running_mean(const TimeSeries& series, int window, EdgePolicy policy) {
  if (window <= 0 || window % 2 == 0)
    throw std::invalid_argument("running_mean window must be odd and positive");
  const int half = (window - 1) / 2;
  const std::size_t n = series.values.size();

  if (policy == EdgePolicy::require_pads) {
    if (static_cast<int>(series.pad_before.size()) < half ||
        static_cast<int>(series.pad_after.size()) < half)
      throw InsufficientPaddingError(
          "running_mean: window " + std::to_string(window) + " needs " +
          std::to_string(half) + " pad samples on each side");
  }

  const std::vector<double> full = padded(series);
  if (policy == EdgePolicy::truncate && full.size() < static_cast<std::size_t>(window))
    throw std::invalid_argument("running_mean: series shorter than window");
  const std::size_t offset = series.pad_before.size();

  TimeSeries out;
  out.spacing = series.spacing;
  if (policy == EdgePolicy::require_pads) {
    out.start_label = series.start_label;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = offset + i;
      double acc = 0.0;
      for (std::size_t j = c - half; j <= c + half; ++j) acc += full[j];
      out.values[i] = acc / window;
    }
  } else {
    out.start_label = series.start_label + half - static_cast<long>(offset);
    out.values.resize(full.size() - window + 1);
    for (std::size_t i = 0; i + window <= full.size(); ++i) {
      double acc = 0.0;
      for (std::size_t j = i; j < i + window; ++j) acc += full[j];
      out.values[i] = acc / window;
    }
  }
  return out;
}

FluctuationSeries detrend(const TimeSeries& series, int window, EdgePolicy policy) {
  const TimeSeries mean = running_mean(series, window, policy);

  FluctuationSeries out;
  out.spacing = series.spacing;
  out.source_window = window;
  out.start_label = mean.start_label;
  out.values.resize(mean.values.size());

  // under truncation the mean series may start inside the pads; align on labels
  const std::vector<double> full = padded(series);
  const long full_start = series.start_label - static_cast<long>(series.pad_before.size());
  for (std::size_t i = 0; i < mean.values.size(); ++i) {
    const long label = mean.start_label + static_cast<long>(i);
    out.values[i] = full[static_cast<std::size_t>(label - full_start)] - mean.values[i];
  }
  return out;
}

TimeSeries aggregate_to_rotation(const TimeSeries& daily, double rotation_length_days) {
  if (daily.spacing != Spacing::day)
    throw std::invalid_argument("aggregate_to_rotation expects a daily series");
  if (!(rotation_length_days > 0.0))
    throw std::invalid_argument("rotation length must be positive");

  const std::size_t n = daily.values.size();
  const std::size_t blocks =
      static_cast<std::size_t>(std::floor(static_cast<double>(n) / rotation_length_days));

  TimeSeries out;
  out.spacing = Spacing::rotation;
  out.start_label = 0;
  out.values.reserve(blocks);

  std::size_t i = 0;
  for (std::size_t r = 0; r < blocks; ++r) {
    double acc = 0.0;
    std::size_t count = 0;
    while (i < n && static_cast<std::size_t>(std::floor(i / rotation_length_days)) == r) {
      acc += daily.values[i];
      ++i;
      ++count;
    }
    if (count == 0)
      throw DegeneracyError("aggregate_to_rotation: empty block " + std::to_string(r));
    out.values.push_back(acc / static_cast<double>(count));
  }
  return out;
}

}  // namespace aliasscope
