#pragma once

#include <cstdint>
#include <vector>

#include "aliasscope/timeseries.hpp"

namespace aliasscope {

struct SinusoidSpec {
  double period = 0.0;  // samples
  double amplitude = 1.0;
  double phase = 0.0;  // radians
};

// First-order autoregressive noise; amplitude is the innovation standard
// deviation, so r = 0 gives plain white noise of that amplitude.
struct Ar1Spec {
  double r = 0.0;  // in [0, 1)
  double amplitude = 0.0;
};

struct TrendSpec {
  double offset = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
};

struct SignalSpec {
  std::size_t length = 0;
  std::uint64_t seed = 0;
  Spacing spacing = Spacing::day;
  std::vector<SinusoidSpec> sinusoids;
  Ar1Spec ar1;
  TrendSpec trend;
};

// x_t = sum_j a_j cos(2 pi t / P_j + phi_j) + trend(t) + AR(1) noise,
// t = 0..N-1. Deterministic for a fixed seed (the gaussian sampler is
// part of this library, not the standard library's).
TimeSeries synthesize(const SignalSpec& spec);

}  // namespace aliasscope
