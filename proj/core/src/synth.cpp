#include "aliasscope/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace aliasscope {

namespace {

// Box-Muller over mt19937_64. Kept here instead of std::normal_distribution
// so that a fixed seed yields the same bytes on every standard library.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() {  // in [0, 1)
    return (engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

TimeSeries synthesize(const SignalSpec& spec) {
  if (spec.length == 0) throw std::invalid_argument("synthesize: length must be positive");
  for (const auto& s : spec.sinusoids)
    if (!(s.period > 0.0))
      throw std::invalid_argument("synthesize: sinusoid period must be positive");
  if (spec.ar1.r < 0.0 || spec.ar1.r >= 1.0)
    throw std::invalid_argument("synthesize: AR(1) coefficient must be in [0, 1)");

  TimeSeries out;
  out.spacing = spec.spacing;
  out.values.assign(spec.length, 0.0);

  for (const auto& s : spec.sinusoids) {
    const double omega = 2.0 * std::numbers::pi / s.period;
    for (std::size_t t = 0; t < spec.length; ++t)
      out.values[t] += s.amplitude * std::cos(omega * t + s.phase);
  }

  if (spec.trend.offset != 0.0 || spec.trend.linear != 0.0 || spec.trend.quadratic != 0.0) {
    for (std::size_t t = 0; t < spec.length; ++t) {
      const double td = static_cast<double>(t);
      out.values[t] += spec.trend.offset + spec.trend.linear * td + spec.trend.quadratic * td * td;
    }
  }

  if (spec.ar1.amplitude != 0.0) {
    GaussianSampler gauss(spec.seed);
    const double r = spec.ar1.r;
    const double sigma = spec.ar1.amplitude;
    // start from the stationary distribution so early samples are not special
    double state = r > 0.0 ? sigma * gauss() / std::sqrt(1.0 - r * r) : sigma * gauss();
    out.values[0] += state;
    for (std::size_t t = 1; t < spec.length; ++t) {
      state = r * state + sigma * gauss();
      out.values[t] += state;
    }
  }

  return out;
}

}  // namespace aliasscope
