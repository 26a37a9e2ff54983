#include "aliasscope/autocorr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "aliasscope/errors.hpp"
#include "aliasscope/log.hpp"

namespace aliasscope {

AutocorrFunction autocorrelation(std::span<const double> x, int max_lag, SeMethod se_method) {
  const int n = static_cast<int>(x.size());
  if (max_lag < 1) throw std::invalid_argument("autocorrelation: max lag must be >= 1");
  if (max_lag >= n) throw std::invalid_argument("autocorrelation: max lag must be < N");
  if (max_lag >= n / 3)
    log::warn("autocorrelation: M=" + std::to_string(max_lag) + " exceeds the recommended N/3 (N=" +
              std::to_string(n) + ")");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;

  double var = 0.0;  // (1/N) sum (x - mean)^2
  for (double v : x) var += (v - mean) * (v - mean);
  var /= n;
  if (var <= 0.0) throw DegenerateSeriesError("autocorrelation: series has zero variance");

  AutocorrFunction acf;
  acf.n_samples = n;
  acf.m_above_recommended = max_lag >= n / 3;
  acf.c.resize(max_lag + 1);
  acf.c[0] = 1.0;
  for (int tau = 1; tau <= max_lag; ++tau) {
    double acc = 0.0;
    for (int i = 0; i + tau < n; ++i) acc += (x[i] - mean) * (x[i + tau] - mean);
    acf.c[tau] = acc / (n - tau) / var;
  }
  acf.se = autocorr_standard_errors(acf, se_method);
  return acf;
}

AutocorrFunction autocorrelation(const TimeSeries& series, int max_lag, SeMethod se_method) {
  return autocorrelation(std::span<const double>(series.values), max_lag, se_method);
}

AutocorrFunction autocorrelation(const FluctuationSeries& series, int max_lag, SeMethod se_method) {
  return autocorrelation(std::span<const double>(series.values), max_lag, se_method);
}

std::vector<double> autocorr_standard_errors(const AutocorrFunction& acf, SeMethod method) {
  const int m = acf.max_lag();
  const double n = acf.n_samples;
  std::vector<double> se(m + 1, 0.0);
  if (method == SeMethod::constant) {
    for (int tau = 1; tau <= m; ++tau) se[tau] = 1.0 / std::sqrt(n);
    return se;
  }
  // Bartlett's large-lag approximation
  double sumsq = 0.0;  // sum of c_u^2 for u = 1..tau-1
  for (int tau = 1; tau <= m; ++tau) {
    se[tau] = std::sqrt((1.0 + 2.0 * sumsq) / n);
    sumsq += acf.c[tau] * acf.c[tau];
  }
  return se;
}

bool is_significantly_positive(const AutocorrFunction& acf, int tau) {
  if (tau < 1 || tau > acf.max_lag())
    throw std::invalid_argument("is_significantly_positive: lag out of range");
  return acf.c[tau] > 2.0 * acf.se[tau];
}

}  // namespace aliasscope
