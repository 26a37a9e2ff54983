#pragma once

#include <span>
#include <vector>

#include "aliasscope/timeseries.hpp"

namespace aliasscope {

enum class SeMethod {
  bartlett,  // se_tau = sqrt((1 + 2 sum_{u<tau} c_u^2) / N)
  constant,  // se_tau = 1 / sqrt(N) for every lag
};

// Normalized autocorrelation c_tau for tau = 0..M, with the lag-dependent
// 1/(N-tau) numerator normalization (not the biased 1/N estimator):
//
//   c_tau = ( 1/(N-tau) sum_i (X_i - Xbar)(X_{i+tau} - Xbar) )
//         / ( 1/N       sum_i (X_i - Xbar)^2 )
//
// The mean is subtracted once, over the full series.
struct AutocorrFunction {
  std::vector<double> c;   // index = lag, c[0] == 1
  int n_samples = 0;       // N
  std::vector<double> se;  // index = lag, se[0] == 0
  bool m_above_recommended = false;  // true when M >= N/3

  int max_lag() const { return static_cast<int>(c.size()) - 1; }
  double se_at(int tau) const { return se[static_cast<std::size_t>(tau)]; }
};

// Throws std::invalid_argument for max_lag >= N and DegenerateSeriesError
// for zero variance. M >= N/3 only logs a warning (the recommended bound).
AutocorrFunction autocorrelation(std::span<const double> x, int max_lag,
                                 SeMethod se_method = SeMethod::bartlett);
AutocorrFunction autocorrelation(const TimeSeries& series, int max_lag,
                                 SeMethod se_method = SeMethod::bartlett);
AutocorrFunction autocorrelation(const FluctuationSeries& series, int max_lag,
                                 SeMethod se_method = SeMethod::bartlett);

// Standard errors for lags 1..M (entry 0 is 0, for direct lag indexing).
std::vector<double> autocorr_standard_errors(const AutocorrFunction& acf,
                                             SeMethod method = SeMethod::bartlett);

// c_tau > 2 se_tau, one-sided.
bool is_significantly_positive(const AutocorrFunction& acf, int tau);

}  // namespace aliasscope
