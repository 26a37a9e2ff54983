#pragma once

#include <optional>
#include <vector>

#include "aliasscope/autocorr.hpp"
#include "aliasscope/periodogram.hpp"

namespace aliasscope {

enum class NoiseRegime { markov_red_noise, white_noise };

struct FisherResult {
  double g = 0.0;
  double p_value = 1.0;
  bool reject = false;
};

struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
  bool reject = false;
};

// Exactly the fields of the chosen regime are populated.
struct SignificanceResult {
  NoiseRegime regime = NoiseRegime::white_noise;
  double alpha = 0.05;
  std::vector<double> red_noise_level;  // markov regime, per display-spectrum bin
  std::optional<FisherResult> fisher;   // white regime
  std::optional<KsResult> ks;           // white regime
};

// Lag-1 memory check: c_1 > 2/sqrt(N), one-sided.
bool detect_markov_persistence(const AutocorrFunction& acf);

// Markov (AR(1)) red-noise confidence level per bin. The null continuum
//
//   S0(f) ~ (1 - r^2) / (1 + r^2 - 2 r cos(2 pi f)),  r = c_1
//
// is scaled so its mean matches the spectrum's mean power, then multiplied
// by chi^2_nu(confidence)/nu. dof = 0 picks nu by estimator: 2 for raw/fft
// estimates, 2.67 for 3-point-smoothed BT estimates.
std::vector<double> red_noise_level(const AutocorrFunction& acf, const Periodogram& pgram,
                                    double confidence, double dof = 0.0);

// Fisher's exact test of the largest periodogram ordinate against the white
// noise null. Requires the unpadded, unwindowed FFT periodogram (exact
// Fourier frequencies); the Nyquist ordinate, when present, is excluded.
FisherResult fisher_test(const Periodogram& pgram, double alpha);

// Kolmogorov-Smirnov test of the normalized cumulative periodogram against
// the uniform diagonal; same input requirements as fisher_test.
KsResult ks_white_noise_test(const Periodogram& pgram, double alpha);

// Regime dispatch: markov when persistence is detected (or forced), in which
// case only the red-noise level is filled; otherwise Fisher + KS on the
// unpadded unwindowed periodogram of x.
SignificanceResult assess_significance(std::span<const double> x, const AutocorrFunction& acf,
                                       const Periodogram& display_spectrum, double confidence,
                                       double alpha,
                                       std::optional<NoiseRegime> regime_override = std::nullopt);

// Helpers shared by the tests above, exposed for verification.
double chi_squared_quantile(double nu, double p);
double kolmogorov_survival(double lambda);
double fisher_g_survival(double g, int ordinate_count);

}  // namespace aliasscope
