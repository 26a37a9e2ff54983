#include "aliasscope/significance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "aliasscope/errors.hpp"

namespace aliasscope {

bool detect_markov_persistence(const AutocorrFunction& acf) {
  return acf.c[1] > 2.0 / std::sqrt(static_cast<double>(acf.n_samples));
}

double chi_squared_quantile(double nu, double p) {
  boost::math::chi_squared_distribution<double> dist(nu);
  return boost::math::quantile(dist, p);
}

std::vector<double> red_noise_level(const AutocorrFunction& acf, const Periodogram& pgram,
                                    double confidence, double dof) {
  const double r = acf.c[1];
  if (!(std::abs(r) < 1.0))
    throw std::invalid_argument("red_noise_level: |c_1| must be < 1");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw std::invalid_argument("red_noise_level: confidence must be in (0, 1)");
  if (dof == 0.0) dof = pgram.method == SpectrumMethod::bt_smoothed ? 2.67 : 2.0;

  std::vector<double> shape(pgram.size());
  double shape_mean = 0.0, power_mean = 0.0;
  for (std::size_t i = 0; i < pgram.size(); ++i) {
    const double theta = 2.0 * std::numbers::pi * pgram.frequency[i];
    shape[i] = (1.0 - r * r) / (1.0 + r * r - 2.0 * r * std::cos(theta));
    shape_mean += shape[i];
    power_mean += pgram.power[i];
  }
  shape_mean /= static_cast<double>(pgram.size());
  power_mean /= static_cast<double>(pgram.size());

  const double factor = chi_squared_quantile(dof, confidence) / dof;
  const double scale = power_mean / shape_mean;
  for (double& s : shape) s *= scale * factor;
  return shape;
}

namespace {

// Ordinates eligible for the white-noise tests: the periodogram must be the
// plain DFT of the series (no padding, no window); the Nyquist bin of an
// even-length series is dropped (it is chi^2_1, not chi^2_2).
std::vector<double> fourier_ordinates(const Periodogram& pgram, const char* who) {
  if (pgram.method != SpectrumMethod::fft || pgram.window_name != "none" ||
      pgram.padded_length != pgram.source_length)
    throw std::invalid_argument(std::string(who) +
                                ": needs the unpadded, unwindowed FFT periodogram");
  const std::size_t q = (pgram.source_length - 1) / 2;
  if (q < 4) throw std::invalid_argument(std::string(who) + ": fewer than 4 Fourier frequencies");
  return {pgram.power.begin(), pgram.power.begin() + static_cast<std::ptrdiff_t>(q)};
}

}  // namespace

double fisher_g_survival(double g, int ordinate_count) {
  const int q = ordinate_count;
  if (g <= 1.0 / q) return 1.0;
  if (g >= 1.0) return 0.0;
  // Alternating exact series; terms can grow before they decay when g is far
  // below the null's typical value, so bail out to 1 where the true survival
  // differs from 1 by < 1e-14 (intermediate terms reach ~exp(q e^{-q g})).
  if (q * std::exp(-q * g) > 32.0) return 1.0;
  double sum = 0.0;
  const int jmax = std::min(q, static_cast<int>(1.0 / g));
  for (int j = 1; j <= jmax; ++j) {
    if (1.0 - j * g <= 0.0) break;
    const double log_term = std::lgamma(q + 1.0) - std::lgamma(j + 1.0) -
                            std::lgamma(q - j + 1.0) + (q - 1.0) * std::log1p(-j * g);
    const double term = std::exp(log_term);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-17 * std::max(1.0, std::abs(sum))) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

FisherResult fisher_test(const Periodogram& pgram, double alpha) {
  const std::vector<double> ordinates = fourier_ordinates(pgram, "fisher_test");
  double total = 0.0, top = 0.0;
  for (double v : ordinates) {
    total += v;
    top = std::max(top, v);
  }
  if (total <= 0.0) throw DegenerateSpectrumError("fisher_test: zero total power");
  FisherResult res;
  res.g = top / total;
  res.p_value = fisher_g_survival(res.g, static_cast<int>(ordinates.size()));
  res.reject = res.p_value < alpha;
  return res;
}

double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_white_noise_test(const Periodogram& pgram, double alpha) {
  const std::vector<double> ordinates = fourier_ordinates(pgram, "ks_white_noise_test");
  double total = 0.0;
  for (double v : ordinates) total += v;
  if (total <= 0.0) throw DegenerateSpectrumError("ks_white_noise_test: zero total power");

  // C_1..C_{q-1} behave like order statistics of q-1 uniforms under the null
  const std::size_t n = ordinates.size() - 1;
  std::vector<double> cum(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += ordinates[i];
    cum[i] = acc / total;
  }
  std::sort(cum.begin(), cum.end());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d = std::max(d, cum[i] - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - cum[i]);
  }
  KsResult res;
  res.d = d;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  res.p_value = kolmogorov_survival((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
  res.reject = res.p_value < alpha;
  return res;
}

SignificanceResult assess_significance(std::span<const double> x, const AutocorrFunction& acf,
                                       const Periodogram& display_spectrum, double confidence,
                                       double alpha, std::optional<NoiseRegime> regime_override) {
  SignificanceResult out;
  out.alpha = alpha;
  out.regime = regime_override.value_or(detect_markov_persistence(acf)
                                            ? NoiseRegime::markov_red_noise
                                            : NoiseRegime::white_noise);
  if (out.regime == NoiseRegime::markov_red_noise) {
    out.red_noise_level = red_noise_level(acf, display_spectrum, confidence);
  } else {
    const Periodogram plain = fft_periodogram(x, WindowKind::none, x.size());
    out.fisher = fisher_test(plain, alpha);
    out.ks = ks_white_noise_test(plain, alpha);
  }
  return out;
}

}  // namespace aliasscope
