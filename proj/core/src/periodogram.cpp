#include "aliasscope/periodogram.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aliasscope/errors.hpp"
#include "aliasscope/log.hpp"

namespace aliasscope {

std::vector<double> Periodogram::period_samples() const {
  std::vector<double> out(frequency.size());
  if (method == SpectrumMethod::fft) {
    for (std::size_t i = 0; i < frequency.size(); ++i) out[i] = 1.0 / frequency[i];
  } else {
    // bin k has frequency k/(2M); its period is quoted as the floor [2M/k]
    for (std::size_t i = 0; i < frequency.size(); ++i) {
      const int k = static_cast<int>(i) + 1;
      out[i] = std::floor(2.0 * lag_cutoff / k);
    }
  }
  return out;
}

double bt_raw(const AutocorrFunction& acf, int k) {
  const int m = acf.max_lag();
  if (k < 0 || k > m) throw std::invalid_argument("bt_raw: k out of range 0..M");
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  double acc = 0.0;
  for (int tau = 1; tau < m; ++tau)
    acc += acf.c[tau] * std::cos(std::numbers::pi * k * tau / m);
  return acf.c[0] / m + sign * acf.c[m] / m + 2.0 * acc / m;
}

Periodogram bt_raw_spectrum(const AutocorrFunction& acf) {
  const int m = acf.max_lag();
  Periodogram out;
  out.method = SpectrumMethod::bt_raw;
  out.lag_cutoff = m;
  out.power.resize(m);
  out.frequency.resize(m);
  for (int k = 1; k <= m; ++k) {
    out.power[k - 1] = bt_raw(acf, k);
    out.frequency[k - 1] = k / (2.0 * m);
  }
  return out;
}

std::vector<double> bt_smooth(std::span<const double> raw) {
  if (raw.size() < 3) throw std::invalid_argument("bt_smooth: need at least 3 values");
  std::vector<double> out(raw.size());
  const std::size_t last = raw.size() - 1;
  out[0] = 0.5 * raw[0] + 0.5 * raw[1];
  for (std::size_t i = 1; i < last; ++i)
    out[i] = 0.25 * raw[i - 1] + 0.5 * raw[i] + 0.25 * raw[i + 1];
  out[last] = 0.5 * raw[last] + 0.5 * raw[last - 1];
  return out;
}

Periodogram bt_smoothed_spectrum(const AutocorrFunction& acf) {
  Periodogram out = bt_raw_spectrum(acf);
  out.method = SpectrumMethod::bt_smoothed;
  out.power = bt_smooth(out.power);
  return out;
}

namespace {

std::size_t next_pow2_at_least(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// FFTW plan creation is not thread-safe; execution of a private plan is.
std::mutex& fftw_plan_mutex() {
  static std::mutex mu;
  return mu;
}

std::vector<std::complex<double>> real_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  std::vector<double> in(x);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

}  // namespace

Periodogram fft_periodogram(std::span<const double> x, WindowKind window, std::size_t pad_to) {
  const std::size_t n = x.size();
  if (n < 8) throw std::invalid_argument("fft_periodogram: need at least 8 samples");
  std::size_t length = pad_to == 0 ? next_pow2_at_least(4 * n) : pad_to;
  if (length < n) throw std::invalid_argument("fft_periodogram: pad_to smaller than N");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> buf(length, 0.0);
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i] - mean;
  if (window == WindowKind::hamming) {
    for (std::size_t i = 0; i < n; ++i)
      buf[i] *= 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
  }

  const auto spectrum = real_dft(buf);

  // one-sided power with sum over bins equal to the windowed energy
  // (Parseval), DC excluded
  Periodogram out;
  out.method = SpectrumMethod::fft;
  out.window_name = window == WindowKind::hamming ? "hamming" : "none";
  out.source_length = n;
  out.padded_length = length;
  const std::size_t half = length / 2;
  out.power.resize(half);
  out.frequency.resize(half);
  for (std::size_t j = 1; j <= half; ++j) {
    double p = std::norm(spectrum[j]) / static_cast<double>(length);
    if (j < half || length % 2 != 0) p *= 2.0;  // conjugate bin folded in
    out.power[j - 1] = p;
    out.frequency[j - 1] = static_cast<double>(j) / static_cast<double>(length);
  }
  return out;
}

Periodogram fft_periodogram(const FluctuationSeries& series, WindowKind window,
                            std::size_t pad_to) {
  return fft_periodogram(std::span<const double>(series.values), window, pad_to);
}

namespace {

// FFT power band-averaged onto the BT grid (bin k covers (k +/- 0.5)/(2M))
// and smoothed with the same 3-point weights, so both spectra carry a
// comparable resolution kernel.
std::vector<double> band_average_onto_bt(const Periodogram& fft, int m) {
  const std::size_t nf = fft.size();
  const double df = fft.frequency[0];  // grid spacing 1/L
  std::vector<double> out(m, 0.0);
  for (int k = 1; k <= m; ++k) {
    const double lo = (k - 0.5) / (2.0 * m);
    const double hi = (k + 0.5) / (2.0 * m);
    std::size_t jlo = static_cast<std::size_t>(std::max(1.0, std::ceil(lo / df)));
    std::size_t jhi = static_cast<std::size_t>(std::floor(hi / df));
    jhi = std::min(jhi, nf);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t j = jlo; j <= jhi; ++j) {
      acc += fft.power[j - 1];
      ++count;
    }
    out[k - 1] = count > 0 ? acc / static_cast<double>(count)
                           : fft.power[std::min<std::size_t>(nf, jlo) - 1];
  }
  return bt_smooth(out);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

constexpr double kConformityLogFloor = 1e-2;  // relative to each series' max

std::vector<double> floored_log(const std::vector<double>& v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  const double floor_value = kConformityLogFloor * peak;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log(std::max(v[i], floor_value));
  return out;
}

}  // namespace

MSelection choose_m(std::span<const double> x, const std::vector<int>& candidates,
                    double period_cap, double threshold) {
  if (candidates.empty()) throw std::invalid_argument("choose_m: empty candidate list");
  const int n = static_cast<int>(x.size());
  for (int m : candidates)
    if (m >= n) throw std::invalid_argument("choose_m: candidate M must be < N");

  const Periodogram fft = fft_periodogram(x);

  MSelection sel;
  sel.scores.reserve(candidates.size());
  for (int m : candidates) {
    const AutocorrFunction acf = autocorrelation(x, m);
    const Periodogram bt = bt_smoothed_spectrum(acf);
    const std::vector<double> fft_on_bt = band_average_onto_bt(fft, m);

    std::vector<double> bt_sel, fft_sel;
    for (int k = 1; k <= m; ++k) {
      if (2.0 * m / k < period_cap) {
        bt_sel.push_back(bt.power[k - 1]);
        fft_sel.push_back(fft_on_bt[k - 1]);
      }
    }
    if (bt_sel.size() < 3) {
      sel.scores.push_back(0.0);
      continue;
    }
    sel.scores.push_back(pearson(floored_log(bt_sel), floored_log(fft_sel)));
  }

  int best_above = -1;
  int best_any = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (sel.scores[i] > threshold &&
        (best_above < 0 || candidates[i] < candidates[static_cast<std::size_t>(best_above)]))
      best_above = static_cast<int>(i);
    if (sel.scores[i] > sel.scores[static_cast<std::size_t>(best_any)])
      best_any = static_cast<int>(i);
  }
  if (best_above >= 0) {
    sel.chosen = candidates[static_cast<std::size_t>(best_above)];
  } else {
    sel.chosen = candidates[static_cast<std::size_t>(best_any)];
    sel.warning = true;
    log::warn("choose_m: no candidate reached conformity " + std::to_string(threshold) +
              "; returning argmax-score M=" + std::to_string(sel.chosen));
  }
  return sel;
}

MSelection choose_m(const FluctuationSeries& series, const std::vector<int>& candidates,
                    double period_cap, double threshold) {
  return choose_m(std::span<const double>(series.values), candidates, period_cap, threshold);
}

}  // namespace aliasscope
