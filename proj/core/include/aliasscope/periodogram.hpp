#pragma once

#include <span>
#include <string>
#include <vector>

#include "aliasscope/autocorr.hpp"

namespace aliasscope {

enum class SpectrumMethod { bt_raw, bt_smoothed, fft };

enum class WindowKind { hamming, none };

// Spectral estimates over a frequency grid (cycles per sample). For the
// Blackman-Tukey methods the grid is k/(2M), k = 1..M, and the reported
// per-bin period is [2M/k], integer floor. For the FFT method the grid is
// j/L over the padded length and the period is the real-valued 1/f.
struct Periodogram {
  SpectrumMethod method = SpectrumMethod::fft;
  std::vector<double> power;
  std::vector<double> frequency;   // same length as power
  int lag_cutoff = 0;              // M, Blackman-Tukey only
  std::string window_name;         // FFT only
  std::size_t source_length = 0;   // N, FFT only
  std::size_t padded_length = 0;   // L, FFT only

  std::size_t size() const { return power.size(); }
  std::vector<double> period_samples() const;
};

// Raw Blackman-Tukey estimate at harmonic k:
//
//   S_k = c_0/M + (-1)^k c_M/M + (2/M) sum_{tau=1}^{M-1} c_tau cos(pi k tau / M)
//
// Valid for k = 0..M. k = 0 (infinite period) is excluded from reported
// spectra but participates in the variance-recovery identity. Values may
// be slightly negative for non-positive-definite sample autocorrelations
// and are reported as-is; the DE method dissects the signed contributions.
double bt_raw(const AutocorrFunction& acf, int k);

// Raw spectrum over k = 1..M.
Periodogram bt_raw_spectrum(const AutocorrFunction& acf);

// 3-point hanning smoothing (0.25, 0.5, 0.25); endpoints use (0.5, 0.5)
// toward the single interior neighbor. Needs length >= 3.
std::vector<double> bt_smooth(std::span<const double> raw);

Periodogram bt_smoothed_spectrum(const AutocorrFunction& acf);

// Mean-subtracted, windowed, zero-padded periodogram. pad_to = 0 selects the
// next power of two >= 4N; pad_to = N gives the plain DFT at the exact
// Fourier frequencies (what the white-noise tests require). One-sided bins
// j = 1..L/2; normalization is Parseval-consistent: the power summed over
// reported bins equals the windowed series energy minus the DC term.
Periodogram fft_periodogram(std::span<const double> x, WindowKind window = WindowKind::hamming,
                            std::size_t pad_to = 0);
Periodogram fft_periodogram(const FluctuationSeries& series,
                            WindowKind window = WindowKind::hamming, std::size_t pad_to = 0);

struct MSelection {
  int chosen = 0;
  std::vector<double> scores;  // parallel to the candidate list
  bool warning = false;        // no candidate reached the threshold
};

// Lag-cutoff selection by BT/FFT conformity. For each candidate M the
// BT-smoothed spectrum is compared against the FFT periodogram band-averaged
// onto the BT grid and smoothed with the same 3-point weights (so both sides
// carry the same resolution kernel); the score is the Pearson correlation of
// log power over bins with period < period_cap, with each series floored at
// 1e-2 of its maximum. Returns the smallest candidate whose score exceeds
// the threshold, or the argmax-score candidate with a warning set.
MSelection choose_m(std::span<const double> x, const std::vector<int>& candidates,
                    double period_cap, double threshold = 0.9);
MSelection choose_m(const FluctuationSeries& series, const std::vector<int>& candidates,
                    double period_cap, double threshold = 0.9);

}  // namespace aliasscope
