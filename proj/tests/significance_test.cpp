#include <doctest.h>

#include <cmath>
#include <vector>

#include "aliasscope/autocorr.hpp"
#include "aliasscope/errors.hpp"
#include "aliasscope/periodogram.hpp"
#include "aliasscope/significance.hpp"
#include "support/oracles.hpp"

using namespace aliasscope;

namespace {

AutocorrFunction make_acf(std::vector<double> c, int n) {
  AutocorrFunction acf;
  acf.c = std::move(c);
  acf.n_samples = n;
  acf.se = autocorr_standard_errors(acf);
  return acf;
}

Periodogram plain_periodogram(const std::vector<double>& x) {
  return fft_periodogram(std::span<const double>(x), WindowKind::none, x.size());
}

}  // namespace

TEST_CASE("Markov persistence detection") {
  SUBCASE("AR(1) with strong memory") {
    const auto x = oracles::ar1_noise(1, 1000, 0.8, 1.0);
    const auto acf = autocorrelation(std::span<const double>(x), 10);
    CHECK(detect_markov_persistence(acf));
  }
  SUBCASE("white noise, across seeds") {
    int detected = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto x = oracles::gaussian_noise(200 + seed, 1000);
      const auto acf = autocorrelation(std::span<const double>(x), 5);
      if (detect_markov_persistence(acf)) ++detected;
    }
    CHECK(detected <= 4);  // ~2.3% one-sided nominal rate
  }
  SUBCASE("zero lag-1 correlation") {
    CHECK_FALSE(detect_markov_persistence(make_acf({1.0, 0.0, 0.1}, 500)));
  }
}

TEST_CASE("chi-square quantiles used by the red-noise level") {
  CHECK(chi_squared_quantile(2.0, 0.95) == doctest::Approx(5.991465).epsilon(1e-5));
  CHECK(chi_squared_quantile(2.0, 0.95) / 2.0 ==
        doctest::Approx(2.995732273553991).epsilon(1e-9));
  const double q267 = chi_squared_quantile(2.67, 0.95);
  CHECK(q267 > chi_squared_quantile(2.0, 0.95));
  CHECK(q267 < chi_squared_quantile(3.0, 0.95));
}

TEST_CASE("red-noise level collapses to the flat white level at r = 0") {
  const auto x = oracles::gaussian_noise(3, 512);
  const auto p = plain_periodogram(x);
  const auto acf = make_acf({1.0, 0.0, 0.0}, 512);
  const auto level = red_noise_level(acf, p, 0.95);
  double mean = 0.0;
  for (double v : p.power) mean += v;
  mean /= p.size();
  for (std::size_t i = 0; i < level.size(); i += 17)
    CHECK(level[i] == doctest::Approx(mean * 2.995732273553991).epsilon(1e-9));
}

TEST_CASE("red-noise level decreases with frequency for positive memory") {
  const auto x = oracles::ar1_noise(4, 2048, 0.9, 1.0);
  const auto acf = autocorrelation(std::span<const double>(x), 20);
  const auto p = plain_periodogram(x);
  const auto level = red_noise_level(acf, p, 0.95);
  CHECK(level.front() > level.back());
  for (std::size_t i = 1; i < level.size(); ++i) CHECK(level[i] <= level[i - 1] + 1e-12);
}

TEST_CASE("red-noise level rejects degenerate lag-1 correlation") {
  const auto x = oracles::gaussian_noise(5, 128);
  const auto p = plain_periodogram(x);
  CHECK_THROWS_AS(red_noise_level(make_acf({1.0, 1.0}, 128), p, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(red_noise_level(make_acf({1.0, 0.5}, 128), p, 1.5), std::invalid_argument);
}

TEST_CASE("smoothed-estimate dof raises the red-noise level less than raw") {
  const auto x = oracles::ar1_noise(6, 1024, 0.5, 1.0);
  const auto acf = autocorrelation(std::span<const double>(x), 128);
  const auto smoothed = bt_smoothed_spectrum(acf);
  const auto raw_level = red_noise_level(acf, smoothed, 0.95, 2.0);
  const auto smooth_level = red_noise_level(acf, smoothed, 0.95);  // auto nu = 2.67
  CHECK(smooth_level[10] < raw_level[10]);
}

TEST_CASE("Fisher test") {
  SUBCASE("sinusoid plus small noise rejects") {
    auto x = oracles::add(oracles::cosine(512, 20.0),
                          oracles::gaussian_noise(7, 512, 0.1));
    const auto res = fisher_test(plain_periodogram(x), 0.05);
    CHECK(res.reject);
    CHECK(res.p_value < 1e-10);
  }
  SUBCASE("all mass in one ordinate is maximally significant") {
    Periodogram p;
    p.method = SpectrumMethod::fft;
    p.window_name = "none";
    p.source_length = 64;
    p.padded_length = 64;
    p.power.assign(32, 0.0);
    p.power[10] = 5.0;
    for (std::size_t j = 1; j <= 32; ++j) p.frequency.push_back(j / 64.0);
    const auto res = fisher_test(p, 0.05);
    CHECK(res.g == doctest::Approx(1.0));
    CHECK(res.p_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.reject);
  }
  SUBCASE("white noise p-values look uniform enough to accept typically") {
    const auto res = fisher_test(plain_periodogram(oracles::gaussian_noise(8, 512)), 0.05);
    CHECK(res.p_value > 0.0);
    CHECK(res.p_value <= 1.0);
  }
  SUBCASE("survival function is monotone in g") {
    double prev = 1.0;
    for (double g = 0.02; g < 0.2; g += 0.01) {
      const double p = fisher_g_survival(g, 255);
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
    CHECK(fisher_g_survival(1.0 / 255, 255) == 1.0);
    CHECK(fisher_g_survival(1.0, 255) == 0.0);
  }
  SUBCASE("requires the plain Fourier periodogram") {
    const auto x = oracles::gaussian_noise(9, 128);
    CHECK_THROWS_AS(fisher_test(fft_periodogram(std::span<const double>(x)), 0.05),
                    std::invalid_argument);
    const auto windowed =
        fft_periodogram(std::span<const double>(x), WindowKind::hamming, 128);
    CHECK_THROWS_AS(fisher_test(windowed, 0.05), std::invalid_argument);
  }
  SUBCASE("needs at least 4 ordinates") {
    const auto x = oracles::gaussian_noise(10, 8);
    CHECK_THROWS_AS(fisher_test(plain_periodogram(x), 0.05), std::invalid_argument);
  }
}

TEST_CASE("Kolmogorov-Smirnov cumulative-periodogram test") {
  SUBCASE("flat periodogram sits on the diagonal") {
    Periodogram p;
    p.method = SpectrumMethod::fft;
    p.window_name = "none";
    p.source_length = 256;
    p.padded_length = 256;
    p.power.assign(128, 1.0);
    for (std::size_t j = 1; j <= 128; ++j) p.frequency.push_back(j / 256.0);
    const auto res = ks_white_noise_test(p, 0.05);
    CHECK(res.d < 0.01);
    CHECK(res.p_value > 0.99);
    CHECK_FALSE(res.reject);
  }
  SUBCASE("strong sinusoid rejects") {
    auto x = oracles::add(oracles::cosine(512, 16.0),
                          oracles::gaussian_noise(11, 512, 0.2));
    const auto res = ks_white_noise_test(plain_periodogram(x), 0.05);
    CHECK(res.reject);
  }
  SUBCASE("kolmogorov survival sanity") {
    CHECK(kolmogorov_survival(0.1) == 1.0);
    CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(2e-2));
    CHECK(kolmogorov_survival(5.0) < 1e-10);
  }
}

TEST_CASE("both white-noise tests are scale invariant") {
  const auto x = oracles::gaussian_noise(12, 256);
  std::vector<double> scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = 2.0 * x[i];
  const auto f1 = fisher_test(plain_periodogram(x), 0.05);
  const auto f2 = fisher_test(plain_periodogram(scaled), 0.05);
  CHECK(f1.g == doctest::Approx(f2.g).epsilon(1e-12));
  CHECK(f1.p_value == doctest::Approx(f2.p_value).epsilon(1e-9));
  const auto k1 = ks_white_noise_test(plain_periodogram(x), 0.05);
  const auto k2 = ks_white_noise_test(plain_periodogram(scaled), 0.05);
  CHECK(k1.d == doctest::Approx(k2.d).epsilon(1e-12));
}

TEST_CASE("a white-noise-like rotation series passes both tests in a typical run") {
  // a single-hemisphere rotation-mean series with no persistence
  const auto x = oracles::gaussian_noise(14, 136);
  const auto acf = autocorrelation(std::span<const double>(x), 30);
  const auto sig = assess_significance(std::span<const double>(x), acf,
                                       fft_periodogram(std::span<const double>(x)), 0.95, 0.05);
  REQUIRE(sig.regime == NoiseRegime::white_noise);
  REQUIRE(sig.fisher.has_value());
  REQUIRE(sig.ks.has_value());
  CHECK_FALSE(sig.fisher->reject);
  CHECK_FALSE(sig.ks->reject);
}

TEST_CASE("regime dispatch fills exactly the chosen regime's fields") {
  const auto red = oracles::ar1_noise(15, 1024, 0.8, 1.0);
  const auto acf = autocorrelation(std::span<const double>(red), 20);
  const auto display = fft_periodogram(std::span<const double>(red));
  const auto sig = assess_significance(std::span<const double>(red), acf, display, 0.95, 0.05);
  CHECK(sig.regime == NoiseRegime::markov_red_noise);
  CHECK(sig.red_noise_level.size() == display.size());
  CHECK_FALSE(sig.fisher.has_value());
  CHECK_FALSE(sig.ks.has_value());

  const auto forced = assess_significance(std::span<const double>(red), acf, display, 0.95, 0.05,
                                          NoiseRegime::white_noise);
  CHECK(forced.regime == NoiseRegime::white_noise);
  CHECK(forced.red_noise_level.empty());
  CHECK(forced.fisher.has_value());
}
