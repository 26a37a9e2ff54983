#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "aliasscope/autocorr.hpp"
#include "aliasscope/de_method.hpp"
#include "aliasscope/errors.hpp"
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

bool set_has(const std::map<int, std::vector<int>>& sets, int index) {
  return sets.find(index) != sets.end();
}

// every lag appears in at most one set
int membership_count(const LagPartition& p, int tau) {
  int count = 0;
  for (const auto* sets : {&p.a_sets, &p.b_sets, &p.c_sets})
    for (const auto& [idx, lags] : *sets)
      count += std::count(lags.begin(), lags.end(), tau);
  return count;
}

}  // namespace

TEST_CASE("partition of an all-positive acf at k=1, M=10") {
  const auto acf = make_acf(std::vector<double>(11, 0.5), 100);
  const auto part = partition_lags(acf, 1);
  REQUIRE(set_has(part.c_sets, 0));
  CHECK(part.c_sets.at(0) == std::vector<int>{1, 2, 3, 4});
  REQUIRE(set_has(part.a_sets, 1));
  CHECK(part.a_sets.at(1) == std::vector<int>{6, 7, 8, 9});  // cos < 0, c > 0
  CHECK_FALSE(set_has(part.c_sets, 1));
  CHECK_FALSE(set_has(part.b_sets, 1));
  CHECK(membership_count(part, 5) == 0);   // cos(pi/2) boundary
  CHECK(membership_count(part, 10) == 0);  // tau = M is the second term
}

TEST_CASE("interval parity forbids C sets on odd intervals") {
  // cos(pi k tau / M) < 0 throughout every odd interval, so C_1 cannot
  // exist no matter the series, forced purely by the cosine sign pattern
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto x = oracles::gaussian_noise(seed, 3000);
    const auto acf = autocorrelation(std::span<const double>(x), 1000);
    const auto part = partition_lags(acf, 13);
    for (const auto& [l, lags] : part.c_sets) CHECK(l % 2 == 0);
    for (const auto& [j, lags] : part.b_sets) CHECK(j % 2 == 1);
  }
}

TEST_CASE("negative autocorrelation empties the matching C sets") {
  // a 450-period cosine is negative over [115,192] and [576,654]:
  // C_2 and C_8 vanish for k=13, M=1000 while C_6 straddles [423,500]
  const auto x = oracles::cosine(3653, 450.0);
  const auto acf = autocorrelation(std::span<const double>(x), 1000);
  const auto part = partition_lags(acf, 13);
  CHECK_FALSE(set_has(part.c_sets, 1));
  CHECK_FALSE(set_has(part.c_sets, 2));
  CHECK_FALSE(set_has(part.c_sets, 8));
  REQUIRE(set_has(part.c_sets, 6));
  CHECK(part.c_sets.at(6).front() == 424);
  CHECK(part.c_sets.at(6).back() == 499);
  CHECK(part.interval_lo(6) == doctest::Approx(423.0769).epsilon(1e-4));
  CHECK(part.interval_hi(6) == doctest::Approx(500.0));
}

TEST_CASE("boundary lags where the probing cosine vanishes stay unassigned") {
  // M=100, k=25: cos(pi k tau / M) = 0 exactly at tau = 2, 6, 10, ...
  const auto x = oracles::gaussian_noise(77, 500);
  const auto acf = autocorrelation(std::span<const double>(x), 100);
  const auto part = partition_lags(acf, 25);
  for (int tau : {2, 6, 10, 14, 98}) CHECK(membership_count(part, tau) == 0);
  CHECK(membership_count(part, 1) == 1);
  CHECK(membership_count(part, 3) == 1);
}

TEST_CASE("partition reconstructs the dissected term and ds percentages close") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto x = oracles::gaussian_noise(90 + seed, 900);
    const auto acf = autocorrelation(std::span<const double>(x), 300);
    for (int k = 1; k <= 40; ++k) {
      const auto part = partition_lags(acf, k);

      long double dissected = 0.0L;
      for (const auto* sets : {&part.a_sets, &part.b_sets, &part.c_sets})
        for (const auto& [idx, lags] : *sets)
          for (int tau : lags)
            dissected += acf.c[tau] * std::cos(oracles::kPi * k * tau / 300.0);
      long double third = 0.0L;
      for (int tau = 1; tau < 300; ++tau)
        third += acf.c[tau] * std::cos(oracles::kPi * k * tau / 300.0);
      CHECK(static_cast<double>(dissected) ==
            doctest::Approx(static_cast<double>(third)).epsilon(1e-12));

      const auto ds = ds_indices(part, acf);
      CHECK(ds.ds_plus_total + ds.ds_minus_total == doctest::Approx(100.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("ds indices of an everywhere-positive acf") {
  std::vector<double> c(201);
  for (int tau = 0; tau <= 200; ++tau) c[tau] = 0.9 - 0.5 * tau / 200.0;
  const auto acf = make_acf(std::move(c), 2000);
  const auto part = partition_lags(acf, 8);
  const auto ds = ds_indices(part, acf);
  CHECK(ds.ds_minus_total == 0.0);
  CHECK(ds.ds_plus_total == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(part.b_sets.empty());
}

TEST_CASE("fully anti-aligned acf has no positive contributions") {
  const int m = 100, k = 4;
  std::vector<double> c(m + 1);
  c[0] = 1.0;
  for (int tau = 1; tau <= m; ++tau) c[tau] = -std::cos(oracles::kPi * k * tau / m);
  const auto acf = make_acf(std::move(c), 1000);
  const auto part = partition_lags(acf, k);
  CHECK(part.b_sets.empty());
  CHECK(part.c_sets.empty());
  CHECK_THROWS_AS(ds_indices(part, acf), DegenerateSpectrumError);
}

TEST_CASE("condition (7) fails when negative-pair mass dominates") {
  // lobe 1 (probing cosine negative) carries c = -0.8, lobe 2 carries +0.3:
  // ws- ~ 0.8-mass, ws+ ~ 0.3-mass, so ds+ < 50
  const int m = 100, k = 4;
  std::vector<double> c(m + 1, 0.0);
  c[0] = 1.0;
  for (int tau = 13; tau <= 37; ++tau) c[tau] = -0.8;  // interval 1: (12.5, 37.5)
  for (int tau = 38; tau <= 62; ++tau) c[tau] = 0.3;   // interval 2: (37.5, 62.5)
  const auto acf = make_acf(std::move(c), 1000);
  const auto part = partition_lags(acf, k);
  const auto ds = ds_indices(part, acf);
  CHECK(ds.ds_plus_total < 50.0);

  const auto report = evaluate_conditions(ds, part);
  CHECK_FALSE(report.condition7.passed);
  CHECK(report.condition7.margin < 0.0);
  CHECK(report.verdict == DeReport::Verdict::peak_not_treatable_as_true);

  // condition (7) is the same comparison as ws+ > ws-
  double wsp = 0.0, wsm = 0.0;
  for (const auto& [l, w] : ds.ws_plus) wsp += w;
  for (const auto& [j, w] : ds.ws_minus) wsm += w;
  CHECK(report.condition7.passed == (wsp > wsm));
}

TEST_CASE("a noiseless sinusoid at exactly the probed period centers its mass there") {
  // M=100, k=4: one interior even lobe, period [2M/k] = 50. Condition (8)
  // holds cleanly. Condition (7) does not: with the probing cosine exactly
  // aligned, the positive-pair lobes sit at tau = 0 and tau = M where the
  // lag range truncates them, so ds+ lands just below 50 (margin ~ -2 for
  // k = 4) for every N and phase.
  const auto x = oracles::cosine(2000, 50.0);
  const auto report = diagnose_peak(std::span<const double>(x), 100, 4);
  CHECK(report.period == 50);
  CHECK(report.condition8.m == 2);
  CHECK(report.condition8.contains_period);
  CHECK(report.condition8.passed);
  CHECK(report.condition7.margin == doctest::Approx(-2.04).epsilon(0.25));
  CHECK(report.verdict == DeReport::Verdict::peak_not_treatable_as_true);
}

TEST_CASE("exclusions move the argmax and can exhaust the candidates") {
  // heavy short-lag mass puts the argmax at C_0 until it is excluded
  const int m = 100, k = 4;
  std::vector<double> c(m + 1, 0.0);
  c[0] = 1.0;
  for (int tau = 1; tau <= 12; ++tau) c[tau] = 0.9;    // C_0, interval (0, 12.5)
  for (int tau = 38; tau <= 62; ++tau) c[tau] = 0.4;   // C_2
  const auto acf = make_acf(std::move(c), 1000);
  const auto part = partition_lags(acf, k);
  const auto ds = ds_indices(part, acf);

  const auto unex = evaluate_conditions(ds, part);
  CHECK(unex.condition8.m == 0);
  CHECK_FALSE(unex.condition8.contains_period);  // 50 not in C_0

  const auto ex = evaluate_conditions(ds, part, {0});
  CHECK(ex.condition8.m == 2);
  CHECK(ex.condition8.contains_period);
  CHECK(ex.excluded_sets == std::vector<int>{0});

  CHECK_THROWS_AS(evaluate_conditions(ds, part, {0, 2}), NoCandidateSetsError);
}

TEST_CASE("argmax ties resolve to the smallest index and are flagged") {
  LagPartition part;
  part.k = 4;
  part.max_lag = 100;
  part.c_sets[0] = {1, 2, 3};
  part.c_sets[2] = {45, 50, 55};
  part.c_sets[4] = {90, 95};
  DsIndices ds;
  ds.ws = 10.0;
  ds.ws_plus = {{0, 1.0}, {2, 4.5}, {4, 4.5}};
  ds.ds_plus = {{0, 10.0}, {2, 45.0}, {4, 45.0}};  // exact two-way tie
  ds.ds_plus_total = 100.0;

  const auto report = evaluate_conditions(ds, part, {0});
  CHECK(report.condition8.tied);
  CHECK(report.condition8.m == 2);
  CHECK(report.condition8.contains_period);  // [2M/k] = 50 is a member of C_2
}

TEST_CASE("verdicts are scale invariant") {
  auto x = oracles::add(oracles::cosine(3653, 450.0), oracles::ar1_noise(17, 3653, 0.5, 0.3));
  std::vector<double> doubled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) doubled[i] = 2.0 * x[i];
  const auto a = diagnose_peak(std::span<const double>(x), 1000, 13);
  const auto b = diagnose_peak(std::span<const double>(doubled), 1000, 13);
  CHECK(a.verdict == b.verdict);
  CHECK(a.condition8.m == b.condition8.m);
  CHECK(a.condition7.margin == doctest::Approx(b.condition7.margin).epsilon(1e-12));
  for (const auto& [l, lags] : a.partition.c_sets)
    CHECK(b.partition.c_sets.at(l) == lags);
}

TEST_CASE("echo scenario: the ~150-day bin is rejected, the 400-500-day bin holds") {
  auto x = oracles::add(oracles::cosine(3653, 450.0), oracles::ar1_noise(3, 3653, 0.5, 0.3));

  const auto alias = diagnose_peak(std::span<const double>(x), 1000, 13);
  CHECK(alias.period == 153);
  CHECK(alias.condition8.m == 6);
  CHECK(alias.condition8.interval_hi == doctest::Approx(500.0));
  CHECK_FALSE(alias.condition8.contains_period);  // 153 not in [423, 500]
  CHECK(alias.verdict == DeReport::Verdict::peak_not_treatable_as_true);

  const auto genuine = diagnose_peak(std::span<const double>(x), 1000, 4);
  CHECK(genuine.period == 500);
  CHECK(genuine.condition8.m == 2);
  CHECK(genuine.condition8.contains_period);
  CHECK(genuine.verdict == DeReport::Verdict::peak_supported);
}

// A stationary pure cosine plus white noise carries no lag decay under the
// 1/(N-tau) estimator, so the six interior even lobes at k=13 tie in ds+ up
// to sampling noise and the argmax wanders; condition (8) then holds only
// by luck. Kept faithful and visible rather than tuned to pass.
TEST_CASE("pure 154-day cosine plus noise at k=13"
          * doctest::may_fail()) {
  auto x = oracles::add(oracles::cosine(3653, 154.0),
                        oracles::gaussian_noise(5, 3653, 0.3));
  const auto report = diagnose_peak(std::span<const double>(x), 1000, 13);
  CHECK(report.verdict == DeReport::Verdict::peak_supported);
}

TEST_CASE("harmonic bins of a latent period are never supported") {
  for (double period : {100.0, 154.0, 200.0}) {
    const int k0 = static_cast<int>(std::lround(2000.0 / period));
    const std::size_t n = std::max<std::size_t>(20 * static_cast<std::size_t>(period), 3653);
    const auto x = oracles::cosine(n, period);
    for (int mult : {2, 3}) {
      const auto report = diagnose_peak(std::span<const double>(x), 1000, k0 * mult);
      CHECK(report.verdict == DeReport::Verdict::peak_not_treatable_as_true);
    }
  }
}

TEST_CASE("fundamental bins of a latent period are supported"
          * doctest::may_fail()) {
  // same knife-edge as the 154-day case above: equal-mass interior lobes
  for (double period : {100.0, 154.0, 200.0}) {
    const int k0 = static_cast<int>(std::lround(2000.0 / period));
    const std::size_t n = std::max<std::size_t>(20 * static_cast<std::size_t>(period), 3653);
    const auto x = oracles::cosine(n, period);
    const auto report = diagnose_peak(std::span<const double>(x), 1000, k0);
    CHECK(report.verdict == DeReport::Verdict::peak_supported);
  }
}

TEST_CASE("report bookkeeping") {
  const auto x = oracles::gaussian_noise(33, 600);
  const auto report = diagnose_peak(std::span<const double>(x), 150, 10, {0});
  CHECK(report.k == 10);
  CHECK(report.max_lag == 150);
  CHECK(report.period == 30);
  CHECK(report.ds.ds_plus_at(999) == 0.0);  // empty sets read as zero
  CHECK((report.verdict == DeReport::Verdict::peak_supported) ==
        (report.condition7.passed && report.condition8.passed));
  CHECK_THROWS_AS(partition_lags(autocorrelation(std::span<const double>(x), 150), 151),
                  std::invalid_argument);
}
