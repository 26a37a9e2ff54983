#include "aliasscope/de_method.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "aliasscope/errors.hpp"

namespace aliasscope {

double LagPartition::interval_lo(int i) const {
  if (i == 0) return 0.0;
  return (2.0 * i - 1.0) * max_lag / (2.0 * k);
}

double LagPartition::interval_hi(int i) const {
  if (i == k) return max_lag;
  return (2.0 * i + 1.0) * max_lag / (2.0 * k);
}

double DsIndices::ds_plus_at(int l) const {
  const auto it = ds_plus.find(l);
  return it == ds_plus.end() ? 0.0 : it->second;
}

const char* to_string(DeReport::Verdict v) {
  return v == DeReport::Verdict::peak_supported ? "peak_supported" : "peak_not_treatable_as_true";
}

LagPartition partition_lags(const AutocorrFunction& acf, int k) {
  const int m = acf.max_lag();
  if (k < 1 || k > m) throw std::invalid_argument("partition_lags: k out of range 1..M");

  LagPartition part;
  part.k = k;
  part.max_lag = m;

  // tau = M is outside every open interval; its term is the second term of
  // the estimate, not part of the dissected sum.
  for (int tau = 1; tau < m; ++tau) {
    const long twice_k_tau = 2L * k * tau;
    // boundary lags satisfy 2 k tau = (2i +/- 1) M, where the cosine is zero
    if ((twice_k_tau + m) % (2L * m) == 0) continue;
    const int interval = static_cast<int>((twice_k_tau + m) / (2L * m));

    const double c = acf.c[tau];
    const double cosv = std::cos(std::numbers::pi * k * tau / m);
    const double product = c * cosv;
    if (product < 0.0) {
      part.a_sets[interval].push_back(tau);
    } else if (c > 0.0 && cosv > 0.0) {
      part.c_sets[interval].push_back(tau);
    } else if (c < 0.0 && cosv < 0.0) {
      part.b_sets[interval].push_back(tau);
    }
    // product == 0 (c_tau exactly zero): unassigned, contributes nothing
  }
  return part;
}

DsIndices ds_indices(const LagPartition& partition, const AutocorrFunction& acf) {
  if (partition.max_lag != acf.max_lag())
    throw std::invalid_argument("ds_indices: partition and acf disagree on M");
  const int k = partition.k;
  const int m = partition.max_lag;

  DsIndices ds;
  auto mass = [&](const std::vector<int>& lags) {
    double acc = 0.0;
    for (int tau : lags)
      acc += acf.c[tau] * std::cos(std::numbers::pi * k * tau / m);
    return acc;
  };
  for (const auto& [l, lags] : partition.c_sets) ds.ws_plus[l] = mass(lags);
  for (const auto& [j, lags] : partition.b_sets) ds.ws_minus[j] = mass(lags);

  for (const auto& [l, w] : ds.ws_plus) ds.ws += w;
  for (const auto& [j, w] : ds.ws_minus) ds.ws += w;
  if (!(ds.ws > 0.0))
    throw DegenerateSpectrumError("ds_indices: no positive contributions (ws = 0)");

  for (const auto& [l, w] : ds.ws_plus) {
    ds.ds_plus[l] = 100.0 * w / ds.ws;
    ds.ds_plus_total += ds.ds_plus[l];
  }
  for (const auto& [j, w] : ds.ws_minus) {
    ds.ds_minus[j] = 100.0 * w / ds.ws;
    ds.ds_minus_total += ds.ds_minus[j];
  }
  return ds;
}

DeReport evaluate_conditions(const DsIndices& ds, const LagPartition& partition,
                             const std::set<int>& exclude) {
  DeReport report;
  report.k = partition.k;
  report.max_lag = partition.max_lag;
  report.period = (2 * partition.max_lag) / partition.k;
  report.excluded_sets.assign(exclude.begin(), exclude.end());
  report.ds = ds;
  report.partition = partition;

  report.condition7.ds_plus_total = ds.ds_plus_total;
  report.condition7.margin = 2.0 * ds.ds_plus_total - 100.0;
  report.condition7.passed = report.condition7.margin > 0.0;

  int best = -1;
  bool tied = false;
  for (const auto& [l, value] : ds.ds_plus) {
    if (exclude.contains(l)) continue;
    if (best < 0 || value > ds.ds_plus_at(best)) {
      best = l;
      tied = false;
    } else if (value == ds.ds_plus_at(best)) {
      tied = true;  // smallest index already held, maps iterate ascending
    }
  }
  if (best < 0)
    throw NoCandidateSetsError("evaluate_conditions: no candidate C sets after exclusion");

  const std::vector<int>& members = partition.c_sets.at(best);
  report.condition8.m = best;
  report.condition8.ds_plus_at_m = ds.ds_plus_at(best);
  report.condition8.interval_lo = partition.interval_lo(best);
  report.condition8.interval_hi = partition.interval_hi(best);
  report.condition8.lag_lo = members.front();
  report.condition8.lag_hi = members.back();
  report.condition8.tied = tied;
  report.condition8.contains_period =
      std::binary_search(members.begin(), members.end(), report.period);
  report.condition8.passed = report.condition8.contains_period;

  report.verdict = report.condition7.passed && report.condition8.passed
                       ? DeReport::Verdict::peak_supported
                       : DeReport::Verdict::peak_not_treatable_as_true;
  return report;
}

DeReport diagnose_peak(std::span<const double> x, int max_lag, int k,
                       const std::set<int>& exclude) {
  const AutocorrFunction acf = autocorrelation(x, max_lag);
  const LagPartition partition = partition_lags(acf, k);
  const DsIndices ds = ds_indices(partition, acf);
  return evaluate_conditions(ds, partition, exclude);
}

DeReport diagnose_peak(const FluctuationSeries& series, int max_lag, int k,
                       const std::set<int>& exclude) {
  return diagnose_peak(std::span<const double>(series.values), max_lag, k, exclude);
}

}  // namespace aliasscope
