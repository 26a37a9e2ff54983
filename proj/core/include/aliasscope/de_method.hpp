#pragma once

#include <map>
#include <set>
#include <span>
#include <vector>

#include "aliasscope/autocorr.hpp"
#include "aliasscope/timeseries.hpp"

namespace aliasscope {

// Disjoint lag sets dissecting the third term of the raw BT estimate at
// harmonic k. Interval i spans ((2i-1)M/2k, (2i+1)M/2k) (open; boundary
// forms at i=0 and i=k), where the probing cosine keeps one sign. Within
// interval i a lag goes to A_i when c_tau cos(pi k tau / M) < 0, to C_i when
// both factors are positive, to B_i when both are negative. Lags with a zero
// product (cosine zeros on interval boundaries) stay unassigned; they
// contribute nothing to the estimate. Only nonempty sets are stored, so the
// map keys are the index sets I_A, I_B, I_C.
struct LagPartition {
  int k = 0;
  int max_lag = 0;  // M
  std::map<int, std::vector<int>> a_sets;
  std::map<int, std::vector<int>> b_sets;
  std::map<int, std::vector<int>> c_sets;

  // open interval bounds of set index i
  double interval_lo(int i) const;
  double interval_hi(int i) const;
};

// Signed-mass bookkeeping. ws_plus[l] sums c_tau cos(pi k tau / M) over C_l
// (both factors positive), ws_minus[j] over B_j (both negative, so the
// products are positive as well); ws is their grand total, the positive part
// of the third term. ds values are percentages of ws; entries exist for
// nonempty sets only and ds_plus_total + ds_minus_total == 100.
struct DsIndices {
  std::map<int, double> ds_plus;
  std::map<int, double> ds_minus;
  double ds_plus_total = 0.0;
  double ds_minus_total = 0.0;
  std::map<int, double> ws_plus;
  std::map<int, double> ws_minus;
  double ws = 0.0;

  double ds_plus_at(int l) const;  // 0 for empty sets
};

struct DeReport {
  enum class Verdict { peak_supported, peak_not_treatable_as_true };

  int k = 0;
  int max_lag = 0;
  int period = 0;  // [2M/k], integer floor

  struct Condition7 {
    double ds_plus_total = 0.0;
    double margin = 0.0;  // 2 ds+ - 100
    bool passed = false;
  } condition7;

  struct Condition8 {
    int m = -1;  // argmax of ds+ over I_C minus the exclusions
    double ds_plus_at_m = 0.0;
    double interval_lo = 0.0;  // real-valued bounds of C_m's search interval
    double interval_hi = 0.0;
    int lag_lo = 0;  // smallest and largest member lag of C_m
    int lag_hi = 0;
    bool contains_period = false;
    bool passed = false;
    bool tied = false;  // argmax tie, resolved to the smallest index
  } condition8;

  std::vector<int> excluded_sets;
  Verdict verdict = Verdict::peak_not_treatable_as_true;

  // intermediate values, kept for audit
  DsIndices ds;
  LagPartition partition;
};

const char* to_string(DeReport::Verdict v);

// Integer lags 1..M-1 assigned by the strict inequalities, boundary lags
// (where the probing cosine is exactly zero) unassigned.
LagPartition partition_lags(const AutocorrFunction& acf, int k);

// Throws DegenerateSpectrumError when there are no positive contributions.
DsIndices ds_indices(const LagPartition& partition, const AutocorrFunction& acf);

// Condition (7): 2 ds+ - 100 > 0. Condition (8): the argmax set C_m of ds+
// over I_C minus `exclude` must contain the period [2M/k]. Verdict is
// peak_supported only when both hold.
DeReport evaluate_conditions(const DsIndices& ds, const LagPartition& partition,
                             const std::set<int>& exclude = {});

// autocorrelation -> partition_lags -> ds_indices -> evaluate_conditions.
DeReport diagnose_peak(std::span<const double> x, int max_lag, int k,
                       const std::set<int>& exclude = {});
DeReport diagnose_peak(const FluctuationSeries& series, int max_lag, int k,
                       const std::set<int>& exclude = {});

}  // namespace aliasscope
