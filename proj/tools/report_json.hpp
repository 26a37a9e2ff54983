#pragma once

#include <json.hpp>

#include "aliasscope/de_method.hpp"
#include "aliasscope/maxima.hpp"

// JSON shapes for the machine-readable reports. Kept stable: object keys are
// emitted in nlohmann's sorted order, set listings are arrays ordered by
// index, so re-reading and re-serializing a file is byte-identical.

namespace aliasscope {

inline nlohmann::json to_json(const DeReport& r) {
  nlohmann::json j;
  j["k"] = r.k;
  j["M"] = r.max_lag;
  j["period"] = r.period;
  j["condition7"] = {
      {"ds_plus_total", r.condition7.ds_plus_total},
      {"margin", r.condition7.margin},
      {"passed", r.condition7.passed},
  };
  j["condition8"] = {
      {"m", r.condition8.m},
      {"ds_plus_at_m", r.condition8.ds_plus_at_m},
      {"interval", {r.condition8.interval_lo, r.condition8.interval_hi}},
      {"lag_range", {r.condition8.lag_lo, r.condition8.lag_hi}},
      {"contains_period", r.condition8.contains_period},
      {"passed", r.condition8.passed},
      {"tied", r.condition8.tied},
  };
  j["excluded_sets"] = r.excluded_sets;
  j["verdict"] = to_string(r.verdict);

  auto ds_array = [](const std::map<int, double>& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [idx, value] : m) arr.push_back({{"index", idx}, {"percent", value}});
    return arr;
  };
  j["ds_plus"] = ds_array(r.ds.ds_plus);
  j["ds_minus"] = ds_array(r.ds.ds_minus);
  j["ds_plus_total"] = r.ds.ds_plus_total;
  j["ds_minus_total"] = r.ds.ds_minus_total;

  auto set_array = [&](const std::map<int, std::vector<int>>& sets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [idx, lags] : sets) {
      arr.push_back({{"index", idx},
                     {"count", lags.size()},
                     {"lag_range", {lags.front(), lags.back()}},
                     {"interval", {r.partition.interval_lo(idx), r.partition.interval_hi(idx)}}});
    }
    return arr;
  };
  j["sets"] = {{"A", set_array(r.partition.a_sets)},
               {"B", set_array(r.partition.b_sets)},
               {"C", set_array(r.partition.c_sets)}};
  return j;
}

inline nlohmann::json to_json(const MaximaReport& r) {
  nlohmann::json j;
  j["interval"] = {
      {"start_label", r.interval_start_label},
      {"end_label", r.interval_end_label},
      {"length", r.interval.length()},
      {"degenerate_width", r.interval.degenerate_width},
  };
  j["threshold"] = r.threshold;
  j["maxima"] = r.maxima_labels;
  j["distances"] = r.spacing.distances;
  j["dispersion"] = r.spacing.dispersion;
  j["candidate_period"] = r.spacing.candidate_period;
  j["exact_matches"] = r.spacing.exact_matches;
  j["within_one"] = r.spacing.within_one;
  return j;
}

}  // namespace aliasscope
