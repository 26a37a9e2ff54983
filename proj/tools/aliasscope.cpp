// Batch front end: CSV in, CSV/JSON out. Exit codes: 0 success, 2 usage
// error, 3 data error, 4 numerical degeneracy.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aliasscope/autocorr.hpp"
#include "aliasscope/csv.hpp"
#include "aliasscope/de_method.hpp"
#include "aliasscope/errors.hpp"
#include "aliasscope/log.hpp"
#include "aliasscope/maxima.hpp"
#include "aliasscope/periodogram.hpp"
#include "aliasscope/significance.hpp"
#include "aliasscope/synth.hpp"
#include "aliasscope/timeseries.hpp"
#include "report_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::string input;
  std::string spacing = "day";
  int window = 0;  // 0 = default for the spacing
  int pad = 0;
  bool no_detrend = false;
  long start_label = 0;
  std::string out_dir = ".";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--input", opt.input, "input CSV (values in the last column)")->required();
  cmd->add_option("--spacing", opt.spacing, "sample spacing: day|rotation|month")
      ->check(CLI::IsMember({"day", "rotation", "month"}));
  cmd->add_option("--window", opt.window,
                  "detrending window, odd samples (default 365 daily, 13 otherwise)");
  cmd->add_option("--pad", opt.pad,
                  "treat the first/last N input samples as running-mean padding");
  cmd->add_flag("--no-detrend", opt.no_detrend, "input is already a fluctuation series");
  cmd->add_option("--start-label", opt.start_label, "label of the first (non-pad) sample");
  cmd->add_option("--out", opt.out_dir, "output directory");
}

aliasscope::FluctuationSeries load_fluctuations(const CommonOptions& opt) {
  const auto spacing = aliasscope::spacing_from_string(opt.spacing);
  const aliasscope::TimeSeries series =
      aliasscope::read_series_csv(opt.input, spacing, opt.start_label, opt.pad);
  if (opt.no_detrend) {
    aliasscope::FluctuationSeries fluct;
    fluct.values = series.values;
    fluct.spacing = series.spacing;
    fluct.start_label = series.start_label;
    return fluct;
  }
  const int window = opt.window > 0 ? opt.window : aliasscope::default_detrend_window(spacing);
  const auto policy = opt.pad > 0 ? aliasscope::EdgePolicy::require_pads
                                  : aliasscope::EdgePolicy::truncate;
  aliasscope::log::info("detrending with window " + std::to_string(window) +
                        (opt.pad > 0 ? " (padded edges)" : " (truncated edges)"));
  return aliasscope::detrend(series, window, policy);
}

fs::path out_path(const CommonOptions& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  return fs::path(opt.out_dir) / name;
}

void write_json_file(const fs::path& path, const json& j) {
  aliasscope::write_file_atomic(path, j.dump(2) + "\n");
}

std::optional<aliasscope::NoiseRegime> regime_from_flag(const std::string& regime) {
  if (regime == "markov") return aliasscope::NoiseRegime::markov_red_noise;
  if (regime == "white") return aliasscope::NoiseRegime::white_noise;
  return std::nullopt;  // auto
}

// --k takes precedence; --period entries are converted via k = round(2M/p)
std::vector<int> resolve_k_list(const std::vector<int>& k_list,
                                const std::vector<double>& period_list, int m) {
  if (!k_list.empty()) return k_list;
  std::vector<int> out;
  for (double p : period_list) {
    if (!(p > 0.0)) throw std::invalid_argument("--period entries must be positive");
    const int k = std::max(1, static_cast<int>(std::lround(2.0 * m / p)));
    aliasscope::log::info("period " + aliasscope::format_double(p) + " -> k " +
                          std::to_string(k) + " ([2M/k] = " + std::to_string(2 * m / k) + ")");
    out.push_back(k);
  }
  return out;
}

int run_acf(const CommonOptions& opt, int m, const std::string& se_method) {
  const auto fluct = load_fluctuations(opt);
  const int max_lag = m > 0 ? m : static_cast<int>(fluct.size()) / 3;
  const auto method =
      se_method == "constant" ? aliasscope::SeMethod::constant : aliasscope::SeMethod::bartlett;
  const auto acf = aliasscope::autocorrelation(fluct, max_lag, method);

  std::vector<std::vector<double>> rows;
  rows.reserve(acf.c.size());
  for (int tau = 0; tau <= acf.max_lag(); ++tau)
    rows.push_back({static_cast<double>(tau), acf.c[tau], 2.0 * acf.se[tau]});
  aliasscope::write_csv(out_path(opt, "acf.csv"), {"tau", "c", "two_se"}, rows);
  std::cout << "wrote acf.csv (M=" << acf.max_lag() << ", N=" << acf.n_samples << ")\n";
  return 0;
}

int run_spectrum(const CommonOptions& opt, std::vector<int> m_list, double period_cap,
                 double confidence, const std::string& regime) {
  const auto fluct = load_fluctuations(opt);
  const int n = static_cast<int>(fluct.size());

  int m = 0;
  if (m_list.empty()) m_list.push_back(n / 3);
  if (m_list.size() > 1) {
    const auto sel = aliasscope::choose_m(fluct, m_list, period_cap);
    for (std::size_t i = 0; i < m_list.size(); ++i)
      std::cout << "conformity M=" << m_list[i] << ": " << sel.scores[i] << "\n";
    m = sel.chosen;
    aliasscope::log::info("chose M=" + std::to_string(m) +
                          (sel.warning ? " (no candidate above threshold)" : ""));
    std::cout << "chosen M=" << m << (sel.warning ? " (warning: low conformity)" : "") << "\n";
  } else {
    m = m_list.front();
  }

  const auto acf = aliasscope::autocorrelation(fluct, m);
  const auto raw = aliasscope::bt_raw_spectrum(acf);
  const auto smoothed = aliasscope::bt_smoothed_spectrum(acf);
  const auto fft = aliasscope::fft_periodogram(fluct);

  auto spectrum_rows = [](const aliasscope::Periodogram& p) {
    std::vector<std::vector<double>> rows;
    const auto periods = p.period_samples();
    for (std::size_t i = 0; i < p.size(); ++i) rows.push_back({periods[i], p.power[i]});
    return rows;
  };
  aliasscope::write_csv(out_path(opt, "fft.csv"), {"period", "power"}, spectrum_rows(fft));
  aliasscope::write_csv(out_path(opt, "bt_raw.csv"), {"period", "power"}, spectrum_rows(raw));
  aliasscope::write_csv(out_path(opt, "bt_smoothed.csv"), {"period", "power"},
                        spectrum_rows(smoothed));

  const auto sig = aliasscope::assess_significance(fluct.values, acf, fft, confidence, 0.05,
                                                   regime_from_flag(regime));
  if (sig.regime == aliasscope::NoiseRegime::markov_red_noise) {
    std::cout << "regime: markov red noise (c1=" << acf.c[1] << ")\n";
    auto rows = spectrum_rows(fft);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(sig.red_noise_level[i]);
    aliasscope::write_csv(out_path(opt, "significance.csv"), {"period", "power", "level"}, rows);
  } else {
    std::cout << "regime: white noise\n";
    std::cout << "fisher: g=" << sig.fisher->g << " p=" << sig.fisher->p_value
              << (sig.fisher->reject ? " reject" : " accept") << "\n";
    std::cout << "ks: D=" << sig.ks->d << " p=" << sig.ks->p_value
              << (sig.ks->reject ? " reject" : " accept") << "\n";
    const auto plain =
        aliasscope::fft_periodogram(fluct, aliasscope::WindowKind::none, fluct.size());
    aliasscope::write_csv(out_path(opt, "significance.csv"), {"period", "power"},
                          spectrum_rows(plain));
  }
  std::cout << "wrote fft.csv bt_raw.csv bt_smoothed.csv significance.csv\n";
  return 0;
}

int run_diagnose(const CommonOptions& opt, int m, const std::vector<int>& k_list,
                 const std::vector<double>& period_list, const std::vector<int>& exclude,
                 double confidence, const std::string& regime) {
  const auto fluct = load_fluctuations(opt);
  if (m <= 0) m = static_cast<int>(fluct.size()) / 3;
  const std::vector<int> ks = resolve_k_list(k_list, period_list, m);
  if (ks.empty()) throw std::invalid_argument("diagnose: need --k or --period");
  const std::set<int> exclude_set(exclude.begin(), exclude.end());

  const auto acf = aliasscope::autocorrelation(fluct, m);
  const auto fft = aliasscope::fft_periodogram(fluct);
  const auto sig = aliasscope::assess_significance(fluct.values, acf, fft, confidence, 0.05,
                                                   regime_from_flag(regime));

  json out;
  out["input"] = opt.input;
  out["M"] = m;
  out["confidence"] = confidence;
  out["regime"] = sig.regime == aliasscope::NoiseRegime::markov_red_noise ? "markov_red_noise"
                                                                          : "white_noise";
  if (sig.fisher)
    out["fisher"] = {{"g", sig.fisher->g}, {"p_value", sig.fisher->p_value},
                     {"reject", sig.fisher->reject}};
  if (sig.ks)
    out["ks"] = {{"D", sig.ks->d}, {"p_value", sig.ks->p_value}, {"reject", sig.ks->reject}};

  json entries = json::array();
  for (int k : ks) {
    json entry;
    entry["k"] = k;
    entry["period"] = 2 * m / k;

    bool significant = false;
    if (sig.regime == aliasscope::NoiseRegime::markov_red_noise) {
      // nearest FFT bin to the BT harmonic's frequency
      const double f = k / (2.0 * m);
      std::size_t bin = 0;
      double best = std::abs(fft.frequency[0] - f);
      for (std::size_t i = 1; i < fft.size(); ++i) {
        const double d = std::abs(fft.frequency[i] - f);
        if (d < best) {
          best = d;
          bin = i;
        }
      }
      significant = fft.power[bin] > sig.red_noise_level[bin];
      entry["power"] = fft.power[bin];
      entry["level"] = sig.red_noise_level[bin];
    } else {
      significant = sig.fisher->reject || sig.ks->reject;
    }
    entry["significant"] = significant;

    if (significant) {
      const auto report = aliasscope::diagnose_peak(fluct, m, k, exclude_set);
      entry["conditions"] = {{"condition7", to_json(report)["condition7"]},
                             {"condition8", to_json(report)["condition8"]}};
      entry["report"] = to_json(report);
      entry["verdict"] = to_string(report.verdict);
      char summary[160];
      std::snprintf(summary, sizeof summary,
                    "k=%d period=%d significant=true margin=%.1f ds+(m=%d)=%.1f%% verdict=%s",
                    k, report.period, report.condition7.margin, report.condition8.m,
                    report.condition8.ds_plus_at_m, to_string(report.verdict));
      std::cout << summary << "\n";
    } else {
      entry["skipped"] = true;
      std::cout << "k=" << k << " significant=false (DE skipped)\n";
    }
    entries.push_back(entry);
  }
  out["entries"] = entries;
  write_json_file(out_path(opt, "diagnose.json"), out);
  std::cout << "wrote diagnose.json\n";
  return 0;
}

int run_maxima(const CommonOptions& opt, int target_count, double candidate_period) {
  const auto fluct = load_fluctuations(opt);
  const auto report = aliasscope::analyze_maxima(fluct, target_count, candidate_period);

  write_json_file(out_path(opt, "maxima.json"), to_json(report));
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < report.spacing.distances.size(); ++i)
    rows.push_back({static_cast<double>(i + 1), static_cast<double>(report.spacing.distances[i])});
  aliasscope::write_csv(out_path(opt, "distances.csv"), {"index", "distance"}, rows);

  std::cout << "interval [" << report.interval_start_label << ", " << report.interval_end_label
            << "] threshold p=" << report.threshold << " maxima=" << report.maxima_labels.size()
            << " dispersion=" << report.spacing.dispersion << "\n";
  std::cout << "wrote maxima.json distances.csv\n";
  return 0;
}

aliasscope::SignalSpec parse_signal_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw aliasscope::DataError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw aliasscope::DataError(path.string() + ": " + e.what());
  }
  aliasscope::SignalSpec spec;
  try {
    spec.length = j.at("length").get<std::size_t>();
    spec.seed = j.value("seed", 0ULL);
    spec.spacing = aliasscope::spacing_from_string(j.value("spacing", "day"));
    for (const auto& s : j.value("sinusoids", json::array())) {
      aliasscope::SinusoidSpec sin;
      sin.period = s.at("period").get<double>();
      sin.amplitude = s.value("amplitude", 1.0);
      sin.phase = s.value("phase", 0.0);
      spec.sinusoids.push_back(sin);
    }
    if (j.contains("ar1")) {
      spec.ar1.r = j["ar1"].value("r", 0.0);
      spec.ar1.amplitude = j["ar1"].value("amplitude", 0.0);
    }
    if (j.contains("trend")) {
      spec.trend.offset = j["trend"].value("offset", 0.0);
      spec.trend.linear = j["trend"].value("linear", 0.0);
      spec.trend.quadratic = j["trend"].value("quadratic", 0.0);
    }
  } catch (const json::exception& e) {
    throw aliasscope::DataError(path.string() + ": malformed signal spec: " + e.what());
  }
  return spec;
}

int run_synth(const std::string& spec_file, const std::string& out_dir,
              std::optional<std::uint64_t> seed) {
  aliasscope::SignalSpec spec = parse_signal_spec(spec_file);
  if (seed) spec.seed = *seed;
  const auto series = aliasscope::synthesize(spec);

  std::string content;
  content.reserve(series.size() * 20);
  for (double v : series.values) {
    content += aliasscope::format_double(v);
    content += "\n";
  }
  fs::create_directories(out_dir);
  const fs::path path = fs::path(out_dir) / "synth.csv";
  aliasscope::write_file_atomic(path, content);
  std::cout << "wrote " << path.string() << " (" << series.size() << " samples)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral alias diagnosis for uniformly sampled time series"};
  app.require_subcommand(1);

  CommonOptions acf_opt, spec_opt, diag_opt, max_opt;
  int acf_m = 0;
  std::string acf_se = "bartlett";
  auto* cmd_acf = app.add_subcommand("acf", "autocorrelation function with error band");
  add_common(cmd_acf, acf_opt);
  cmd_acf->add_option("--M", acf_m, "maximum lag (default N/3)");
  cmd_acf->add_option("--se", acf_se, "error band: bartlett|constant")
      ->check(CLI::IsMember({"bartlett", "constant"}));

  std::vector<int> spec_m;
  double spec_cap = 500.0, spec_conf = 0.95;
  std::string spec_regime = "auto", diag_regime = "auto";
  auto* cmd_spectrum = app.add_subcommand("spectrum", "BT and FFT periodograms + significance");
  add_common(cmd_spectrum, spec_opt);
  cmd_spectrum->add_option("--M", spec_m, "lag cutoff; a list runs conformity selection")
      ->delimiter(',');
  cmd_spectrum->add_option("--period-cap", spec_cap, "conformity scored on periods below this");
  cmd_spectrum->add_option("--confidence", spec_conf, "red-noise confidence level");
  cmd_spectrum->add_option("--regime", spec_regime, "auto|markov|white")
      ->check(CLI::IsMember({"auto", "markov", "white"}));

  int diag_m = 0;
  std::vector<int> diag_k, diag_exclude;
  std::vector<double> diag_periods;
  double diag_conf = 0.95;
  auto* cmd_diagnose =
      app.add_subcommand("diagnose", "echo-effect alias verdicts for candidate peaks");
  add_common(cmd_diagnose, diag_opt);
  cmd_diagnose->add_option("--M", diag_m, "maximum lag (default N/3)");
  cmd_diagnose->add_option("--k", diag_k, "harmonic indices")->delimiter(',');
  cmd_diagnose->add_option("--period", diag_periods, "candidate periods, samples (k = round(2M/p))")
      ->delimiter(',');
  cmd_diagnose->add_option("--exclude-c", diag_exclude, "C-set indices excluded from the argmax")
      ->delimiter(',');
  cmd_diagnose->add_option("--confidence", diag_conf, "red-noise confidence level");
  cmd_diagnose->add_option("--regime", diag_regime, "auto|markov|white")
      ->check(CLI::IsMember({"auto", "markov", "white"}));

  int max_target = 10;
  double max_period = 6.0;
  auto* cmd_maxima = app.add_subcommand("maxima", "threshold scan of the max-activity interval");
  add_common(cmd_maxima, max_opt);
  cmd_maxima->add_option("--target-count", max_target, "local-maxima count to scan for");
  cmd_maxima->add_option("--period", max_period, "candidate period for the spacing report");

  std::string synth_spec, synth_out = ".";
  std::optional<std::uint64_t> synth_seed;
  auto* cmd_synth = app.add_subcommand("synth", "generate a test signal from a JSON spec");
  cmd_synth->add_option("--spec", synth_spec, "signal spec JSON file")->required();
  cmd_synth->add_option("--out", synth_out, "output directory");
  cmd_synth->add_option("--seed", synth_seed, "override the seed in the signal file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_acf->parsed()) return run_acf(acf_opt, acf_m, acf_se);
    if (cmd_spectrum->parsed())
      return run_spectrum(spec_opt, spec_m, spec_cap, spec_conf, spec_regime);
    if (cmd_diagnose->parsed())
      return run_diagnose(diag_opt, diag_m, diag_k, diag_periods, diag_exclude, diag_conf,
                          diag_regime);
    if (cmd_maxima->parsed()) return run_maxima(max_opt, max_target, max_period);
    if (cmd_synth->parsed()) return run_synth(synth_spec, synth_out, synth_seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const aliasscope::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const aliasscope::DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
