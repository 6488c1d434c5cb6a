// swrcast: synthetic data, window sizing, forecasting and model comparison
// on the command line. Talks to the library only through the C API.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "swr/swr.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitNumerical = 4;
constexpr const char* kFormatVersion = "1";

int exit_code(swr_status s) {
  switch (s) {
    case SWR_OK: return kExitOk;
    case SWR_E_INVALID_ARGUMENT:
    case SWR_E_PARSE:
    case SWR_E_IO: return kExitUsage;
    case SWR_E_INSUFFICIENT_DATA: return kExitInsufficient;
    case SWR_E_NUMERICAL:
    case SWR_E_INTERNAL: return kExitNumerical;
  }
  return kExitNumerical;
}

/// Carries a status out of deeply nested command code.
struct Failure {
  swr_status status;
  std::string message;
};

void check(swr_status s, const std::string& context) {
  if (s != SWR_OK) throw Failure{s, context + ": " + swr_last_error()};
}

struct DatasetDeleter {
  void operator()(swr_dataset* d) const { swr_dataset_free(d); }
};
struct TraceDeleter {
  void operator()(swr_trace* t) const { swr_trace_free(t); }
};
struct ReportDeleter {
  void operator()(swr_report* r) const { swr_report_free(r); }
};
using Dataset = std::unique_ptr<swr_dataset, DatasetDeleter>;
using Trace = std::unique_ptr<swr_trace, TraceDeleter>;
using Report = std::unique_ptr<swr_report, ReportDeleter>;

std::string take_string(char* s) {
  std::string out(s);
  swr_string_free(s);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{SWR_E_IO, "cannot write '" + path.string() + "'"};
  out << text;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ------------------------------------------------------------------ options

struct EngineFlags {
  std::string input;
  std::string out_dir = "swr_out";
  std::vector<std::string> zones;
  std::uint64_t seed = 42;
  std::size_t lags = 12;
  std::string train_window = "auto";
  std::size_t h0 = 6;
  std::size_t h_min = 1;
  std::size_t h_max = 24;
  double mape_upper = 20.0;
  double mape_lower = 5.0;
  std::string models = "swr,linear,svr,tree,forest";
  std::string protocol = "train-once";
  std::size_t warmup = 0;
  std::size_t sizing_history = 576;
  std::size_t resize_every = 0;
  double acper_tau = 5.0;
  std::size_t threads = 0;
  swr_engine_config engine{};
};

void add_sizing_flags(CLI::App* cmd, swr_sizing_config& s) {
  cmd->add_option("--oversampling", s.oversampling, "Periodogram oversampling factor")
      ->check(CLI::Range(1.0, 1e6));
  cmd->add_option("--alpha", s.alpha, "False alarm threshold for a significant period")
      ->check(CLI::Range(1e-300, 1.0));
  cmd->add_option("--period-multiplier", s.multiplier, "Training window in dominant periods");
  cmd->add_option("--fallback-window", s.fallback_samples,
                  "Window when no significant period is found");
  cmd->add_option("--min-window", s.min_window, "Lower bound on the training window");
  cmd->add_option("--max-window", s.max_window, "Upper bound on the training window (0: history)");
  cmd->add_option("--history-cap", s.history_cap, "Analyse only the trailing N samples (0: all)");
}

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--input", f.input, "Load CSV (timestamp,zone,load_mw)")->required();
  cmd->add_option("--out-dir", f.out_dir, "Output directory");
  cmd->add_option("--zone", f.zones, "Zone to process (repeatable; default all)");
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--lags", f.lags, "Lag features per row")->check(CLI::PositiveNumber);
  cmd->add_option("--train-window", f.train_window, "Training window: auto or sample count");
  cmd->add_option("--h0", f.h0, "Initial prediction window")->check(CLI::PositiveNumber);
  cmd->add_option("--h-min", f.h_min, "Smallest prediction window")->check(CLI::PositiveNumber);
  cmd->add_option("--h-max", f.h_max, "Largest prediction window")->check(CLI::PositiveNumber);
  cmd->add_option("--mape-upper", f.mape_upper, "Shrink the horizon above this MAPE (%)");
  cmd->add_option("--mape-lower", f.mape_lower, "Grow the horizon below this MAPE (%)");
  cmd->add_option("--warmup", f.warmup, "First forecast index (0: derived)");
  cmd->add_option("--sizing-history", f.sizing_history, "Samples analysed for window sizing");
  cmd->add_option("--resize-every", f.resize_every, "Re-size the window every N batches");
  cmd->add_option("--threads", f.threads, "Zones processed concurrently (0: hardware)");
  add_sizing_flags(cmd, f.engine.sizing);
  cmd->add_option("--svr-c", f.engine.svr_c, "SVR box constraint");
  cmd->add_option("--svr-epsilon", f.engine.svr_epsilon, "SVR tube half-width (scaled units)");
  cmd->add_option("--svr-gamma", f.engine.svr_gamma, "RBF width (0: 1/lags)");
  cmd->add_option("--svr-tol", f.engine.svr_tol, "SMO stopping tolerance");
  cmd->add_option("--svr-max-passes", f.engine.svr_max_passes, "SMO iteration budget");
  cmd->add_option("--tree-max-depth", f.engine.tree_max_depth, "Tree depth limit");
  cmd->add_option("--tree-min-leaf", f.engine.tree_min_leaf, "Minimum rows per leaf");
  cmd->add_option("--forest-trees", f.engine.forest_trees, "Trees per forest");
  cmd->add_option("--forest-mtry", f.engine.forest_mtry, "Features tried per split (0: ceil(k/3))");
}

swr_engine_config resolve_engine(EngineFlags& f) {
  swr_engine_config c = f.engine;
  c.lags = f.lags;
  c.seed = f.seed;
  c.h0 = f.h0;
  c.h_min = f.h_min;
  c.h_max = f.h_max;
  c.mape_upper_pct = f.mape_upper;
  c.mape_lower_pct = f.mape_lower;
  c.warmup = f.warmup;
  c.sizing_history = f.sizing_history;
  c.resize_every = f.resize_every;
  if (f.train_window == "auto") {
    c.train_window = 0;
  } else {
    std::size_t pos = 0;
    unsigned long long w = 0;
    try {
      w = std::stoull(f.train_window, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != f.train_window.size() || w == 0) {
      throw Failure{SWR_E_INVALID_ARGUMENT, "--train-window must be 'auto' or a positive count"};
    }
    c.train_window = static_cast<std::size_t>(w);
  }
  return c;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

swr_model_kind model_kind(const std::string& name) {
  if (name == "linear") return SWR_MODEL_LINEAR;
  if (name == "svr") return SWR_MODEL_SVR;
  if (name == "tree") return SWR_MODEL_TREE;
  if (name == "forest") return SWR_MODEL_FOREST;
  if (name == "persistence") return SWR_MODEL_PERSISTENCE;
  throw Failure{SWR_E_INVALID_ARGUMENT, "unknown model '" + name + "'"};
}

Dataset load_dataset(const std::string& path) {
  swr_dataset* raw = nullptr;
  check(swr_dataset_load_csv(path.c_str(), &raw), "reading " + path);
  return Dataset(raw);
}

std::vector<std::string> select_zones(const swr_dataset* ds, const std::vector<std::string>& wanted) {
  std::vector<std::string> all;
  for (std::size_t i = 0; i < swr_dataset_zone_count(ds); ++i) {
    all.emplace_back(swr_dataset_zone_name(ds, i));
  }
  if (wanted.empty()) return all;
  for (const auto& z : wanted) {
    if (std::find(all.begin(), all.end(), z) == all.end()) {
      throw Failure{SWR_E_INVALID_ARGUMENT, "zone '" + z + "' not found in input"};
    }
  }
  std::vector<std::string> out;
  for (const auto& z : all) {
    if (std::find(wanted.begin(), wanted.end(), z) != wanted.end()) out.push_back(z);
  }
  return out;
}

/// Effective configuration, written next to every output tree.
std::string run_config_text(const std::string& command, const EngineFlags& f,
                            const swr_engine_config& c, const std::vector<std::string>& zones) {
  std::ostringstream o;
  o << "format_version=" << kFormatVersion << '\n'
    << "command=" << command << '\n'
    << "input=" << f.input << '\n';
  for (const auto& z : zones) o << "zone=" << z << '\n';
  o << "seed=" << c.seed << '\n'
    << "lags=" << c.lags << '\n'
    << "train_window=" << f.train_window << '\n'
    << "h0=" << c.h0 << '\n'
    << "h_min=" << c.h_min << '\n'
    << "h_max=" << c.h_max << '\n'
    << "mape_upper=" << fmt(c.mape_upper_pct) << '\n'
    << "mape_lower=" << fmt(c.mape_lower_pct) << '\n'
    << "warmup=" << c.warmup << '\n'
    << "sizing_history=" << c.sizing_history << '\n'
    << "resize_every=" << c.resize_every << '\n'
    << "oversampling=" << fmt(c.sizing.oversampling) << '\n'
    << "alpha=" << fmt(c.sizing.alpha) << '\n'
    << "period_multiplier=" << fmt(c.sizing.multiplier) << '\n'
    << "fallback_window=" << c.sizing.fallback_samples << '\n'
    << "min_window=" << c.sizing.min_window << '\n'
    << "max_window=" << c.sizing.max_window << '\n'
    << "history_cap=" << c.sizing.history_cap << '\n'
    << "svr_c=" << fmt(c.svr_c) << '\n'
    << "svr_epsilon=" << fmt(c.svr_epsilon) << '\n'
    << "svr_gamma=" << fmt(c.svr_gamma) << '\n'
    << "svr_tol=" << fmt(c.svr_tol) << '\n'
    << "svr_max_passes=" << c.svr_max_passes << '\n'
    << "tree_max_depth=" << c.tree_max_depth << '\n'
    << "tree_min_leaf=" << c.tree_min_leaf << '\n'
    << "forest_trees=" << c.forest_trees << '\n'
    << "forest_mtry=" << c.forest_mtry << '\n';
  if (command == "compare") {
    o << "models=" << f.models << '\n'
      << "protocol=" << f.protocol << '\n'
      << "acper_tau=" << fmt(f.acper_tau) << '\n';
  }
  return o.str();
}

/// Runs `job(i)` for every zone index on up to `threads` workers. The first
/// failure (by zone order) is rethrown after all workers finish.
template <typename Job>
void for_each_zone(std::size_t n, std::size_t threads, Job job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  std::vector<std::unique_ptr<Failure>> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (const Failure& f) {
        failures[i] = std::make_unique<Failure>(f);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& f : failures) {
    if (f) throw *f;
  }
}

void write_trace(const fs::path& dir, const std::string& stem, const swr_trace* t) {
  char* text = nullptr;
  check(swr_trace_steps_csv(t, &text), "serializing steps");
  write_text(dir / (stem + "_steps.csv"), take_string(text));
  check(swr_trace_batches_csv(t, &text), "serializing batches");
  write_text(dir / (stem + "_batches.csv"), take_string(text));
}

std::string trace_stem(const swr_trace* t) {
  const std::string model = swr_trace_model(t);
  const std::string protocol = swr_trace_protocol(t);
  return protocol == "adaptive" ? model : model + "_" + protocol;
}

// ------------------------------------------------------------------ commands

struct SynthFlags {
  std::size_t length = 3906;
  std::int64_t step = 300;
  std::vector<double> periods;
  std::vector<double> amps;
  std::vector<double> phases;
  double base = 500.0;
  double noise = 0.0;
  std::uint64_t seed = 42;
  std::vector<std::string> zones;
  long long drift_onset = -1;
  double drift_shift = 0.0;
  double drift_scale = 1.0;
  std::string start = "2017-10-16T00:00:00Z";
  std::string out;
};

std::int64_t parse_start(const std::string& text) {
  std::int64_t t = 0;
  if (swr_parse_timestamp(text.c_str(), &t) != SWR_OK) {
    throw Failure{SWR_E_INVALID_ARGUMENT, "bad --start timestamp: " + std::string(swr_last_error())};
  }
  return t;
}

int cmd_synth(SynthFlags& f) {
  if (f.amps.size() != f.periods.size()) {
    throw Failure{SWR_E_INVALID_ARGUMENT, "--amp must be given once per --period"};
  }
  if (!f.phases.empty() && f.phases.size() != f.periods.size()) {
    throw Failure{SWR_E_INVALID_ARGUMENT, "--phase must be given once per --period or not at all"};
  }
  std::vector<swr_component> comps;
  for (std::size_t i = 0; i < f.periods.size(); ++i) {
    comps.push_back({f.periods[i], f.amps[i], f.phases.empty() ? 0.0 : f.phases[i]});
  }
  swr_synth_config cfg;
  swr_synth_config_default(&cfg);
  cfg.length = f.length;
  cfg.step_s = f.step;
  cfg.start_unix_s = parse_start(f.start);
  cfg.base_level_mw = f.base;
  cfg.components = comps.data();
  cfg.n_components = comps.size();
  cfg.noise_sigma_mw = f.noise;
  if (f.drift_onset >= 0) {
    cfg.has_drift = 1;
    cfg.drift_onset = static_cast<std::size_t>(f.drift_onset);
    cfg.drift_level_shift_mw = f.drift_shift;
    cfg.drift_amplitude_scale = f.drift_scale;
  }
  if (f.zones.empty()) f.zones.push_back("SYNTH");

  swr_dataset* raw = nullptr;
  check(swr_dataset_create(&raw), "creating dataset");
  Dataset ds(raw);
  for (std::size_t i = 0; i < f.zones.size(); ++i) {
    cfg.seed = f.seed + i;  // one noise stream per zone
    check(swr_dataset_add_synthetic(ds.get(), f.zones[i].c_str(), &cfg), "generating zone " + f.zones[i]);
  }
  char* text = nullptr;
  check(swr_dataset_to_csv(ds.get(), &text), "serializing");
  const std::string csv = take_string(text);
  const std::size_t rows = f.length * f.zones.size();
  if (f.out.empty()) {
    std::cout << csv;
    std::cerr << "rows=" << rows << '\n';
  } else {
    write_text(f.out, csv);
    std::cout << "rows=" << rows << '\n';
  }
  return kExitOk;
}

int cmd_window_size(const std::string& input, const std::string& zone, const swr_sizing_config& cfg) {
  Dataset ds = load_dataset(input);
  std::string z = zone;
  if (z.empty()) {
    if (swr_dataset_zone_count(ds.get()) != 1) {
      throw Failure{SWR_E_INVALID_ARGUMENT, "input has several zones; pick one with --zone"};
    }
    z = swr_dataset_zone_name(ds.get(), 0);
  }
  swr_window_sizing out{};
  check(swr_window_size(ds.get(), z.c_str(), &cfg, &out), "sizing zone " + z);
  std::string period;
  if (out.has_period) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f", out.dominant_period_s);
    period = buf;
  }
  std::cout << period << ',' << out.window_samples
            << ',' << (out.significant ? "true" : "false") << ',' << fmt(out.false_alarm_prob)
            << '\n';
  return kExitOk;
}

int cmd_forecast(EngineFlags& f) {
  const swr_engine_config cfg = resolve_engine(f);
  Dataset ds = load_dataset(f.input);
  const auto zones = select_zones(ds.get(), f.zones);
  std::vector<Trace> traces(zones.size());
  for_each_zone(zones.size(), f.threads, [&](std::size_t i) {
    swr_trace* raw = nullptr;
    check(swr_run(ds.get(), zones[i].c_str(), &cfg, &raw), "zone " + zones[i]);
    traces[i].reset(raw);
  });

  const fs::path out(f.out_dir);
  fs::create_directories(out);
  write_text(out / "run_config.txt", run_config_text("forecast", f, cfg, zones));
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const fs::path dir = out / zones[i];
    fs::create_directories(dir);
    write_trace(dir, trace_stem(traces[i].get()), traces[i].get());
    double m = 0.0;
    check(swr_trace_mape(traces[i].get(), &m), "scoring zone " + zones[i]);
    std::cout << "zone=" << zones[i] << " model=" << swr_trace_model(traces[i].get())
              << " steps=" << swr_trace_step_count(traces[i].get()) << " mape_pct=" << fmt(m)
              << '\n';
  }
  return kExitOk;
}

int cmd_compare(EngineFlags& f) {
  const swr_engine_config cfg = resolve_engine(f);
  const auto models = split_list(f.models);
  if (models.empty()) throw Failure{SWR_E_INVALID_ARGUMENT, "--models is empty"};
  for (const auto& m : models) {
    if (m != "swr") model_kind(m);
  }
  swr_protocol protocol = SWR_PROTOCOL_TRAIN_ONCE;
  if (f.protocol == "sliding-fixed") {
    protocol = SWR_PROTOCOL_SLIDING_FIXED;
  } else if (f.protocol != "train-once") {
    throw Failure{SWR_E_INVALID_ARGUMENT, "--protocol must be train-once or sliding-fixed"};
  }
  if (!(f.acper_tau > 0.0)) throw Failure{SWR_E_INVALID_ARGUMENT, "--acper-tau must be positive"};

  Dataset ds = load_dataset(f.input);
  const auto zones = select_zones(ds.get(), f.zones);
  std::vector<std::vector<Trace>> traces(zones.size());
  std::vector<Report> reports(zones.size());
  for_each_zone(zones.size(), f.threads, [&](std::size_t i) {
    const char* zone = zones[i].c_str();
    // The adaptive run always happens: its batch schedule is replayed by
    // the train-once baselines.
    swr_trace* raw = nullptr;
    check(swr_run(ds.get(), zone, &cfg, &raw), "zone " + zones[i]);
    Trace adaptive(raw);
    for (const auto& m : models) {
      if (m == "swr") {
        swr_trace* copy = nullptr;
        check(swr_trace_clone(adaptive.get(), &copy), "zone " + zones[i]);
        traces[i].emplace_back(copy);
        continue;
      }
      check(swr_run_baseline(ds.get(), zone, &cfg, model_kind(m), protocol, adaptive.get(), &raw),
            "zone " + zones[i] + " model " + m);
      traces[i].emplace_back(raw);
    }
    std::vector<const swr_trace*> view;
    for (const auto& t : traces[i]) view.push_back(t.get());
    swr_report* rep = nullptr;
    check(swr_report_create(view.data(), view.size(), f.acper_tau, &rep), "report " + zones[i]);
    reports[i].reset(rep);
  });

  const fs::path out(f.out_dir);
  fs::create_directories(out);
  write_text(out / "run_config.txt", run_config_text("compare", f, cfg, zones));
  std::string summary = "zone,model,protocol,mape_pct,mae_mw,rmse_mw,rmspe_pct,acper_pct,n\n";
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const fs::path dir = out / zones[i];
    fs::create_directories(dir);
    for (const auto& t : traces[i]) write_trace(dir, trace_stem(t.get()), t.get());
    char* text = nullptr;
    check(swr_report_csv(reports[i].get(), &text), "report " + zones[i]);
    const std::string csv = take_string(text);
    write_text(dir / "report.csv", csv);
    for (std::size_t r = 0; r < swr_report_row_count(reports[i].get()); ++r) {
      swr_metric_row row{};
      check(swr_report_row(reports[i].get(), r, &row), "report row");
      summary += zones[i] + ',' + row.model + ',' + row.protocol + ',' + fmt(row.mape_pct) + ',' +
                 fmt(row.mae_mw) + ',' + fmt(row.rmse_mw) + ',' + fmt(row.rmspe_pct) + ',' +
                 fmt(row.acper_pct) + ',' + std::to_string(row.n) + '\n';
      std::cout << "zone=" << zones[i] << " model=" << row.model << " protocol=" << row.protocol
                << " mape_pct=" << fmt(row.mape_pct) << '\n';
    }
  }
  write_text(out / "summary.csv", summary);
  return kExitOk;
}

// ------------------------------------------------------------------ config file

/// Appends `--key=value` for every key in the flat config file named by
/// --config that is not already given on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw Failure{SWR_E_IO, "cannot open config file '" + path + "'"};
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Failure{SWR_E_PARSE, path + ":" + std::to_string(line_no) + ": expected key=value"};
    }
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (!given(flag)) extra.push_back(flag + "=" + trim(line.substr(eq + 1)));
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-window regression load forecaster"};
  app.require_subcommand(1);
  app.set_version_flag("--version", swr_version());

  SynthFlags synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic load CSV");
  synth_cmd->add_option("--length", synth.length, "Samples per zone");
  synth_cmd->add_option("--step", synth.step, "Sampling interval in seconds")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--period", synth.periods, "Seasonal period in seconds (repeatable)");
  synth_cmd->add_option("--amp", synth.amps, "Amplitude in MW, one per --period");
  synth_cmd->add_option("--phase", synth.phases, "Phase in radians, one per --period");
  synth_cmd->add_option("--base", synth.base, "Base level in MW");
  synth_cmd->add_option("--noise", synth.noise, "Gaussian noise sigma in MW");
  synth_cmd->add_option("--seed", synth.seed, "Random seed (zone i uses seed + i)");
  synth_cmd->add_option("--zone", synth.zones, "Zone id (repeatable; default SYNTH)");
  synth_cmd->add_option("--drift-onset", synth.drift_onset, "Index where drift starts");
  synth_cmd->add_option("--drift-shift", synth.drift_shift, "Level shift in MW after onset");
  synth_cmd->add_option("--drift-scale", synth.drift_scale, "Seasonal amplitude factor after onset");
  synth_cmd->add_option("--start", synth.start, "First timestamp (UTC, ISO-8601)");
  synth_cmd->add_option("--out", synth.out, "Output file (default stdout)");

  std::string ws_input, ws_zone;
  swr_sizing_config ws_cfg;
  swr_sizing_config_default(&ws_cfg);
  auto* ws_cmd = app.add_subcommand("window-size", "Print the training-window sizing of a zone");
  ws_cmd->add_option("--input", ws_input, "Load CSV")->required();
  ws_cmd->add_option("--zone", ws_zone, "Zone (required when the input has several)");
  add_sizing_flags(ws_cmd, ws_cfg);

  EngineFlags fc;
  swr_engine_config_default(&fc.engine);
  auto* fc_cmd = app.add_subcommand("forecast", "Run sliding-window regression per zone");
  add_engine_flags(fc_cmd, fc);

  EngineFlags cmp;
  swr_engine_config_default(&cmp.engine);
  auto* cmp_cmd = app.add_subcommand("compare", "Compare the adaptive forecaster with baselines");
  add_engine_flags(cmp_cmd, cmp);
  cmp_cmd->add_option("--models", cmp.models, "Comma list of swr,linear,svr,tree,forest,persistence");
  cmp_cmd->add_option("--protocol", cmp.protocol, "Baseline protocol: train-once or sliding-fixed");
  cmp_cmd->add_option("--acper-tau", cmp.acper_tau, "ACPER threshold in percent");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return exit_code(f.status);
  }

  try {
    if (*synth_cmd) return cmd_synth(synth);
    if (*ws_cmd) return cmd_window_size(ws_input, ws_zone, ws_cfg);
    if (*fc_cmd) return cmd_forecast(fc);
    if (*cmp_cmd) return cmd_compare(cmp);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}
