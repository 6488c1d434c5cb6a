#include "swr/swr.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "swr/data_model.hpp"
#include "swr/engine.hpp"
#include "swr/error.hpp"
#include "swr/metrics.hpp"

struct swr_dataset {
  swr::ZoneMap zones;
};

struct swr_trace {
  swr::ForecastTrace trace;
};

struct swr_report {
  swr::MetricReport report;
};

namespace {

thread_local std::string g_last_error;

swr_status set_error(swr_status status, const char* what) {
  g_last_error = what;
  return status;
}

swr_status to_status(swr::ErrorCode code) {
  switch (code) {
    case swr::ErrorCode::invalid_argument: return SWR_E_INVALID_ARGUMENT;
    case swr::ErrorCode::parse: return SWR_E_PARSE;
    case swr::ErrorCode::insufficient_data: return SWR_E_INSUFFICIENT_DATA;
    case swr::ErrorCode::numerical: return SWR_E_NUMERICAL;
    case swr::ErrorCode::io: return SWR_E_IO;
  }
  return SWR_E_INTERNAL;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
swr_status guarded(Fn&& fn) {
  try {
    fn();
    return SWR_OK;
  } catch (const swr::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SWR_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SWR_E_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* name) {
  if (p == nullptr) swr::fail(swr::ErrorCode::invalid_argument, std::string(name) + " is NULL");
}

const swr::LoadSeries& zone_of(const swr_dataset* ds, const char* zone) {
  need(ds, "dataset");
  need(zone, "zone");
  const auto it = ds->zones.find(zone);
  if (it == ds->zones.end()) {
    swr::fail(swr::ErrorCode::invalid_argument, std::string("unknown zone '") + zone + "'");
  }
  return it->second;
}

void write_file(const char* path, const std::string& text) {
  need(path, "path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) swr::fail(swr::ErrorCode::io, std::string("cannot write '") + path + "'");
  out << text;
  if (!out) swr::fail(swr::ErrorCode::io, std::string("write failed for '") + path + "'");
}

swr::RegressorKind kind_of(swr_model_kind m) {
  switch (m) {
    case SWR_MODEL_SVR: return swr::RegressorKind::svr;
    case SWR_MODEL_LINEAR: return swr::RegressorKind::linear;
    case SWR_MODEL_TREE: return swr::RegressorKind::tree;
    case SWR_MODEL_FOREST: return swr::RegressorKind::forest;
    case SWR_MODEL_PERSISTENCE: return swr::RegressorKind::persistence;
  }
  swr::fail(swr::ErrorCode::invalid_argument, "unknown model kind");
}

swr::SizingConfig sizing_of(const swr_sizing_config& c) {
  swr::SizingConfig s;
  s.oversampling = c.oversampling;
  s.alpha = c.alpha;
  s.multiplier = c.multiplier;
  s.fallback_samples = c.fallback_samples;
  s.min_window = c.min_window;
  s.max_window = c.max_window;
  s.history_cap = c.history_cap;
  return s;
}

swr::RegressorSpec spec_of(const swr_engine_config& c, swr_model_kind model) {
  swr::RegressorSpec r;
  r.kind = kind_of(model);
  r.svr.C = c.svr_c;
  r.svr.epsilon = c.svr_epsilon;
  r.svr.gamma = c.svr_gamma;
  r.svr.tol = c.svr_tol;
  r.svr.max_passes = c.svr_max_passes;
  r.tree.max_depth = c.tree_max_depth;
  r.tree.min_leaf = c.tree_min_leaf;
  r.forest.n_trees = c.forest_trees;
  r.forest.tree = r.tree;
  r.forest.mtry = c.forest_mtry;
  r.forest.seed = c.seed;
  return r;
}

swr::EngineConfig engine_of(const swr_engine_config& c) {
  swr::EngineConfig e;
  e.regressor = spec_of(c, c.model);
  e.lags = c.lags;
  if (c.train_window > 0) e.train_window = c.train_window;
  e.sizing = sizing_of(c.sizing);
  e.sizing_history = c.sizing_history;
  e.resize_every = c.resize_every;
  e.h0 = c.h0;
  e.h_min = c.h_min;
  e.h_max = c.h_max;
  e.mape_upper = c.mape_upper_pct;
  e.mape_lower = c.mape_lower_pct;
  e.warmup = c.warmup;
  e.seed = c.seed;
  return e;
}

void fill_sizing(const swr::WindowSizing& s, swr_window_sizing* out) {
  out->has_period = s.dominant_period_seconds ? 1 : 0;
  out->dominant_period_s = s.dominant_period_seconds.value_or(0.0);
  out->window_samples = s.window_samples;
  out->significant = s.significant ? 1 : 0;
  out->false_alarm_prob = s.false_alarm_prob;
}

}  // namespace

extern "C" {

const char* swr_last_error(void) { return g_last_error.c_str(); }

const char* swr_status_name(swr_status status) {
  switch (status) {
    case SWR_OK: return "ok";
    case SWR_E_INVALID_ARGUMENT: return "invalid argument";
    case SWR_E_PARSE: return "parse error";
    case SWR_E_INSUFFICIENT_DATA: return "insufficient data";
    case SWR_E_NUMERICAL: return "numerical failure";
    case SWR_E_IO: return "i/o error";
    case SWR_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* swr_version(void) { return "1.0.0"; }

void swr_string_free(char* s) { std::free(s); }

swr_status swr_parse_timestamp(const char* text, int64_t* out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = swr::parse_timestamp(text).time_since_epoch().count();
  });
}

void swr_synth_config_default(swr_synth_config* cfg) {
  if (cfg == nullptr) return;
  const swr::SynthConfig d;
  *cfg = swr_synth_config{};
  cfg->length = d.length;
  cfg->step_s = d.step;
  cfg->start_unix_s = d.start_time.time_since_epoch().count();
  cfg->base_level_mw = d.base_level;
  cfg->drift_amplitude_scale = 1.0;
  cfg->seed = d.seed;
}

swr_status swr_dataset_create(swr_dataset** out) {
  return guarded([&] {
    need(out, "out");
    *out = new swr_dataset{};
  });
}

void swr_dataset_free(swr_dataset* ds) { delete ds; }

swr_status swr_dataset_parse_csv(const char* text, size_t len, swr_dataset** out) {
  return guarded([&] {
    need(out, "out");
    need(text, "text");
    auto zones = swr::parse_load_csv(std::string_view(text, len));
    *out = new swr_dataset{std::move(zones)};
  });
}

swr_status swr_dataset_load_csv(const char* path, swr_dataset** out) {
  return guarded([&] {
    need(out, "out");
    need(path, "path");
    auto zones = swr::read_load_csv(path);
    *out = new swr_dataset{std::move(zones)};
  });
}

swr_status swr_dataset_add_synthetic(swr_dataset* ds, const char* zone,
                                     const swr_synth_config* cfg) {
  return guarded([&] {
    need(ds, "dataset");
    need(zone, "zone");
    need(cfg, "config");
    swr::require(*zone != '\0' && std::strchr(zone, ',') == nullptr,
                 "zone ids must be non-empty and contain no commas");
    swr::SynthConfig c;
    c.length = cfg->length;
    c.step = cfg->step_s;
    c.start_time = swr::UnixTime{std::chrono::seconds{cfg->start_unix_s}};
    c.base_level = cfg->base_level_mw;
    if (cfg->n_components > 0) need(cfg->components, "components");
    for (size_t i = 0; i < cfg->n_components; ++i) {
      c.components.push_back({cfg->components[i].period_s, cfg->components[i].amplitude_mw,
                              cfg->components[i].phase_rad});
    }
    c.noise_sigma = cfg->noise_sigma_mw;
    if (cfg->has_drift) {
      c.drift = swr::Drift{cfg->drift_onset, cfg->drift_level_shift_mw,
                           cfg->drift_amplitude_scale};
    }
    c.seed = cfg->seed;
    c.zone_id = zone;
    auto series = swr::generate_synthetic(c);
    ds->zones.insert_or_assign(zone, std::move(series));
  });
}

swr_status swr_dataset_to_csv(const swr_dataset* ds, char** out) {
  return guarded([&] {
    need(ds, "dataset");
    need(out, "out");
    *out = dup_string(swr::serialize_load_csv(ds->zones));
  });
}

swr_status swr_dataset_write_csv(const swr_dataset* ds, const char* path) {
  return guarded([&] {
    need(ds, "dataset");
    write_file(path, swr::serialize_load_csv(ds->zones));
  });
}

size_t swr_dataset_zone_count(const swr_dataset* ds) { return ds ? ds->zones.size() : 0; }

const char* swr_dataset_zone_name(const swr_dataset* ds, size_t i) {
  if (ds == nullptr || i >= ds->zones.size()) return nullptr;
  auto it = ds->zones.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(i));
  return it->first.c_str();
}

swr_status swr_dataset_zone_length(const swr_dataset* ds, const char* zone, size_t* out) {
  return guarded([&] {
    need(out, "out");
    *out = zone_of(ds, zone).size();
  });
}

swr_status swr_dataset_zone_values(const swr_dataset* ds, const char* zone, double* out,
                                   size_t cap) {
  return guarded([&] {
    const auto& s = zone_of(ds, zone);
    if (cap > 0) need(out, "out");
    const auto v = s.values();
    std::copy_n(v.begin(), std::min(cap, v.size()), out);
  });
}

void swr_sizing_config_default(swr_sizing_config* cfg) {
  if (cfg == nullptr) return;
  const swr::SizingConfig d;
  cfg->oversampling = d.oversampling;
  cfg->alpha = d.alpha;
  cfg->multiplier = d.multiplier;
  cfg->fallback_samples = d.fallback_samples;
  cfg->min_window = d.min_window;
  cfg->max_window = d.max_window;
  cfg->history_cap = d.history_cap;
}

swr_status swr_window_size(const swr_dataset* ds, const char* zone,
                           const swr_sizing_config* cfg, swr_window_sizing* out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    fill_sizing(swr::training_window_size(zone_of(ds, zone), sizing_of(*cfg)), out);
  });
}

void swr_engine_config_default(swr_engine_config* cfg) {
  if (cfg == nullptr) return;
  const swr::EngineConfig d;
  *cfg = swr_engine_config{};
  cfg->model = SWR_MODEL_SVR;
  cfg->lags = d.lags;
  cfg->train_window = 0;
  swr_sizing_config_default(&cfg->sizing);
  cfg->sizing_history = d.sizing_history;
  cfg->resize_every = d.resize_every;
  cfg->h0 = d.h0;
  cfg->h_min = d.h_min;
  cfg->h_max = d.h_max;
  cfg->mape_upper_pct = d.mape_upper;
  cfg->mape_lower_pct = d.mape_lower;
  cfg->warmup = d.warmup;
  cfg->seed = d.seed;
  cfg->svr_c = d.regressor.svr.C;
  cfg->svr_epsilon = d.regressor.svr.epsilon;
  cfg->svr_gamma = d.regressor.svr.gamma;
  cfg->svr_tol = d.regressor.svr.tol;
  cfg->svr_max_passes = d.regressor.svr.max_passes;
  cfg->tree_max_depth = d.regressor.tree.max_depth;
  cfg->tree_min_leaf = d.regressor.tree.min_leaf;
  cfg->forest_trees = d.regressor.forest.n_trees;
  cfg->forest_mtry = d.regressor.forest.mtry;
}

swr_status swr_run(const swr_dataset* ds, const char* zone, const swr_engine_config* cfg,
                   swr_trace** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    auto trace = swr::run_swr(zone_of(ds, zone), engine_of(*cfg));
    *out = new swr_trace{std::move(trace)};
  });
}

swr_status swr_run_baseline(const swr_dataset* ds, const char* zone,
                            const swr_engine_config* cfg, swr_model_kind model,
                            swr_protocol protocol, const swr_trace* schedule,
                            swr_trace** out) {
  return guarded([&] {
    need(cfg, "config");
    need(out, "out");
    const auto proto = protocol == SWR_PROTOCOL_TRAIN_ONCE ? swr::Protocol::train_once
                                                           : swr::Protocol::sliding_fixed;
    std::vector<std::size_t> sizes;
    if (schedule != nullptr) sizes = schedule->trace.batch_sizes();
    auto trace = swr::run_baseline(zone_of(ds, zone), engine_of(*cfg), spec_of(*cfg, model),
                                   proto, sizes);
    *out = new swr_trace{std::move(trace)};
  });
}

void swr_trace_free(swr_trace* t) { delete t; }

swr_status swr_trace_clone(const swr_trace* t, swr_trace** out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = new swr_trace{t->trace};
  });
}

const char* swr_trace_model(const swr_trace* t) { return t ? t->trace.model.c_str() : ""; }
const char* swr_trace_protocol(const swr_trace* t) {
  return t ? t->trace.protocol.c_str() : "";
}
size_t swr_trace_step_count(const swr_trace* t) { return t ? t->trace.steps.size() : 0; }
size_t swr_trace_batch_count(const swr_trace* t) { return t ? t->trace.batches.size() : 0; }
int swr_trace_all_converged(const swr_trace* t) {
  return t && t->trace.all_converged() ? 1 : 0;
}

swr_status swr_trace_step(const swr_trace* t, size_t i, size_t* index, double* actual,
                          double* predicted, size_t* batch) {
  return guarded([&] {
    need(t, "trace");
    swr::require(i < t->trace.steps.size(), "step index out of range");
    const auto& s = t->trace.steps[i];
    if (index) *index = s.index;
    if (actual) *actual = s.actual;
    if (predicted) *predicted = s.predicted;
    if (batch) *batch = s.batch;
  });
}

swr_status swr_trace_batch(const swr_trace* t, size_t i, size_t* h, size_t* window_samples,
                           double* mape_pct, int* converged) {
  return guarded([&] {
    need(t, "trace");
    swr::require(i < t->trace.batches.size(), "batch index out of range");
    const auto& b = t->trace.batches[i];
    if (h) *h = b.h;
    if (window_samples) *window_samples = b.window_samples;
    if (mape_pct) *mape_pct = b.mape_pct;
    if (converged) *converged = b.converged ? 1 : 0;
  });
}

swr_status swr_trace_window_sizing(const swr_trace* t, swr_window_sizing* out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    fill_sizing(t->trace.sizing, out);
  });
}

swr_status swr_trace_mape(const swr_trace* t, double* out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = swr::mape(t->trace.actuals(), t->trace.predictions());
  });
}

swr_status swr_trace_mape_from(const swr_trace* t, size_t first_index, double* out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = swr::trace_mape_from(t->trace, first_index);
  });
}

swr_status swr_trace_steps_csv(const swr_trace* t, char** out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = dup_string(swr::steps_csv(t->trace));
  });
}

swr_status swr_trace_batches_csv(const swr_trace* t, char** out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = dup_string(swr::batches_csv(t->trace));
  });
}

swr_status swr_report_create(const swr_trace* const* traces, size_t n_traces,
                             double acper_tau_pct, swr_report** out) {
  return guarded([&] {
    need(out, "out");
    if (n_traces > 0) need(traces, "traces");
    std::vector<swr::ForecastTrace> ts;
    for (size_t i = 0; i < n_traces; ++i) {
      need(traces[i], "trace");
      ts.push_back(traces[i]->trace);
    }
    auto report = swr::compare_report(ts, acper_tau_pct);
    *out = new swr_report{std::move(report)};
  });
}

void swr_report_free(swr_report* r) { delete r; }

size_t swr_report_row_count(const swr_report* r) { return r ? r->report.rows.size() : 0; }

swr_status swr_report_row(const swr_report* r, size_t i, swr_metric_row* out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    swr::require(i < r->report.rows.size(), "row index out of range");
    const auto& row = r->report.rows[i];
    *out = swr_metric_row{row.model.c_str(), row.protocol.c_str(), row.mape_pct, row.mae_mw,
                          row.rmse_mw,       row.rmspe_pct,        row.acper_pct, row.n};
  });
}

swr_status swr_report_csv(const swr_report* r, char** out) {
  return guarded([&] {
    need(r, "report");
    need(out, "out");
    *out = dup_string(swr::report_csv(r->report));
  });
}

swr_status swr_mape(const double* actual, const double* predicted, size_t n, double* out) {
  return guarded([&] {
    need(out, "out");
    if (n > 0) {
      need(actual, "actual");
      need(predicted, "predicted");
    }
    *out = swr::mape({actual, n}, {predicted, n});
  });
}

}  // extern "C"
