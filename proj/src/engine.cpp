#include "swr/engine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "swr/error.hpp"
#include "swr/metrics.hpp"

namespace swr {

namespace {

/// Minimum history before the first forecast: one day of 5-minute readings.
constexpr std::size_t kMinWarmupSamples = 288;

}  // namespace

void EngineConfig::validate() const {
  require(lags >= 1, "lags must be >= 1");
  require(h_min >= 1, "h_min must be >= 1");
  require(h_min <= h0 && h0 <= h_max, "need h_min <= h0 <= h_max");
  require(mape_lower > 0.0 && mape_lower < mape_upper,
          "need 0 < mape_lower < mape_upper");
  if (train_window) {
    require(*train_window >= lags + 2, "training window must be >= lags + 2");
  } else {
    require(sizing.min_window >= lags + 2, "min window must be >= lags + 2");
    require(sizing_history >= 3, "sizing history must be >= 3 samples");
  }
}

std::vector<double> recursive_forecast(const PredictFn& predict,
                                       std::span<const double> seed_lags, std::size_t h) {
  require(h >= 1, "forecast horizon must be >= 1");
  require(!seed_lags.empty(), "need at least one seed lag");
  std::vector<double> lags(seed_lags.begin(), seed_lags.end());
  std::vector<double> out;
  out.reserve(h);
  for (std::size_t s = 0; s < h; ++s) {
    const double y = predict(lags);
    if (!std::isfinite(y)) {
      fail(ErrorCode::numerical,
           "non-finite prediction at step " + std::to_string(s) + " of the batch");
    }
    out.push_back(y);
    std::rotate(lags.rbegin(), lags.rbegin() + 1, lags.rend());
    lags.front() = y;
  }
  return out;
}

std::vector<double> recursive_forecast(const Regressor& model,
                                       std::span<const double> seed_lags, std::size_t h) {
  require(seed_lags.size() == model.lags(), "seed lag count does not match the model");
  return recursive_forecast([&](std::span<const double> x) { return model.predict(x); },
                            seed_lags, h);
}

std::size_t next_prediction_window(double mape_pct, std::size_t h, const EngineConfig& cfg) {
  std::size_t next = h;
  if (mape_pct > cfg.mape_upper) {
    next = h > 0 ? h - 1 : 0;
  } else if (mape_pct < cfg.mape_lower) {
    next = h + 1;
  }
  return std::clamp(next, cfg.h_min, cfg.h_max);
}

std::size_t update_prediction_window(std::span<const double> actuals,
                                     std::span<const double> preds, std::size_t h,
                                     const EngineConfig& cfg) {
  return next_prediction_window(mape(actuals, preds), h, cfg);
}

Schedule resolve_schedule(std::span<const double> values, Seconds step,
                          const EngineConfig& cfg) {
  cfg.validate();
  const std::size_t n = values.size();
  const std::size_t k = cfg.lags;
  Schedule s;
  if (cfg.train_window) {
    s.window = *cfg.train_window;
    s.sizing.window_samples = s.window;
    s.warmup = cfg.warmup > 0 ? cfg.warmup : std::max(s.window, kMinWarmupSamples) + k;
  } else {
    // Only samples before the first forecast may inform the window.
    std::size_t history = cfg.warmup > 0 ? std::min(cfg.sizing_history, cfg.warmup)
                                         : cfg.sizing_history;
    history = std::min(history, n);
    if (history < 3) {
      fail(ErrorCode::insufficient_data, "not enough history for window sizing");
    }
    s.sizing = training_window_size(values.first(history), step, cfg.sizing);
    s.window = s.sizing.window_samples;
    s.warmup = cfg.warmup > 0
                   ? cfg.warmup
                   : std::max(std::max(s.window, kMinWarmupSamples) + k, history);
  }
  if (s.window < k + 2) {
    fail(ErrorCode::invalid_argument, "training window " + std::to_string(s.window) +
                                          " too short for " + std::to_string(k) + " lags");
  }
  if (s.warmup < s.window + k) {
    fail(ErrorCode::invalid_argument, "warmup " + std::to_string(s.warmup) +
                                          " is shorter than window + lags (" +
                                          std::to_string(s.window + k) + ")");
  }
  if (n < s.warmup + cfg.h0) {
    fail(ErrorCode::insufficient_data,
         "series has " + std::to_string(n) + " samples, need at least " +
             std::to_string(s.warmup + cfg.h0) + " (warmup + h0)");
  }
  return s;
}

namespace {

std::vector<double> seed_lags(std::span<const double> values, std::size_t cursor,
                              std::size_t k) {
  std::vector<double> lags(k);
  for (std::size_t j = 0; j < k; ++j) lags[j] = values[cursor - 1 - j];
  return lags;
}

Regressor fit_window(std::span<const double> values, std::size_t end, std::size_t window,
                     std::size_t k, const RegressorSpec& spec) {
  const auto lm = make_lag_matrix(values.subspan(end - window, window), k, end - window);
  return Regressor::fit(lm, spec);
}

/// Forecasts one batch at `cursor` and appends steps and the batch record.
void record_batch(ForecastTrace& trace, const LoadSeries& series, const Regressor& model,
                  std::size_t cursor, std::size_t hb, std::size_t window, std::size_t k) {
  const auto values = series.values();
  const std::size_t batch = trace.batches.size();
  std::vector<double> preds;
  try {
    preds = recursive_forecast(model, seed_lags(values, cursor, k), hb);
  } catch (const Error& e) {
    fail(e.code(), "zone '" + series.zone_id() + "', " + trace.model + " batch " +
                       std::to_string(batch) + " at index " + std::to_string(cursor) + ": " +
                       e.what());
  }
  for (std::size_t s = 0; s < hb; ++s) {
    trace.steps.push_back({cursor + s, series.time_at(cursor + s), values[cursor + s],
                           preds[s], batch});
  }
  BatchRecord b;
  b.batch = batch;
  b.start_index = cursor;
  b.h = hb;
  b.window_samples = window;
  b.mape_pct = mape(values.subspan(cursor, hb), preds);
  b.converged = model.converged();
  trace.batches.push_back(b);
}

RegressorSpec seeded(RegressorSpec spec, const EngineConfig& cfg) {
  spec.forest.seed = cfg.seed;
  return spec;
}

}  // namespace

ForecastTrace run_swr(const LoadSeries& series, const EngineConfig& cfg) {
  const auto values = series.values();
  const Schedule sched = resolve_schedule(values, series.step(), cfg);
  const auto spec = seeded(cfg.regressor, cfg);
  const std::size_t k = cfg.lags;
  const std::size_t n = values.size();

  ForecastTrace trace;
  trace.zone = series.zone_id();
  trace.model = cfg.regressor.kind == RegressorKind::svr
                    ? "swr"
                    : "swr-" + std::string(to_string(cfg.regressor.kind));
  trace.protocol = "adaptive";
  trace.sizing = sched.sizing;
  trace.config = describe(cfg);

  std::size_t cursor = sched.warmup;
  std::size_t h = cfg.h0;
  std::size_t window = sched.window;
  while (cursor < n) {
    const std::size_t batch = trace.batches.size();
    if (!cfg.train_window && cfg.resize_every > 0 && batch > 0 &&
        batch % cfg.resize_every == 0) {
      const std::size_t history = std::min(cfg.sizing_history, cursor);
      window = training_window_size(values.subspan(cursor - history, history), series.step(),
                                    cfg.sizing)
                   .window_samples;
      window = std::clamp(window, k + 2, cursor - k);
    }
    const std::size_t hb = std::min(h, n - cursor);
    const Regressor model = fit_window(values, cursor, window, k, spec);
    record_batch(trace, series, model, cursor, hb, window, k);
    std::vector<double> preds(hb);
    for (std::size_t i = 0; i < hb; ++i) preds[i] = trace.steps[trace.steps.size() - hb + i].predicted;
    h = update_prediction_window(values.subspan(cursor, hb), preds, h, cfg);
    cursor += hb;
  }
  return trace;
}

std::string_view to_string(Protocol p) {
  return p == Protocol::train_once ? "train-once" : "sliding-fixed";
}

Protocol parse_protocol(std::string_view name) {
  if (name == "train-once") return Protocol::train_once;
  if (name == "sliding-fixed") return Protocol::sliding_fixed;
  fail(ErrorCode::invalid_argument, "unknown protocol '" + std::string(name) + "'");
}

ForecastTrace run_baseline(const LoadSeries& series, const EngineConfig& cfg,
                           const RegressorSpec& model_spec, Protocol protocol,
                           std::span<const std::size_t> batch_sizes) {
  const auto values = series.values();
  const Schedule sched = resolve_schedule(values, series.step(), cfg);
  const auto spec = seeded(model_spec, cfg);
  const std::size_t k = cfg.lags;
  const std::size_t n = values.size();

  ForecastTrace trace;
  trace.zone = series.zone_id();
  trace.model = std::string(to_string(model_spec.kind));
  trace.protocol = std::string(to_string(protocol));
  trace.sizing = sched.sizing;
  trace.config = describe(cfg);

  std::optional<Regressor> fixed;
  std::size_t window = sched.window;
  if (protocol == Protocol::train_once) {
    window = sched.warmup;
    fixed = fit_window(values, sched.warmup, window, k, spec);
  }

  std::size_t cursor = sched.warmup;
  std::size_t batch = 0;
  while (cursor < n) {
    std::size_t h = cfg.h0;
    if (protocol == Protocol::train_once && batch < batch_sizes.size()) h = batch_sizes[batch];
    require(h >= 1, "batch sizes must be >= 1");
    const std::size_t hb = std::min(h, n - cursor);
    if (fixed) {
      record_batch(trace, series, *fixed, cursor, hb, window, k);
    } else {
      record_batch(trace, series, fit_window(values, cursor, window, k, spec), cursor, hb,
                   window, k);
    }
    cursor += hb;
    ++batch;
  }
  return trace;
}

std::vector<std::pair<std::string, std::string>> describe(const EngineConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&](std::string key, std::string value) {
    kv.emplace_back(std::move(key), std::move(value));
  };
  add("regressor", std::string(to_string(cfg.regressor.kind)));
  add("lags", std::to_string(cfg.lags));
  add("train_window", cfg.train_window ? std::to_string(*cfg.train_window) : "auto");
  add("oversampling", format_double(cfg.sizing.oversampling));
  add("alpha", format_double(cfg.sizing.alpha));
  add("period_multiplier", format_double(cfg.sizing.multiplier));
  add("fallback_window", std::to_string(cfg.sizing.fallback_samples));
  add("min_window", std::to_string(cfg.sizing.min_window));
  add("max_window", std::to_string(cfg.sizing.max_window));
  add("sizing_history", std::to_string(cfg.sizing_history));
  add("resize_every", std::to_string(cfg.resize_every));
  add("h0", std::to_string(cfg.h0));
  add("h_min", std::to_string(cfg.h_min));
  add("h_max", std::to_string(cfg.h_max));
  add("mape_upper", format_double(cfg.mape_upper));
  add("mape_lower", format_double(cfg.mape_lower));
  add("warmup", std::to_string(cfg.warmup));
  add("seed", std::to_string(cfg.seed));
  add("svr_c", format_double(cfg.regressor.svr.C));
  add("svr_epsilon", format_double(cfg.regressor.svr.epsilon));
  add("svr_gamma", format_double(cfg.regressor.svr.gamma));
  add("svr_tol", format_double(cfg.regressor.svr.tol));
  add("svr_max_passes", std::to_string(cfg.regressor.svr.max_passes));
  add("tree_max_depth", std::to_string(cfg.regressor.tree.max_depth));
  add("tree_min_leaf", std::to_string(cfg.regressor.tree.min_leaf));
  add("forest_trees", std::to_string(cfg.regressor.forest.n_trees));
  add("forest_mtry", std::to_string(cfg.regressor.forest.mtry));
  return kv;
}

}  // namespace swr
