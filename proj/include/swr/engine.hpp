#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "swr/data_model.hpp"
#include "swr/regressors.hpp"
#include "swr/spectral.hpp"
#include "swr/trace.hpp"

namespace swr {

struct EngineConfig {
  RegressorSpec regressor{};
  std::size_t lags = 12;
  /// Fixed training window in samples; nullopt sizes it from the periodogram.
  std::optional<std::size_t> train_window;
  SizingConfig sizing{};
  /// Samples of history analysed by the periodogram.
  std::size_t sizing_history = 576;
  /// Re-run window sizing every this many batches; 0 sizes once.
  std::size_t resize_every = 0;
  std::size_t h0 = 6;
  std::size_t h_min = 1;
  std::size_t h_max = 24;
  double mape_upper = 20.0;  // percent; shrink the horizon above this
  double mape_lower = 5.0;   // percent; grow the horizon below this
  /// First forecast index; 0 derives it from the training window.
  std::size_t warmup = 0;
  std::uint64_t seed = 42;

  void validate() const;
};

using PredictFn = std::function<double(std::span<const double>)>;

/// Iterated one-step forecasts. `seed_lags` holds the last k actuals, most
/// recent first; each prediction is pushed to the front of the lag buffer.
std::vector<double> recursive_forecast(const PredictFn& predict,
                                       std::span<const double> seed_lags, std::size_t h);
std::vector<double> recursive_forecast(const Regressor& model,
                                       std::span<const double> seed_lags, std::size_t h);

/// The three-branch horizon rule on an already computed MAPE, clamped to
/// [h_min, h_max].
std::size_t next_prediction_window(double mape_pct, std::size_t h, const EngineConfig& cfg);

/// Batch MAPE of (actuals, preds) followed by next_prediction_window.
std::size_t update_prediction_window(std::span<const double> actuals,
                                     std::span<const double> preds, std::size_t h,
                                     const EngineConfig& cfg);

/// Where forecasting starts and how much history trains each model.
struct Schedule {
  std::size_t warmup = 0;
  std::size_t window = 0;
  WindowSizing sizing{};
};

/// Resolves training window and warmup using only samples before warmup.
Schedule resolve_schedule(std::span<const double> values, Seconds step, const EngineConfig& cfg);

/// Sliding-window regression with adaptive horizon. Forecasting is causal:
/// the batch starting at cursor c only reads values[0, c).
ForecastTrace run_swr(const LoadSeries& series, const EngineConfig& cfg);

enum class Protocol { train_once, sliding_fixed };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view name);

/// Baseline evaluated on the same step indices as run_swr. train_once fits
/// once on everything before warmup and follows `batch_sizes` (h0 batches
/// when empty); sliding_fixed refits every batch on the resolved window with
/// h fixed at h0.
ForecastTrace run_baseline(const LoadSeries& series, const EngineConfig& cfg,
                           const RegressorSpec& model, Protocol protocol,
                           std::span<const std::size_t> batch_sizes = {});

/// Flat key=value description of a configuration.
std::vector<std::pair<std::string, std::string>> describe(const EngineConfig& cfg);

}  // namespace swr
