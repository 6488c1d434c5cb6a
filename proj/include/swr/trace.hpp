#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "swr/data_model.hpp"
#include "swr/spectral.hpp"

namespace swr {

struct StepRecord {
  std::size_t index = 0;
  UnixTime time{};
  double actual = 0.0;
  double predicted = 0.0;
  std::size_t batch = 0;
};

struct BatchRecord {
  std::size_t batch = 0;
  std::size_t start_index = 0;
  std::size_t h = 0;  // steps actually forecast in this batch
  std::size_t window_samples = 0;
  double mape_pct = 0.0;
  bool converged = true;
};

/// Time-aligned forecasts of one model on one zone.
struct ForecastTrace {
  std::string zone;
  std::string model;     // e.g. "swr", "linear"
  std::string protocol;  // "adaptive", "train-once", "sliding-fixed"
  std::vector<StepRecord> steps;
  std::vector<BatchRecord> batches;
  WindowSizing sizing;
  std::vector<std::pair<std::string, std::string>> config;

  std::vector<double> actuals() const;
  std::vector<double> predictions() const;
  /// Sizes of consecutive batches, usable as a replay schedule.
  std::vector<std::size_t> batch_sizes() const;
  bool all_converged() const;
};

/// `index,timestamp,actual_mw,predicted_mw,batch`
std::string steps_csv(const ForecastTrace& trace);
/// `batch,h,window_samples,mape_pct,converged`
std::string batches_csv(const ForecastTrace& trace);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace swr
