#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swr/data_model.hpp"

namespace swr {

/// Evenly spaced frequencies (Hz) from df to f_max in steps of df, where
/// df = 1 / (oversampling * T_span).
struct FrequencyGrid {
  std::vector<double> frequencies;
  double oversampling = 4.0;
  double f_max = 0.0;
  double spacing = 0.0;
};

FrequencyGrid build_freq_grid(std::size_t n_samples, Seconds step, double oversampling);
FrequencyGrid build_freq_grid(const LoadSeries& series, double oversampling);

struct Periodogram {
  FrequencyGrid grid;
  std::vector<double> power;  // normalized Lomb-Scargle power
  std::size_t n_samples = 0;
  double n_independent = 1.0;  // grid size / oversampling

  std::size_t argmax() const;
};

/// Normalized Lomb-Scargle power at a single frequency. Returns nullopt for
/// a constant input.
std::optional<double> lomb_scargle_power(std::span<const double> times,
                                         std::span<const double> values,
                                         double frequency);

/// Direct O(N * N_f) evaluation. Returns nullopt when the input has zero
/// variance ("no periodicity").
std::optional<Periodogram> lomb_scargle_direct(std::span<const double> times,
                                               std::span<const double> values,
                                               const FrequencyGrid& grid);

/// 1 - (1 - exp(-z))^M.
double false_alarm_probability(double peak_power, double n_independent);

struct SizingConfig {
  double oversampling = 4.0;
  double alpha = 0.01;       // significance threshold on the false alarm probability
  double multiplier = 1.0;   // window = multiplier * dominant period
  std::size_t fallback_samples = 288;
  std::size_t min_window = 64;
  std::size_t max_window = 0;   // 0: length of the analysed history
  std::size_t history_cap = 0;  // 0: use the whole history
  bool refine_peak = true;      // maximize power between the neighbouring grid points
};

struct WindowSizing {
  std::optional<double> dominant_period_seconds;
  std::size_t window_samples = 0;
  bool significant = false;
  double false_alarm_prob = 1.0;
};

/// Training-window size from the dominant period of `history` (uniform,
/// spacing `step`). The trailing `history_cap` samples are analysed when set.
WindowSizing training_window_size(std::span<const double> history, Seconds step,
                                  const SizingConfig& cfg);
WindowSizing training_window_size(const LoadSeries& series, const SizingConfig& cfg);

}  // namespace swr
