#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swr {

using Seconds = std::int64_t;
using UnixTime = std::chrono::sys_seconds;

/// Uniformly sampled load readings for one zone. Immutable after
/// construction; the constructor enforces the invariants (length >= 2,
/// finite strictly positive loads, positive step).
class LoadSeries {
 public:
  LoadSeries(std::string zone_id, UnixTime start_time, Seconds step,
             std::vector<double> values);

  const std::string& zone_id() const noexcept { return zone_id_; }
  UnixTime start_time() const noexcept { return start_time_; }
  Seconds step() const noexcept { return step_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  UnixTime time_at(std::size_t i) const {
    return start_time_ + std::chrono::seconds(step_ * static_cast<Seconds>(i));
  }

  /// Sample times in seconds relative to start_time.
  std::vector<double> relative_times() const;

  friend bool operator==(const LoadSeries&, const LoadSeries&) = default;

 private:
  std::string zone_id_;
  UnixTime start_time_;
  Seconds step_;
  std::vector<double> values_;
};

struct SeasonalComponent {
  double period_seconds = 86400.0;
  double amplitude_mw = 0.0;
  double phase_radians = 0.0;
};

struct Drift {
  std::size_t onset_index = 0;
  double level_shift_mw = 0.0;
  double amplitude_scale = 1.0;
};

struct SynthConfig {
  std::size_t length = 3906;
  Seconds step = 300;
  double base_level = 500.0;
  std::vector<SeasonalComponent> components;
  double noise_sigma = 0.0;
  std::optional<Drift> drift;
  std::uint64_t seed = 42;
  UnixTime start_time{std::chrono::sys_days{std::chrono::year{2017} / 10 / 16}};
  std::string zone_id = "SYNTH";
};

/// Values below this are clamped when noise would push a sample to zero or
/// below.
inline constexpr double kSynthFloorMw = 1e-3;

/// Zone id -> series. Ordered so every consumer iterates zones identically.
using ZoneMap = std::map<std::string, LoadSeries>;

/// Parses the canonical `timestamp,zone,load_mw` document. Rows may be
/// interleaved across zones and unsorted within a zone.
ZoneMap parse_load_csv(std::string_view text);
ZoneMap read_load_csv(const std::string& path);

/// Serializes series as `timestamp,zone,load_mw` (loads to 6 significant
/// digits), zones in order, time-ascending within a zone.
std::string serialize_load_csv(std::span<const LoadSeries> series);
std::string serialize_load_csv(const ZoneMap& zones);

LoadSeries generate_synthetic(const SynthConfig& config);

/// The noiseless, drift-aware signal the generator adds noise to.
double synthetic_signal(const SynthConfig& config, std::size_t index);

/// values[end_exclusive - length, end_exclusive).
std::span<const double> slice_window(const LoadSeries& series,
                                     std::size_t end_exclusive,
                                     std::size_t length);

std::string format_timestamp(UnixTime t);
UnixTime parse_timestamp(std::string_view text);

}  // namespace swr
