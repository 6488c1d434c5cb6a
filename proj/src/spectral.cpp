#include "swr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swr/error.hpp"

namespace swr {

FrequencyGrid build_freq_grid(std::size_t n_samples, Seconds step, double oversampling) {
  require(oversampling >= 1.0, "oversampling must be >= 1");
  require(step > 0, "step must be positive");
  if (n_samples < 2) fail(ErrorCode::insufficient_data, "frequency grid needs >= 2 samples");
  const double span = static_cast<double>(n_samples - 1) * static_cast<double>(step);
  FrequencyGrid g;
  g.oversampling = oversampling;
  g.f_max = 1.0 / (2.0 * static_cast<double>(step));
  g.spacing = 1.0 / (oversampling * span);
  // Small slack so f_max itself survives rounding when it is a grid point.
  const auto count = static_cast<std::size_t>(std::floor(g.f_max / g.spacing * (1.0 + 1e-12)));
  if (count == 0) {
    fail(ErrorCode::insufficient_data,
         "series span too short for a frequency grid at this oversampling");
  }
  g.frequencies.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    g.frequencies[j] = static_cast<double>(j + 1) * g.spacing;
  }
  return g;
}

FrequencyGrid build_freq_grid(const LoadSeries& series, double oversampling) {
  return build_freq_grid(series.size(), series.step(), oversampling);
}

std::size_t Periodogram::argmax() const {
  return static_cast<std::size_t>(std::max_element(power.begin(), power.end()) -
                                  power.begin());
}

namespace {

struct Moments {
  double mean_t = 0.0;
  double mean_y = 0.0;
  double variance = 0.0;
};

std::optional<Moments> moments(std::span<const double> times, std::span<const double> values) {
  require(times.size() == values.size(), "times and values differ in length");
  if (values.size() < 3) fail(ErrorCode::insufficient_data, "periodogram needs >= 3 samples");
  for (std::size_t i = 1; i < times.size(); ++i) {
    require(times[i] > times[i - 1], "times must be strictly increasing");
  }
  const double n = static_cast<double>(values.size());
  Moments m;
  for (std::size_t i = 0; i < values.size(); ++i) {
    m.mean_t += times[i];
    m.mean_y += values[i];
  }
  m.mean_t /= n;
  m.mean_y /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean_y) * (v - m.mean_y);
  m.variance = ss / (n - 1.0);
  // Relative test so rounding noise in a constant series reads as constant.
  if (!(m.variance > 1e-24 * std::max(1.0, m.mean_y * m.mean_y))) return std::nullopt;
  return m;
}

double power_at(std::span<const double> times, std::span<const double> values,
                const Moments& m, double frequency) {
  const double omega = 2.0 * std::numbers::pi * frequency;
  double s2 = 0.0, c2 = 0.0;
  for (double t : times) {
    const double arg = 2.0 * omega * (t - m.mean_t);
    s2 += std::sin(arg);
    c2 += std::cos(arg);
  }
  const double tau = std::atan2(s2, c2) / (2.0 * omega);
  double yc = 0.0, ys = 0.0, cc = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double arg = omega * (times[i] - m.mean_t - tau);
    const double c = std::cos(arg);
    const double s = std::sin(arg);
    const double dy = values[i] - m.mean_y;
    yc += dy * c;
    ys += dy * s;
    cc += c * c;
    ss += s * s;
  }
  // A vanishing quadrature term (e.g. at the Nyquist frequency of a uniform
  // grid) carries no power.
  const double scale = static_cast<double>(times.size()) * 1e-12;
  double p = 0.0;
  if (cc > scale) p += yc * yc / cc;
  if (ss > scale) p += ys * ys / ss;
  return p / (2.0 * m.variance);
}

}  // namespace

std::optional<double> lomb_scargle_power(std::span<const double> times,
                                         std::span<const double> values, double frequency) {
  require(frequency > 0.0, "frequency must be positive");
  const auto m = moments(times, values);
  if (!m) return std::nullopt;
  return power_at(times, values, *m, frequency);
}

std::optional<Periodogram> lomb_scargle_direct(std::span<const double> times,
                                               std::span<const double> values,
                                               const FrequencyGrid& grid) {
  const auto m = moments(times, values);
  if (!m) return std::nullopt;
  require(!grid.frequencies.empty(), "empty frequency grid");
  Periodogram pg;
  pg.grid = grid;
  pg.n_samples = values.size();
  pg.n_independent = std::max(
      1.0, static_cast<double>(grid.frequencies.size()) / grid.oversampling);
  pg.power.resize(grid.frequencies.size());
  for (std::size_t j = 0; j < grid.frequencies.size(); ++j) {
    pg.power[j] = power_at(times, values, *m, grid.frequencies[j]);
  }
  return pg;
}

double false_alarm_probability(double peak_power, double n_independent) {
  require(peak_power >= 0.0, "peak power must be >= 0");
  require(n_independent >= 1.0, "M must be >= 1");
  // 1 - (1 - e^-z)^M evaluated as -expm1(M * log1p(-e^-z)) to keep small
  // probabilities accurate.
  const double e = std::exp(-peak_power);
  if (e >= 1.0) return 1.0;
  return std::clamp(-std::expm1(n_independent * std::log1p(-e)), 0.0, 1.0);
}

namespace {

/// Golden-section search for the power maximum on [lo, hi].
double refine_peak(std::span<const double> times, std::span<const double> values,
                   const Moments& m, double lo, double hi) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = power_at(times, values, m, c);
  double fd = power_at(times, values, m, d);
  for (int it = 0; it < 80 && (b - a) > 1e-14 * b; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = power_at(times, values, m, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = power_at(times, values, m, d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

WindowSizing training_window_size(std::span<const double> history, Seconds step,
                                  const SizingConfig& cfg) {
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "alpha must lie in (0, 1)");
  require(cfg.multiplier > 0.0, "period multiplier must be positive");
  require(cfg.min_window >= 1, "min window must be >= 1");
  if (history.size() < 3) {
    fail(ErrorCode::insufficient_data, "window sizing needs >= 3 samples");
  }
  if (cfg.history_cap > 0 && history.size() > cfg.history_cap) {
    history = history.subspan(history.size() - cfg.history_cap);
  }
  const std::size_t max_window = cfg.max_window > 0 ? cfg.max_window : history.size();
  require(max_window >= cfg.min_window, "max window below min window");
  auto clamp_window = [&](double w) {
    const double c = std::clamp(w, static_cast<double>(cfg.min_window),
                                static_cast<double>(max_window));
    return static_cast<std::size_t>(std::llround(c));
  };

  WindowSizing out;
  out.window_samples = clamp_window(static_cast<double>(cfg.fallback_samples));

  std::vector<double> times(history.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    times[i] = static_cast<double>(step) * static_cast<double>(i);
  }
  const auto m = moments(times, history);
  if (!m) return out;

  const auto grid = build_freq_grid(history.size(), step, cfg.oversampling);
  const auto pg = lomb_scargle_direct(times, history, grid);
  const std::size_t j = pg->argmax();
  double f_peak = grid.frequencies[j];
  if (cfg.refine_peak) {
    const double lo = std::max(0.5 * grid.spacing, f_peak - grid.spacing);
    const double hi = std::min(grid.f_max, f_peak + grid.spacing);
    if (hi > lo) f_peak = refine_peak(times, history, *m, lo, hi);
  }
  out.dominant_period_seconds = 1.0 / f_peak;
  out.false_alarm_prob = false_alarm_probability(pg->power[j], pg->n_independent);
  out.significant = out.false_alarm_prob < cfg.alpha;
  if (out.significant) {
    out.window_samples =
        clamp_window(cfg.multiplier * *out.dominant_period_seconds / static_cast<double>(step));
  }
  return out;
}

WindowSizing training_window_size(const LoadSeries& series, const SizingConfig& cfg) {
  return training_window_size(series.values(), series.step(), cfg);
}

}  // namespace swr
