#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "swr/data_model.hpp"
#include "swr/error.hpp"
#include "swr/rng.hpp"
#include "swr/spectral.hpp"

using namespace swr;

namespace {

struct Fixture {
  std::vector<double> t;
  std::vector<double> y;
};

Fixture sines(std::size_t n, std::vector<std::pair<double, double>> parts, double noise = 0.0,
              std::uint64_t seed = 1) {
  Fixture f;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 300.0 * static_cast<double>(i);
    double v = 500.0;
    for (auto [period, amp] : parts) v += amp * std::sin(2 * std::numbers::pi * t / period);
    f.t.push_back(t);
    f.y.push_back(v + noise * rng.normal());
  }
  return f;
}

Periodogram periodogram(const Fixture& f, double ofac = 4.0) {
  const auto grid = build_freq_grid(f.t.size(), 300, ofac);
  auto pg = lomb_scargle_direct(f.t, f.y, grid);
  REQUIRE(pg.has_value());
  return *pg;
}

}  // namespace

TEST_CASE("grid: 1000 samples at 300 s") {
  const auto g = build_freq_grid(1000, 300, 4.0);
  CHECK(g.frequencies.front() == doctest::Approx(1.0 / (4.0 * 299700.0)).epsilon(1e-12));
  CHECK(g.frequencies.back() <= 1.0 / 600.0 * (1 + 1e-12));
  CHECK(g.frequencies.back() + g.spacing > 1.0 / 600.0);
  for (std::size_t j = 1; j < g.frequencies.size(); ++j) {
    REQUIRE(g.frequencies[j] > g.frequencies[j - 1]);
    REQUIRE(g.frequencies[j] - g.frequencies[j - 1] == doctest::Approx(g.spacing).epsilon(1e-9));
  }
}

TEST_CASE("grid: boundaries") {
  CHECK_THROWS_AS(build_freq_grid(1, 300, 4.0), Error);
  CHECK_THROWS_AS(build_freq_grid(2, 300, 1.0), Error);
  const auto g = build_freq_grid(3, 300, 1.0);
  REQUIRE(g.frequencies.size() == 1);
  CHECK(g.frequencies[0] == doctest::Approx(1.0 / 600.0));
  CHECK_THROWS_AS(build_freq_grid(100, 300, 0.5), Error);
}

TEST_CASE("direct: pure daily sine peaks at the nearest grid frequency") {
  const auto f = sines(2000, {{86400.0, 50.0}});
  const auto pg = periodogram(f);
  const auto& fr = pg.grid.frequencies;
  std::size_t nearest = 0;
  for (std::size_t j = 0; j < fr.size(); ++j) {
    if (std::abs(fr[j] - 1.0 / 86400.0) < std::abs(fr[nearest] - 1.0 / 86400.0)) nearest = j;
  }
  CHECK(pg.argmax() == nearest);
  CHECK(pg.power.size() == fr.size());
  CHECK(pg.n_independent == doctest::Approx(fr.size() / 4.0));
  for (double p : pg.power) REQUIRE((std::isfinite(p) && p >= 0.0));
}

TEST_CASE("direct: constant series reports no periodicity") {
  Fixture f;
  for (int i = 0; i < 100; ++i) {
    f.t.push_back(300.0 * i);
    f.y.push_back(420.0);
  }
  const auto grid = build_freq_grid(100, 300, 4.0);
  CHECK_FALSE(lomb_scargle_direct(f.t, f.y, grid).has_value());
  CHECK_FALSE(lomb_scargle_power(f.t, f.y, grid.frequencies[3]).has_value());
}

TEST_CASE("direct: matches the brute-force Lomb oracle") {
  const auto f = sines(700, {{86400.0, 50.0}, {604800.0, 20.0}}, 5.0);
  const auto pg = periodogram(f);
  for (std::size_t j = 0; j < pg.power.size(); j += 11) {
    REQUIRE(pg.power[j] ==
            doctest::Approx(oracle::lomb_power(f.t, f.y, pg.grid.frequencies[j])).epsilon(1e-8));
  }
}

TEST_CASE("direct: two sines give peak ordering by amplitude") {
  const auto f = sines(3906, {{86400.0, 50.0}, {604800.0, 20.0}});
  const double p_day = oracle::lomb_power(f.t, f.y, 1.0 / 86400.0);
  const double p_week = oracle::lomb_power(f.t, f.y, 1.0 / 604800.0);
  CHECK(p_day > p_week);
  CHECK(*lomb_scargle_power(f.t, f.y, 1.0 / 86400.0) == doctest::Approx(p_day).epsilon(1e-8));
  CHECK(*lomb_scargle_power(f.t, f.y, 1.0 / 604800.0) == doctest::Approx(p_week).epsilon(1e-8));

  const auto pg = periodogram(f);
  const auto& fr = pg.grid.frequencies;
  auto local_peak_near = [&](double target) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < fr.size(); ++j) {
      if (std::abs(fr[j] - target) < 2 * pg.grid.spacing && pg.power[j] > pg.power[best]) best = j;
    }
    return best;
  };
  const std::size_t jd = local_peak_near(1.0 / 86400.0);
  const std::size_t jw = local_peak_near(1.0 / 604800.0);
  CHECK(pg.power[jd] > pg.power[jd - 1]);
  CHECK(pg.power[jd] > pg.power[jd + 1]);
  CHECK(pg.power[jw] > pg.power[jw + 1]);
  CHECK(pg.argmax() == jd);
}

TEST_CASE("property: affine invariance of normalized power") {
  const auto f = sines(500, {{86400.0, 50.0}}, 3.0, 9);
  const auto grid = build_freq_grid(500, 300, 4.0);
  const auto base = *lomb_scargle_direct(f.t, f.y, grid);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{2.0, 0.0}, {-0.5, 1000.0}, {3.7, -20.0}}) {
    auto g = f;
    for (auto& v : g.y) v = a * v + b;
    const auto pg = *lomb_scargle_direct(g.t, g.y, grid);
    for (std::size_t j = 0; j < pg.power.size(); ++j) {
      REQUIRE(std::abs(pg.power[j] - base.power[j]) <= 1e-9 * std::max(1.0, base.power[j]));
    }
  }
}

TEST_CASE("property: time-shift invariance") {
  const auto f = sines(500, {{86400.0, 50.0}}, 3.0, 11);
  const auto grid = build_freq_grid(500, 300, 4.0);
  const auto base = *lomb_scargle_direct(f.t, f.y, grid);
  auto g = f;
  for (auto& t : g.t) t += 1.5e6;
  const auto pg = *lomb_scargle_direct(g.t, g.y, grid);
  for (std::size_t j = 0; j < pg.power.size(); ++j) {
    REQUIRE(std::abs(pg.power[j] - base.power[j]) <= 1e-9 * std::max(1.0, base.power[j]));
  }
}

TEST_CASE("property: peak power bound on a noiseless sine") {
  // 2016 samples is exactly 7 days, so 1/86400 is on the grid.
  const auto f = sines(2017, {{86400.0, 50.0}});
  const auto pg = periodogram(f);
  double mean = 0, var = 0;
  for (double v : f.y) mean += v;
  mean /= f.y.size();
  for (double v : f.y) var += (v - mean) * (v - mean);
  var /= (f.y.size() - 1);
  const double n = static_cast<double>(f.y.size());
  CHECK(pg.power[pg.argmax()] > 0.9 * (n / 2.0) * (50.0 * 50.0 / 2.0) / var);
}

TEST_CASE("false alarm probability") {
  CHECK(false_alarm_probability(0.0, 5.0) == 1.0);
  CHECK(false_alarm_probability(1e6, 5.0) == 0.0);
  CHECK(false_alarm_probability(10.0, 1000.0) ==
        doctest::Approx(0.04438575843418842838).epsilon(1e-12));
  CHECK(false_alarm_probability(30.0, 100.0) ==
        doctest::Approx(9.357622968796829876e-12).epsilon(1e-9));
  CHECK(false_alarm_probability(0.5, 3.0) == doctest::Approx(0.93908381577200313).epsilon(1e-12));
  double prev = 1.0;
  for (double z = 0.0; z < 40.0; z += 0.5) {
    const double p = false_alarm_probability(z, 200.0);
    REQUIRE(p <= prev);
    REQUIRE(p >= 0.0);
    prev = p;
  }
}

TEST_CASE("window sizing: daily cycle") {
  SynthConfig c;
  c.length = 2000;
  c.components = {{86400.0, 50.0, 0.0}};
  const auto s = generate_synthetic(c);
  SizingConfig cfg;
  const auto w = training_window_size(s, cfg);
  CHECK(w.significant);
  CHECK(w.false_alarm_prob < 0.01);
  CHECK(w.window_samples == 288);
  REQUIRE(w.dominant_period_seconds.has_value());
  CHECK(*w.dominant_period_seconds == doctest::Approx(86400.0).epsilon(1e-3));
  cfg.multiplier = 2.0;
  CHECK(training_window_size(s, cfg).window_samples == 576);
}

TEST_CASE("window sizing: constant series falls back") {
  const LoadSeries s("C", UnixTime{}, 300, std::vector<double>(1000, 300.0));
  SizingConfig cfg;
  cfg.fallback_samples = 300;
  const auto w = training_window_size(s, cfg);
  CHECK_FALSE(w.significant);
  CHECK_FALSE(w.dominant_period_seconds.has_value());
  CHECK(w.window_samples == 300);
}

TEST_CASE("window sizing: white noise is not significant") {
  Rng rng(5);
  std::vector<double> v(1500);
  for (auto& x : v) x = 500.0 + 10.0 * rng.normal();
  const auto w = training_window_size(v, 300, SizingConfig{});
  CHECK_FALSE(w.significant);
  CHECK(w.window_samples == 288);
}

TEST_CASE("property: window always within bounds") {
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 200 + rng.below(600);
    const double period = 3000.0 + rng.uniform() * 200000.0;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = 500 + 40 * std::sin(2 * std::numbers::pi * 300.0 * i / period) + 5 * rng.normal();
    }
    SizingConfig cfg;
    cfg.min_window = 30 + rng.below(40);
    cfg.max_window = rng.below(2) ? 0 : cfg.min_window + rng.below(300);
    cfg.multiplier = 0.5 + rng.uniform() * 2;
    const auto w = training_window_size(v, 300, cfg);
    const std::size_t hi = cfg.max_window > 0 ? cfg.max_window : n;
    REQUIRE(w.window_samples >= cfg.min_window);
    REQUIRE(w.window_samples <= hi);
  }
}

TEST_CASE("window sizing: history cap analyses the trailing samples") {
  std::vector<double> v(3000);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double period = i < 1500 ? 100.0 : 288.0;
    v[i] = 500.0 + 50.0 * std::sin(2 * std::numbers::pi * static_cast<double>(i) / period);
  }
  SizingConfig cfg;
  cfg.history_cap = 1000;
  CHECK(training_window_size(v, 300, cfg).window_samples == 288);
  cfg.history_cap = 0;
  CHECK(training_window_size(std::span<const double>(v).first(1500), 300, cfg).window_samples == 100);
}
