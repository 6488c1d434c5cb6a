#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "swr/data_model.hpp"
#include "swr/error.hpp"
#include "swr/rng.hpp"

using namespace swr;

namespace {

const char* kHeader = "timestamp,zone,load_mw\n";

ErrorCode code_of(const std::string& text) {
  try {
    parse_load_csv(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse failure");
  return ErrorCode::io;
}

SynthConfig daily(double noise = 0.0) {
  SynthConfig c;
  c.components = {{86400.0, 50.0, 0.0}};
  c.noise_sigma = noise;
  return c;
}

}  // namespace

TEST_CASE("csv: three uniform rows") {
  const auto zones = parse_load_csv(std::string(kHeader) +
                                    "2017-10-16T00:00:00Z,CAPITL,100\n"
                                    "2017-10-16T00:05:00Z,CAPITL,101\n"
                                    "2017-10-16T00:10:00Z,CAPITL,102\n");
  REQUIRE(zones.size() == 1);
  const auto& s = zones.at("CAPITL");
  CHECK(s.step() == 300);
  CHECK(std::vector<double>(s.values().begin(), s.values().end()) ==
        std::vector<double>{100, 101, 102});
  CHECK(format_timestamp(s.start_time()) == "2017-10-16T00:00:00Z");
}

TEST_CASE("csv: unsorted rows are sorted per zone") {
  const auto zones = parse_load_csv(std::string(kHeader) +
                                    "2017-10-16T00:10:00Z,A,3\n"
                                    "2017-10-16T00:00:00Z,A,1\n"
                                    "2017-10-16T00:05:00Z,A,2\n");
  const auto v = zones.at("A").values();
  CHECK(std::vector<double>(v.begin(), v.end()) == std::vector<double>{1, 2, 3});
}

TEST_CASE("csv: non-uniform spacing is rejected") {
  CHECK(code_of(std::string(kHeader) +
                "2017-10-16T00:00:00Z,A,1\n"
                "2017-10-16T00:07:00Z,A,2\n"
                "2017-10-16T00:10:00Z,A,2\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) +
                "2017-10-16T00:00:00Z,A,1\n"
                "2017-10-16T00:05:00Z,A,2\n"
                "2017-10-16T00:12:00Z,A,3\n") == ErrorCode::parse);
}

TEST_CASE("csv: interleaved zones partition independently") {
  const auto zones = parse_load_csv(std::string(kHeader) +
                                    "2017-10-16T00:00:00Z,A,10\n"
                                    "2017-10-16T00:00:00Z,B,200\n"
                                    "2017-10-16T00:05:00Z,A,11\n"
                                    "2017-10-16T01:00:00Z,B,201\n"
                                    "2017-10-16T00:10:00Z,A,12\n"
                                    "2017-10-16T02:00:00Z,B,202\n");
  REQUIRE(zones.size() == 2);
  const auto& a = zones.at("A");
  const auto& b = zones.at("B");
  CHECK(a.step() == 300);
  CHECK(b.step() == 3600);
  CHECK(std::vector<double>(a.values().begin(), a.values().end()) ==
        std::vector<double>{10, 11, 12});
  CHECK(std::vector<double>(b.values().begin(), b.values().end()) ==
        std::vector<double>{200, 201, 202});
}

TEST_CASE("csv: malformed input") {
  CHECK(code_of("time,zone,load\n2017-10-16T00:00:00Z,A,1\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) + "2017-10-16T00:00:00Z,A\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) + "yesterday,A,1\n2017-10-16T00:05:00Z,A,1\n") ==
        ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) + "2017-10-16T00:00:00Z,A,abc\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) +
                "2017-10-16T00:00:00Z,A,0\n2017-10-16T00:05:00Z,A,1\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) +
                "2017-10-16T00:00:00Z,A,-3\n2017-10-16T00:05:00Z,A,1\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) +
                "2017-10-16T00:00:00Z,A,nan\n2017-10-16T00:05:00Z,A,1\n") == ErrorCode::parse);
  CHECK(code_of(std::string(kHeader) +
                "2017-10-16T00:00:00Z,A,1\n2017-10-16T00:00:00Z,A,2\n") == ErrorCode::parse);
}

TEST_CASE("csv: error message carries the line number") {
  try {
    parse_load_csv(std::string(kHeader) + "2017-10-16T00:00:00Z,A,1\n2017-10-16T00:05:00Z,A,x\n");
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("csv: missing file is an io error") {
  try {
    read_load_csv("/nonexistent/load.csv");
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}

TEST_CASE("synth: analytic daily sinusoid") {
  const auto s = generate_synthetic(daily());
  REQUIRE(s.size() == 3906);
  CHECK(s[0] == 500.0);
  CHECK(s[72] == 550.0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expect = 500.0 + 50.0 * std::sin(2 * std::numbers::pi * (i * 300.0) / 86400.0);
    REQUIRE(std::abs(s[i] - expect) <= 1e-9);
  }
}

TEST_CASE("synth: sum of components and drift") {
  SynthConfig c;
  c.length = 5000;
  c.components = {{86400.0, 50.0, 0.3}, {604800.0, 20.0, 1.1}};
  c.drift = Drift{2500, 100.0, 1.5};
  const auto s = generate_synthetic(c);
  for (std::size_t i = 0; i < s.size(); i += 7) {
    const double t = i * 300.0;
    const double scale = i >= 2500 ? 1.5 : 1.0;
    double expect = 500.0 + (i >= 2500 ? 100.0 : 0.0);
    expect += scale * 50.0 * std::sin(2 * std::numbers::pi * t / 86400.0 + 0.3);
    expect += scale * 20.0 * std::sin(2 * std::numbers::pi * t / 604800.0 + 1.1);
    REQUIRE(std::abs(s[i] - expect) <= 1e-9);
  }
}

TEST_CASE("synth: deterministic for a fixed seed") {
  const auto a = generate_synthetic(daily(10.0));
  const auto b = generate_synthetic(daily(10.0));
  CHECK(a == b);
  auto other = daily(10.0);
  other.seed = 43;
  CHECK_FALSE(generate_synthetic(other) == a);
}

TEST_CASE("synth: noise has the configured standard deviation") {
  auto c = daily(10.0);
  c.length = 10000;
  const auto s = generate_synthetic(c);
  double sum = 0, sum2 = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = s[i] - synthetic_signal(c, i);
    sum += r;
    sum2 += r * r;
  }
  const double n = static_cast<double>(s.size());
  const double sd = std::sqrt((sum2 - sum * sum / n) / (n - 1));
  CHECK(sd == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("synth: configurations that could go non-positive are rejected") {
  SynthConfig c;
  c.base_level = 100.0;
  c.components = {{86400.0, 60.0, 0.0}};
  c.noise_sigma = 7.0;
  CHECK_THROWS_AS(generate_synthetic(c), Error);
  c.noise_sigma = 6.0;
  const auto s = generate_synthetic(c);
  for (double v : s.values()) REQUIRE(v >= kSynthFloorMw);
  c.length = 1;
  CHECK_THROWS_AS(generate_synthetic(c), Error);
}

TEST_CASE("series: invariants are enforced") {
  const UnixTime t0{};
  CHECK_THROWS_AS(LoadSeries("A", t0, 300, {1.0}), Error);
  CHECK_THROWS_AS(LoadSeries("A", t0, 0, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(LoadSeries("A", t0, 300, {1.0, 0.0}), Error);
  CHECK_THROWS_AS(LoadSeries("A", t0, 300, {1.0, std::nan("")}), Error);
  CHECK_NOTHROW(LoadSeries("A", t0, 300, {1.0, 2.0}));
}

TEST_CASE("slice_window") {
  const LoadSeries s("A", UnixTime{}, 300, {1, 2, 3, 4, 5});
  const auto a = slice_window(s, 5, 2);
  CHECK(std::vector<double>(a.begin(), a.end()) == std::vector<double>{4, 5});
  const auto b = slice_window(s, 3, 3);
  CHECK(std::vector<double>(b.begin(), b.end()) == std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(slice_window(s, 2, 3), Error);
  CHECK_THROWS_AS(slice_window(s, 6, 1), Error);
  CHECK_THROWS_AS(slice_window(s, 3, 0), Error);
}

TEST_CASE("timestamps") {
  const auto t = parse_timestamp("2017-10-16T00:05:00Z");
  CHECK(t.time_since_epoch().count() == 1508112300);
  CHECK(parse_timestamp("2017-10-16 00:05:00") == t);
  CHECK(parse_timestamp("2017-10-16T00:05:00+00:00") == t);
  CHECK(format_timestamp(t) == "2017-10-16T00:05:00Z");
  CHECK_THROWS_AS(parse_timestamp("2017-13-01T00:00:00Z"), Error);
  CHECK_THROWS_AS(parse_timestamp("2017-10-16T00:05"), Error);
}

TEST_CASE("property: serialize then parse is the identity") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<LoadSeries> zones;
    const std::size_t nz = 1 + rng.below(3);
    for (std::size_t z = 0; z < nz; ++z) {
      const std::size_t n = 2 + rng.below(40);
      const Seconds step = 60 * static_cast<Seconds>(1 + rng.below(60));
      std::vector<double> v(n);
      for (auto& x : v) {
        // Six significant digits survive the text form exactly.
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", 1.0 + rng.uniform() * 2000.0);
        x = std::stod(buf);
      }
      const UnixTime start{std::chrono::seconds(1500000000 + 300 * rng.below(1000))};
      zones.emplace_back("Z" + std::to_string(z), start, step, std::move(v));
    }
    const auto back = parse_load_csv(serialize_load_csv(zones));
    REQUIRE(back.size() == zones.size());
    for (const auto& s : zones) REQUIRE(back.at(s.zone_id()) == s);
  }
}
