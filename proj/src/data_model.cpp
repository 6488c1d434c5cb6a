#include "swr/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "swr/error.hpp"
#include "swr/rng.hpp"

namespace swr {

LoadSeries::LoadSeries(std::string zone_id, UnixTime start_time, Seconds step,
                       std::vector<double> values)
    : zone_id_(std::move(zone_id)),
      start_time_(start_time),
      step_(step),
      values_(std::move(values)) {
  require(step_ > 0, "series step must be positive");
  require(values_.size() >= 2, "series needs at least 2 samples");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      fail(ErrorCode::invalid_argument,
           "load at index " + std::to_string(i) + " of zone '" + zone_id_ +
               "' is not finite and positive");
    }
  }
}

std::vector<double> LoadSeries::relative_times() const {
  std::vector<double> t(values_.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<double>(step_) * static_cast<double>(i);
  }
  return t;
}

namespace {

template <typename T>
bool parse_int(std::string_view s, T& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

struct Row {
  UnixTime time;
  double load;
  std::size_t line;
};

}  // namespace

UnixTime parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SS with optional trailing Z or +00:00.
  std::string_view s = trim(text);
  if (s.ends_with('Z')) {
    s.remove_suffix(1);
  } else if (s.ends_with("+00:00")) {
    s.remove_suffix(6);
  }
  auto bad = [&]() -> UnixTime {
    fail(ErrorCode::parse, "malformed timestamp '" + std::string(text) + "'");
  };
  if (s.size() != 19 || s[4] != '-' || s[7] != '-' ||
      (s[10] != 'T' && s[10] != ' ') || s[13] != ':' || s[16] != ':') {
    return bad();
  }
  int y = 0;
  unsigned mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
  if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), mo) ||
      !parse_int(s.substr(8, 2), d) || !parse_int(s.substr(11, 2), hh) ||
      !parse_int(s.substr(14, 2), mm) || !parse_int(s.substr(17, 2), ss)) {
    return bad();
  }
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59) return bad();
  return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
}

std::string format_timestamp(UnixTime t) {
  using namespace std::chrono;
  const auto days = floor<std::chrono::days>(t);
  const year_month_day ymd{days};
  const hh_mm_ss hms{t - days};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long>(hms.hours().count()),
                static_cast<long>(hms.minutes().count()),
                static_cast<long>(hms.seconds().count()));
  return buf;
}

ZoneMap parse_load_csv(std::string_view text) {
  std::map<std::string, std::vector<Row>> rows;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "timestamp,zone,load_mw") {
        fail(ErrorCode::parse,
             "line " + std::to_string(line_no) +
                 ": expected header 'timestamp,zone,load_mw'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != 3) {
      fail(ErrorCode::parse, where + "expected 3 fields, got " +
                                 std::to_string(fields.size()));
    }
    const auto zone = trim(fields[1]);
    if (zone.empty()) fail(ErrorCode::parse, where + "empty zone");
    UnixTime t;
    try {
      t = parse_timestamp(fields[0]);
    } catch (const Error& e) {
      fail(ErrorCode::parse, where + e.what());
    }
    const auto load_text = trim(fields[2]);
    double load = 0.0;
    auto [p, ec] = std::from_chars(load_text.data(),
                                   load_text.data() + load_text.size(), load);
    if (ec != std::errc{} || p != load_text.data() + load_text.size()) {
      fail(ErrorCode::parse, where + "malformed load '" + std::string(load_text) + "'");
    }
    if (!std::isfinite(load) || load <= 0.0) {
      fail(ErrorCode::parse, where + "load must be finite and positive");
    }
    rows[std::string(zone)].push_back({t, load, line_no});
  }
  if (!header_seen) fail(ErrorCode::parse, "empty document");

  ZoneMap out;
  for (auto& [zone, zr] : rows) {
    std::stable_sort(zr.begin(), zr.end(),
                     [](const Row& a, const Row& b) { return a.time < b.time; });
    for (std::size_t i = 1; i < zr.size(); ++i) {
      if (zr[i].time == zr[i - 1].time) {
        fail(ErrorCode::parse, "line " + std::to_string(zr[i].line) +
                                   ": duplicate timestamp in zone '" + zone + "'");
      }
    }
    if (zr.size() < 2) {
      fail(ErrorCode::parse, "zone '" + zone + "' has fewer than 2 rows");
    }
    const Seconds step = (zr[1].time - zr[0].time).count();
    for (std::size_t i = 2; i < zr.size(); ++i) {
      if ((zr[i].time - zr[i - 1].time).count() != step) {
        fail(ErrorCode::parse, "line " + std::to_string(zr[i].line) +
                                   ": non-uniform spacing in zone '" + zone +
                                   "' (expected step " + std::to_string(step) + " s)");
      }
    }
    std::vector<double> values;
    values.reserve(zr.size());
    for (const auto& r : zr) values.push_back(r.load);
    out.emplace(zone, LoadSeries(zone, zr[0].time, step, std::move(values)));
  }
  return out;
}

ZoneMap read_load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_load_csv(ss.str());
}

std::string serialize_load_csv(std::span<const LoadSeries> series) {
  std::string out = "timestamp,zone,load_mw\n";
  char buf[64];
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.6g", s[i]);
      out += format_timestamp(s.time_at(i));
      out += ',';
      out += s.zone_id();
      out += ',';
      out += buf;
      out += '\n';
    }
  }
  return out;
}

std::string serialize_load_csv(const ZoneMap& zones) {
  std::vector<LoadSeries> all;
  for (const auto& [_, s] : zones) all.push_back(s);
  return serialize_load_csv(all);
}

namespace {

void check_config(const SynthConfig& c) {
  require(c.length >= 2, "synthetic length must be >= 2");
  require(c.step > 0, "synthetic step must be positive");
  require(c.noise_sigma >= 0.0 && std::isfinite(c.noise_sigma),
          "noise sigma must be >= 0");
  double total_amp = 0.0;
  for (const auto& comp : c.components) {
    require(comp.amplitude_mw >= 0.0, "amplitudes must be >= 0");
    require(comp.period_seconds > 0.0, "component periods must be positive");
    total_amp += comp.amplitude_mw;
  }
  if (c.drift) {
    total_amp *= std::max(1.0, c.drift->amplitude_scale);
    require(c.drift->amplitude_scale >= 0.0, "drift amplitude scale must be >= 0");
  }
  const double floor_level =
      c.base_level + (c.drift ? std::min(0.0, c.drift->level_shift_mw) : 0.0);
  require(floor_level - total_amp - 6.0 * c.noise_sigma > 0.0,
          "base level too low for the configured amplitudes and noise");
}

}  // namespace

double synthetic_signal(const SynthConfig& c, std::size_t index) {
  const bool drifted = c.drift && index >= c.drift->onset_index;
  const double scale = drifted ? c.drift->amplitude_scale : 1.0;
  const double t = static_cast<double>(c.step) * static_cast<double>(index);
  double v = c.base_level + (drifted ? c.drift->level_shift_mw : 0.0);
  for (const auto& comp : c.components) {
    v += scale * comp.amplitude_mw *
         std::sin(2.0 * std::numbers::pi * t / comp.period_seconds + comp.phase_radians);
  }
  return v;
}

LoadSeries generate_synthetic(const SynthConfig& config) {
  check_config(config);
  Rng rng(config.seed);
  std::vector<double> values(config.length);
  for (std::size_t i = 0; i < config.length; ++i) {
    // Always draw, so the noise stream does not depend on noise_sigma.
    const double z = rng.normal();
    values[i] = std::max(kSynthFloorMw, synthetic_signal(config, i) + config.noise_sigma * z);
  }
  return LoadSeries(config.zone_id, config.start_time, config.step, std::move(values));
}

std::span<const double> slice_window(const LoadSeries& series,
                                     std::size_t end_exclusive, std::size_t length) {
  if (length == 0 || length > end_exclusive || end_exclusive > series.size()) {
    fail(ErrorCode::invalid_argument,
         "window [" + std::to_string(end_exclusive) + " - " + std::to_string(length) +
             ", " + std::to_string(end_exclusive) + ") out of range for series of " +
             std::to_string(series.size()) + " samples");
  }
  return series.values().subspan(end_exclusive - length, length);
}

}  // namespace swr
