#include "swr/trace.hpp"

#include <charconv>

namespace swr {

std::vector<double> ForecastTrace::actuals() const {
  std::vector<double> v;
  v.reserve(steps.size());
  for (const auto& s : steps) v.push_back(s.actual);
  return v;
}

std::vector<double> ForecastTrace::predictions() const {
  std::vector<double> v;
  v.reserve(steps.size());
  for (const auto& s : steps) v.push_back(s.predicted);
  return v;
}

std::vector<std::size_t> ForecastTrace::batch_sizes() const {
  std::vector<std::size_t> v;
  v.reserve(batches.size());
  for (const auto& b : batches) v.push_back(b.h);
  return v;
}

bool ForecastTrace::all_converged() const {
  for (const auto& b : batches) {
    if (!b.converged) return false;
  }
  return true;
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string steps_csv(const ForecastTrace& trace) {
  std::string out = "index,timestamp,actual_mw,predicted_mw,batch\n";
  for (const auto& s : trace.steps) {
    out += std::to_string(s.index) + ',' + format_timestamp(s.time) + ',' +
           format_double(s.actual) + ',' + format_double(s.predicted) + ',' +
           std::to_string(s.batch) + '\n';
  }
  return out;
}

std::string batches_csv(const ForecastTrace& trace) {
  std::string out = "batch,h,window_samples,mape_pct,converged\n";
  for (const auto& b : trace.batches) {
    out += std::to_string(b.batch) + ',' + std::to_string(b.h) + ',' +
           std::to_string(b.window_samples) + ',' + format_double(b.mape_pct) + ',' +
           (b.converged ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace swr
