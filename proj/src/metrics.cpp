#include "swr/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "swr/error.hpp"

namespace swr {

namespace {

void check_pair(std::span<const double> a, std::span<const double> p, bool positive) {
  if (a.size() != p.size()) {
    fail(ErrorCode::invalid_argument, "actual and predicted differ in length (" +
                                          std::to_string(a.size()) + " vs " +
                                          std::to_string(p.size()) + ")");
  }
  if (a.empty()) fail(ErrorCode::invalid_argument, "metrics need at least one step");
  if (positive) {
    for (double v : a) {
      if (!(v > 0.0)) fail(ErrorCode::invalid_argument, "actual loads must be positive");
    }
  }
}

}  // namespace

double mape(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted, true);
  double s = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    s += std::abs(actual[i] - predicted[i]) / actual[i];
  }
  return 100.0 * s / static_cast<double>(actual.size());
}

double mae(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted, false);
  double s = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(actual[i] - predicted[i]);
  return s / static_cast<double>(actual.size());
}

double rmse(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted, false);
  double s = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = actual[i] - predicted[i];
    s += e * e;
  }
  return std::sqrt(s / static_cast<double>(actual.size()));
}

double rmspe(std::span<const double> actual, std::span<const double> predicted) {
  check_pair(actual, predicted, true);
  double s = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = (actual[i] - predicted[i]) / actual[i];
    s += e * e;
  }
  return 100.0 * std::sqrt(s / static_cast<double>(actual.size()));
}

double acper(std::span<const double> actual, std::span<const double> predicted,
             double tau_pct) {
  require(tau_pct > 0.0, "ACPER threshold must be positive");
  check_pair(actual, predicted, true);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double rel = 100.0 * std::abs(actual[i] - predicted[i]) / actual[i];
    if (rel <= tau_pct * (1.0 + 1e-12)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(actual.size());
}

MetricReport compare_report(std::span<const ForecastTrace> traces, double acper_tau) {
  require(!traces.empty(), "report needs at least one trace");
  const auto& ref = traces.front().steps;
  for (const auto& t : traces) {
    bool aligned = t.steps.size() == ref.size();
    for (std::size_t i = 0; aligned && i < ref.size(); ++i) {
      aligned = t.steps[i].index == ref[i].index;
    }
    if (!aligned) {
      fail(ErrorCode::invalid_argument,
           "trace '" + t.model + "/" + t.protocol + "' is not step-aligned with '" +
               traces.front().model + "/" + traces.front().protocol + "'");
    }
  }
  MetricReport report;
  report.n = ref.size();
  for (const auto& t : traces) {
    const auto a = t.actuals();
    const auto p = t.predictions();
    MetricRow row;
    row.model = t.model;
    row.protocol = t.protocol;
    row.mape_pct = mape(a, p);
    row.mae_mw = mae(a, p);
    row.rmse_mw = rmse(a, p);
    row.rmspe_pct = rmspe(a, p);
    row.acper_pct = acper(a, p, acper_tau);
    row.n = a.size();
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const MetricRow& x, const MetricRow& y) { return x.mape_pct < y.mape_pct; });
  return report;
}

std::string report_csv(const MetricReport& report) {
  std::string out = "model,protocol,mape_pct,mae_mw,rmse_mw,rmspe_pct,acper_pct,n\n";
  for (const auto& r : report.rows) {
    out += r.model + ',' + r.protocol + ',' + format_double(r.mape_pct) + ',' +
           format_double(r.mae_mw) + ',' + format_double(r.rmse_mw) + ',' +
           format_double(r.rmspe_pct) + ',' + format_double(r.acper_pct) + ',' +
           std::to_string(r.n) + '\n';
  }
  return out;
}

double trace_mape_from(const ForecastTrace& trace, std::size_t first_index) {
  std::vector<double> a, p;
  for (const auto& s : trace.steps) {
    if (s.index >= first_index) {
      a.push_back(s.actual);
      p.push_back(s.predicted);
    }
  }
  return mape(a, p);
}

}  // namespace swr
