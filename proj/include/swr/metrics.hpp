#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "swr/trace.hpp"

namespace swr {

/// 100 * mean(|a - p| / a). Actuals must be strictly positive.
double mape(std::span<const double> actual, std::span<const double> predicted);
double mae(std::span<const double> actual, std::span<const double> predicted);
double rmse(std::span<const double> actual, std::span<const double> predicted);
double rmspe(std::span<const double> actual, std::span<const double> predicted);
/// Percentage of steps whose relative error is within tau percent.
double acper(std::span<const double> actual, std::span<const double> predicted, double tau_pct);

inline constexpr double kDefaultAcperTau = 5.0;

struct MetricRow {
  std::string model;
  std::string protocol;
  double mape_pct = 0.0;
  double mae_mw = 0.0;
  double rmse_mw = 0.0;
  double rmspe_pct = 0.0;
  double acper_pct = 0.0;
  std::size_t n = 0;
};

struct MetricReport {
  std::vector<MetricRow> rows;  // ascending MAPE
  std::size_t n = 0;
};

/// Scores step-aligned traces over all evaluated steps.
MetricReport compare_report(std::span<const ForecastTrace> traces,
                            double acper_tau = kDefaultAcperTau);

/// `model,protocol,mape_pct,mae_mw,rmse_mw,rmspe_pct,acper_pct,n`
std::string report_csv(const MetricReport& report);

/// MAPE over steps with index >= first_index.
double trace_mape_from(const ForecastTrace& trace, std::size_t first_index);

}  // namespace swr
