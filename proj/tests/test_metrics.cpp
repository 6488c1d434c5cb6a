#include <doctest.h>

#include <cmath>
#include <vector>

#include "swr/error.hpp"
#include "swr/metrics.hpp"
#include "swr/rng.hpp"

using namespace swr;

namespace {

ForecastTrace trace_of(const std::string& model, const std::vector<double>& a,
                       const std::vector<double>& p) {
  ForecastTrace t;
  t.zone = "Z";
  t.model = model;
  t.protocol = "train-once";
  for (std::size_t i = 0; i < a.size(); ++i) t.steps.push_back({100 + i, UnixTime{}, a[i], p[i], i / 2});
  return t;
}

}  // namespace

TEST_CASE("mape: examples") {
  CHECK(std::abs(mape(std::vector<double>{100, 200}, std::vector<double>{110, 190}) - 7.5) <= 1e-12);
  CHECK(mape(std::vector<double>{3, 4}, std::vector<double>{3, 4}) == 0.0);
  CHECK(mape(std::vector<double>{50}, std::vector<double>{75}) == 50.0);
}

TEST_CASE("mape: precondition failures") {
  CHECK_THROWS_AS(mape(std::vector<double>{}, std::vector<double>{}), Error);
  CHECK_THROWS_AS(mape(std::vector<double>{1, 2}, std::vector<double>{1}), Error);
  CHECK_THROWS_AS(mape(std::vector<double>{0, 2}, std::vector<double>{1, 2}), Error);
  CHECK_THROWS_AS(rmspe(std::vector<double>{-1}, std::vector<double>{1}), Error);
  CHECK_THROWS_AS(acper(std::vector<double>{1}, std::vector<double>{1}, 0.0), Error);
}

TEST_CASE("mae, rmse, rmspe") {
  const std::vector<double> a{100, 200}, p{97, 204};
  CHECK(mae(a, p) == 3.5);
  CHECK(rmse(a, p) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
  CHECK(rmspe(a, p) == doctest::Approx(100 * std::sqrt((0.03 * 0.03 + 0.02 * 0.02) / 2)).epsilon(1e-14));
  CHECK(mae(a, a) == 0.0);
  CHECK(rmse(a, a) == 0.0);
  CHECK(rmspe(a, a) == 0.0);
}

TEST_CASE("acper") {
  const std::vector<double> a{100, 100, 100};
  CHECK(acper(a, std::vector<double>{101, 105, 120}, 5.0) == doctest::Approx(200.0 / 3.0));
  CHECK(acper(a, a, 5.0) == 100.0);
  CHECK(acper(a, std::vector<double>{200, 10, 150}, 5.0) == 0.0);
}

TEST_CASE("property: metric identities on random data") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    std::vector<double> a(n), p(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 1 + rng.uniform() * 1000;
      p[i] = a[i] * (1 + 0.2 * rng.normal());
    }
    const double c = 0.01 + rng.uniform() * 100;
    std::vector<double> ca(a), cp(p);
    for (auto& v : ca) v *= c;
    for (auto& v : cp) v *= c;
    REQUIRE(std::abs(mape(ca, cp) - mape(a, p)) <= 1e-9);
    REQUIRE(mape(a, p) >= 0.0);
    REQUIRE(rmse(a, p) >= mae(a, p) - 1e-12);
    const double ac = acper(a, p, 5.0);
    REQUIRE((ac >= 0.0 && ac <= 100.0));
  }
  CHECK(mape(std::vector<double>{1, 2}, std::vector<double>{1, 2.0000001}) > 0.0);
}

TEST_CASE("report: sorting and recomputation") {
  const std::vector<double> a{100, 110, 120, 130};
  const auto good = trace_of("linear", a, {101, 109, 121, 129});
  const auto bad = trace_of("tree", a, {90, 120, 110, 140});
  const auto perfect = trace_of("swr", a, a);
  const std::vector<ForecastTrace> traces{bad, good, perfect};
  const auto r = compare_report(traces);
  REQUIRE(r.rows.size() == 3);
  CHECK(r.n == 4);
  CHECK(r.rows[0].model == "swr");
  CHECK(r.rows[0].mape_pct == 0.0);
  CHECK(r.rows[1].model == "linear");
  CHECK(r.rows[2].model == "tree");
  CHECK(std::abs(r.rows[2].mape_pct - mape(a, bad.predictions())) <= 1e-9);
  CHECK(r.rows[2].mae_mw == doctest::Approx(mae(a, bad.predictions())));
  CHECK(r.rows[2].acper_pct == doctest::Approx(acper(a, bad.predictions(), 5.0)));
  const auto csv = report_csv(r);
  CHECK(csv.rfind("model,protocol,mape_pct,mae_mw,rmse_mw,rmspe_pct,acper_pct,n\n", 0) == 0);
  CHECK(csv.find("\nswr,train-once,0,") != std::string::npos);
}

TEST_CASE("report: misaligned traces are rejected") {
  const auto t1 = trace_of("a", {1, 2, 3}, {1, 2, 3});
  auto t2 = trace_of("b", {1, 2, 3}, {1, 2, 3});
  t2.steps[1].index += 1;
  CHECK_THROWS_AS(compare_report(std::vector<ForecastTrace>{t1, t2}), Error);
  CHECK_THROWS_AS(compare_report(std::vector<ForecastTrace>{}), Error);
}

TEST_CASE("trace_mape_from") {
  const auto t = trace_of("a", {100, 100, 100, 100}, {100, 100, 90, 80});
  CHECK(trace_mape_from(t, 102) == doctest::Approx(15.0));
  CHECK(trace_mape_from(t, 100) == doctest::Approx(7.5));
  CHECK_THROWS_AS(trace_mape_from(t, 200), Error);
}
