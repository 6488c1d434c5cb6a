#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "swr/swr.h"

namespace {

struct Dataset {
  swr_dataset* p = nullptr;
  ~Dataset() { swr_dataset_free(p); }
};

struct Trace {
  swr_trace* p = nullptr;
  ~Trace() { swr_trace_free(p); }
};

std::string take(char* s) {
  std::string out(s);
  swr_string_free(s);
  return out;
}

void add_daily(swr_dataset* ds, const char* zone, size_t length, double noise, uint64_t seed) {
  swr_component daily{86400.0, 50.0, 0.0};
  swr_synth_config cfg;
  swr_synth_config_default(&cfg);
  cfg.length = length;
  cfg.components = &daily;
  cfg.n_components = 1;
  cfg.noise_sigma_mw = noise;
  cfg.seed = seed;
  REQUIRE(swr_dataset_add_synthetic(ds, zone, &cfg) == SWR_OK);
}

}  // namespace

TEST_CASE("c api: status names and version") {
  CHECK(std::strcmp(swr_status_name(SWR_OK), "ok") == 0);
  CHECK(std::strlen(swr_version()) > 0);
  int64_t t = 0;
  CHECK(swr_parse_timestamp("2017-10-16T00:00:00Z", &t) == SWR_OK);
  CHECK(t == 1508112000);
  CHECK(swr_parse_timestamp("not a time", &t) == SWR_E_PARSE);
  CHECK(std::strlen(swr_last_error()) > 0);
}

TEST_CASE("c api: dataset round trip") {
  Dataset ds;
  REQUIRE(swr_dataset_create(&ds.p) == SWR_OK);
  add_daily(ds.p, "B", 400, 5.0, 1);
  add_daily(ds.p, "A", 300, 5.0, 2);
  CHECK(swr_dataset_zone_count(ds.p) == 2);
  CHECK(std::string(swr_dataset_zone_name(ds.p, 0)) == "A");
  CHECK(swr_dataset_zone_name(ds.p, 2) == nullptr);
  size_t n = 0;
  CHECK(swr_dataset_zone_length(ds.p, "B", &n) == SWR_OK);
  CHECK(n == 400);
  CHECK(swr_dataset_zone_length(ds.p, "C", &n) == SWR_E_INVALID_ARGUMENT);

  char* text = nullptr;
  REQUIRE(swr_dataset_to_csv(ds.p, &text) == SWR_OK);
  const std::string csv = take(text);
  Dataset back;
  REQUIRE(swr_dataset_parse_csv(csv.data(), csv.size(), &back.p) == SWR_OK);
  REQUIRE(swr_dataset_to_csv(back.p, &text) == SWR_OK);
  CHECK(take(text) == csv);
}

TEST_CASE("c api: errors map to statuses") {
  Dataset ds;
  const std::string bad = "timestamp,zone,load_mw\n2017-10-16T00:00:00Z,A,1\n2017-10-16T00:07:00Z,A,2\n2017-10-16T00:10:00Z,A,2\n";
  CHECK(swr_dataset_parse_csv(bad.data(), bad.size(), &ds.p) == SWR_E_PARSE);
  CHECK(ds.p == nullptr);
  CHECK(std::string(swr_last_error()).find("line") != std::string::npos);
  CHECK(swr_dataset_load_csv("/nonexistent/x.csv", &ds.p) == SWR_E_IO);
  CHECK(swr_dataset_create(nullptr) == SWR_E_INVALID_ARGUMENT);

  REQUIRE(swr_dataset_create(&ds.p) == SWR_OK);
  add_daily(ds.p, "Z", 400, 0.0, 1);
  swr_engine_config cfg;
  swr_engine_config_default(&cfg);
  Trace t;
  CHECK(swr_run(ds.p, "Z", &cfg, &t.p) == SWR_E_INSUFFICIENT_DATA);
  CHECK(std::string(swr_last_error()).find("need at least") != std::string::npos);
  cfg.h0 = 100;
  CHECK(swr_run(ds.p, "Z", &cfg, &t.p) == SWR_E_INVALID_ARGUMENT);
}

TEST_CASE("c api: window sizing") {
  Dataset ds;
  REQUIRE(swr_dataset_create(&ds.p) == SWR_OK);
  add_daily(ds.p, "Z", 2000, 0.0, 1);
  swr_sizing_config cfg;
  swr_sizing_config_default(&cfg);
  swr_window_sizing w{};
  REQUIRE(swr_window_size(ds.p, "Z", &cfg, &w) == SWR_OK);
  CHECK(w.has_period);
  CHECK(w.significant);
  CHECK(w.window_samples == 288);
  CHECK(w.false_alarm_prob < 0.01);
}

TEST_CASE("c api: run, baselines and report") {
  Dataset ds;
  REQUIRE(swr_dataset_create(&ds.p) == SWR_OK);
  add_daily(ds.p, "Z", 1200, 10.0, 4);
  swr_engine_config cfg;
  swr_engine_config_default(&cfg);
  Trace swr, lin, tree;
  REQUIRE(swr_run(ds.p, "Z", &cfg, &swr.p) == SWR_OK);
  CHECK(std::string(swr_trace_model(swr.p)) == "swr");
  CHECK(std::string(swr_trace_protocol(swr.p)) == "adaptive");
  CHECK(swr_trace_step_count(swr.p) == 1200 - 576);
  CHECK(swr_trace_all_converged(swr.p) == 1);
  REQUIRE(swr_run_baseline(ds.p, "Z", &cfg, SWR_MODEL_LINEAR, SWR_PROTOCOL_TRAIN_ONCE, swr.p,
                           &lin.p) == SWR_OK);
  REQUIRE(swr_run_baseline(ds.p, "Z", &cfg, SWR_MODEL_TREE, SWR_PROTOCOL_SLIDING_FIXED, nullptr,
                           &tree.p) == SWR_OK);
  CHECK(swr_trace_batch_count(lin.p) == swr_trace_batch_count(swr.p));

  std::vector<double> a, p;
  for (size_t i = 0; i < swr_trace_step_count(swr.p); ++i) {
    size_t index = 0, batch = 0;
    double actual = 0, pred = 0;
    REQUIRE(swr_trace_step(swr.p, i, &index, &actual, &pred, &batch) == SWR_OK);
    CHECK(index == 576 + i);
    a.push_back(actual);
    p.push_back(pred);
  }
  double direct = 0, via_trace = 0;
  REQUIRE(swr_mape(a.data(), p.data(), a.size(), &direct) == SWR_OK);
  REQUIRE(swr_trace_mape(swr.p, &via_trace) == SWR_OK);
  CHECK(direct == via_trace);

  const swr_trace* all[] = {tree.p, lin.p, swr.p};
  swr_report* report = nullptr;
  REQUIRE(swr_report_create(all, 3, 5.0, &report) == SWR_OK);
  CHECK(swr_report_row_count(report) == 3);
  double prev = -1;
  for (size_t i = 0; i < 3; ++i) {
    swr_metric_row row{};
    REQUIRE(swr_report_row(report, i, &row) == SWR_OK);
    CHECK(row.mape_pct >= prev);
    CHECK(row.n == a.size());
    prev = row.mape_pct;
    if (std::string(row.model) == "swr") CHECK(std::abs(row.mape_pct - direct) <= 1e-9);
  }
  char* csv = nullptr;
  REQUIRE(swr_report_csv(report, &csv) == SWR_OK);
  CHECK(take(csv).rfind("model,protocol,", 0) == 0);
  swr_report_free(report);

  Trace copy;
  REQUIRE(swr_trace_clone(swr.p, &copy.p) == SWR_OK);
  char *s1 = nullptr, *s2 = nullptr;
  REQUIRE(swr_trace_steps_csv(swr.p, &s1) == SWR_OK);
  REQUIRE(swr_trace_steps_csv(copy.p, &s2) == SWR_OK);
  CHECK(take(s1) == take(s2));
}

TEST_CASE("c api: null handles are rejected") {
  swr_window_sizing w{};
  CHECK(swr_window_size(nullptr, "Z", nullptr, &w) == SWR_E_INVALID_ARGUMENT);
  double out = 0;
  CHECK(swr_trace_mape(nullptr, &out) == SWR_E_INVALID_ARGUMENT);
  CHECK(swr_mape(nullptr, nullptr, 0, &out) == SWR_E_INVALID_ARGUMENT);
  swr_trace_free(nullptr);
  swr_dataset_free(nullptr);
  swr_report_free(nullptr);
}
