/*
 * C interface to the sliding-window load forecaster.
 *
 * All objects are opaque handles created by swr_*_create / swr_*_load style
 * functions and released with the matching *_free. Every fallible call
 * returns an swr_status; on failure swr_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** must be released with swr_string_free.
 */
#ifndef SWR_SWR_H
#define SWR_SWR_H

#include <stddef.h>
#include <stdint.h>

#if defined(SWR_BUILDING_LIBRARY)
#define SWR_API __attribute__((visibility("default")))
#else
#define SWR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swr_status {
  SWR_OK = 0,
  SWR_E_INVALID_ARGUMENT = 1,
  SWR_E_PARSE = 2,
  SWR_E_INSUFFICIENT_DATA = 3,
  SWR_E_NUMERICAL = 4,
  SWR_E_IO = 5,
  SWR_E_INTERNAL = 6
} swr_status;

typedef enum swr_model_kind {
  SWR_MODEL_SVR = 0,
  SWR_MODEL_LINEAR = 1,
  SWR_MODEL_TREE = 2,
  SWR_MODEL_FOREST = 3,
  SWR_MODEL_PERSISTENCE = 4
} swr_model_kind;

typedef enum swr_protocol {
  SWR_PROTOCOL_TRAIN_ONCE = 0,
  SWR_PROTOCOL_SLIDING_FIXED = 1
} swr_protocol;

typedef struct swr_dataset swr_dataset; /* zone id -> load series */
typedef struct swr_trace swr_trace;     /* forecasts of one model on one zone */
typedef struct swr_report swr_report;   /* metric table over aligned traces */

SWR_API const char* swr_last_error(void);
SWR_API const char* swr_status_name(swr_status status);
SWR_API const char* swr_version(void);
SWR_API void swr_string_free(char* s);
/* Parses YYYY-MM-DDTHH:MM:SS[Z] (UTC) into Unix seconds. */
SWR_API swr_status swr_parse_timestamp(const char* text, int64_t* out);

/* ------------------------------------------------------------ datasets */

typedef struct swr_component {
  double period_s;
  double amplitude_mw;
  double phase_rad;
} swr_component;

typedef struct swr_synth_config {
  size_t length;
  int64_t step_s;
  int64_t start_unix_s;
  double base_level_mw;
  const swr_component* components;
  size_t n_components;
  double noise_sigma_mw;
  int has_drift;
  size_t drift_onset;
  double drift_level_shift_mw;
  double drift_amplitude_scale;
  uint64_t seed;
} swr_synth_config;

/* Defaults: 3906 samples, 300 s step, 2017-10-16T00:00:00Z, base 500 MW,
 * no components, no noise, no drift, seed 42. */
SWR_API void swr_synth_config_default(swr_synth_config* cfg);

SWR_API swr_status swr_dataset_create(swr_dataset** out);
SWR_API void swr_dataset_free(swr_dataset* ds);
SWR_API swr_status swr_dataset_parse_csv(const char* text, size_t len, swr_dataset** out);
SWR_API swr_status swr_dataset_load_csv(const char* path, swr_dataset** out);
/* Adds (or replaces) zone `zone` with a generated series. */
SWR_API swr_status swr_dataset_add_synthetic(swr_dataset* ds, const char* zone,
                                             const swr_synth_config* cfg);
SWR_API swr_status swr_dataset_to_csv(const swr_dataset* ds, char** out);
SWR_API swr_status swr_dataset_write_csv(const swr_dataset* ds, const char* path);
SWR_API size_t swr_dataset_zone_count(const swr_dataset* ds);
/* Zones are ordered by id. Returns NULL when i is out of range. */
SWR_API const char* swr_dataset_zone_name(const swr_dataset* ds, size_t i);
SWR_API swr_status swr_dataset_zone_length(const swr_dataset* ds, const char* zone,
                                           size_t* out);
/* Copies up to `cap` values of the zone into `out`. */
SWR_API swr_status swr_dataset_zone_values(const swr_dataset* ds, const char* zone,
                                           double* out, size_t cap);

/* ------------------------------------------------------------ window sizing */

typedef struct swr_sizing_config {
  double oversampling;
  double alpha;
  double multiplier;
  size_t fallback_samples;
  size_t min_window;
  size_t max_window;  /* 0: analysed history length */
  size_t history_cap; /* 0: whole history */
} swr_sizing_config;

typedef struct swr_window_sizing {
  int has_period;
  double dominant_period_s;
  size_t window_samples;
  int significant;
  double false_alarm_prob;
} swr_window_sizing;

SWR_API void swr_sizing_config_default(swr_sizing_config* cfg);
SWR_API swr_status swr_window_size(const swr_dataset* ds, const char* zone,
                                   const swr_sizing_config* cfg, swr_window_sizing* out);

/* ------------------------------------------------------------ forecasting */

typedef struct swr_engine_config {
  swr_model_kind model;
  size_t lags;
  size_t train_window; /* 0: size from the periodogram */
  swr_sizing_config sizing;
  size_t sizing_history;
  size_t resize_every;
  size_t h0;
  size_t h_min;
  size_t h_max;
  double mape_upper_pct;
  double mape_lower_pct;
  size_t warmup; /* 0: derived */
  uint64_t seed;
  double svr_c;
  double svr_epsilon;
  double svr_gamma; /* 0: 1/lags */
  double svr_tol;
  int svr_max_passes;
  size_t tree_max_depth;
  size_t tree_min_leaf;
  size_t forest_trees;
  size_t forest_mtry; /* 0: ceil(lags/3) */
} swr_engine_config;

SWR_API void swr_engine_config_default(swr_engine_config* cfg);

SWR_API swr_status swr_run(const swr_dataset* ds, const char* zone,
                           const swr_engine_config* cfg, swr_trace** out);
/* `schedule` may be NULL; for train-once it supplies the batch sizes to
 * replay (normally the adaptive run's), otherwise batches of h0 are used. */
SWR_API swr_status swr_run_baseline(const swr_dataset* ds, const char* zone,
                                    const swr_engine_config* cfg, swr_model_kind model,
                                    swr_protocol protocol, const swr_trace* schedule,
                                    swr_trace** out);
SWR_API void swr_trace_free(swr_trace* t);
SWR_API swr_status swr_trace_clone(const swr_trace* t, swr_trace** out);

SWR_API const char* swr_trace_model(const swr_trace* t);
SWR_API const char* swr_trace_protocol(const swr_trace* t);
SWR_API size_t swr_trace_step_count(const swr_trace* t);
SWR_API size_t swr_trace_batch_count(const swr_trace* t);
SWR_API int swr_trace_all_converged(const swr_trace* t);
SWR_API swr_status swr_trace_step(const swr_trace* t, size_t i, size_t* index, double* actual,
                                  double* predicted, size_t* batch);
SWR_API swr_status swr_trace_batch(const swr_trace* t, size_t i, size_t* h,
                                   size_t* window_samples, double* mape_pct, int* converged);
SWR_API swr_status swr_trace_window_sizing(const swr_trace* t, swr_window_sizing* out);
SWR_API swr_status swr_trace_mape(const swr_trace* t, double* out);
/* MAPE over steps whose series index is >= first_index. */
SWR_API swr_status swr_trace_mape_from(const swr_trace* t, size_t first_index, double* out);
SWR_API swr_status swr_trace_steps_csv(const swr_trace* t, char** out);
SWR_API swr_status swr_trace_batches_csv(const swr_trace* t, char** out);

/* ------------------------------------------------------------ reporting */

typedef struct swr_metric_row {
  const char* model;
  const char* protocol;
  double mape_pct;
  double mae_mw;
  double rmse_mw;
  double rmspe_pct;
  double acper_pct;
  size_t n;
} swr_metric_row;

SWR_API swr_status swr_report_create(const swr_trace* const* traces, size_t n_traces,
                                     double acper_tau_pct, swr_report** out);
SWR_API void swr_report_free(swr_report* r);
SWR_API size_t swr_report_row_count(const swr_report* r);
/* Row strings stay valid for the lifetime of the report. */
SWR_API swr_status swr_report_row(const swr_report* r, size_t i, swr_metric_row* out);
SWR_API swr_status swr_report_csv(const swr_report* r, char** out);

/* ------------------------------------------------------------ metrics */

SWR_API swr_status swr_mape(const double* actual, const double* predicted, size_t n,
                            double* out);

#ifdef __cplusplus
}
#endif

#endif /* SWR_SWR_H */
