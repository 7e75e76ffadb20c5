/* C interface of the ruralcov coverage simulator. */

#ifndef RURALCOV_H
#define RURALCOV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define RURALCOV_OK 0

// Invalid configuration (bad file, key, value, or invariant violation).
#define RURALCOV_ERR_CONFIG 1

// The simulation failed at run time.
#define RURALCOV_ERR_RUNTIME 2

// A required pointer argument was NULL.
#define RURALCOV_ERR_NULL 3

// An index was out of range.
#define RURALCOV_ERR_INDEX 4

// A string argument was not valid UTF-8.
#define RURALCOV_ERR_UTF8 5

// An internal panic was caught at the boundary.
#define RURALCOV_ERR_PANIC 6

// Opaque run configuration handle.
typedef struct ruralcov_config_t ruralcov_config_t;

// Opaque sweep-result handle.
typedef struct ruralcov_result_t ruralcov_result_t;

// One sweep row; the mode label is fetched separately with
// `ruralcov_result_mode`.
typedef struct ruralcov_row_t {
  double sweep_value;
  double p_cov;
  double ci_low;
  double ci_high;
  uint64_t n_trials;
  uint64_t seed;
  uint64_t flagged_trials;
} ruralcov_row_t;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the most recent error on this thread. The pointer is
// valid until the next failing call on the same thread.
const char *ruralcov_last_error(void);

// New configuration with every parameter at its default, targeting the
// given scenario (1, 2 or 3). Free with `ruralcov_config_free`.
struct ruralcov_config_t *ruralcov_config_default(uint32_t scenario);

// Loads a TOML configuration file. Returns NULL on failure (see
// `ruralcov_last_error`). Free with `ruralcov_config_free`.
//
// # Safety
// `path` must be a NUL-terminated string or NULL.
struct ruralcov_config_t *ruralcov_config_load(const char *path);

// Applies one `section.key=value` override, e.g.
// `ruralcov_config_set(cfg, "run.n_trials", "2000")`.
//
// # Safety
// `config` must be a live handle from this library; `key` and `value` must
// be NUL-terminated strings.
int32_t ruralcov_config_set(struct ruralcov_config_t *config, const char *key, const char *value);

// Serializes the resolved configuration as TOML. Free the returned string
// with `ruralcov_string_free`.
//
// # Safety
// `config` must be a live handle from this library or NULL.
char *ruralcov_config_to_toml(const struct ruralcov_config_t *config);

// # Safety
// `config` must be NULL or a handle produced by this library, not yet freed.
void ruralcov_config_free(struct ruralcov_config_t *config);

// Runs the scenario selected by the configuration and stores a result
// handle in `out`. Free the result with `ruralcov_result_free`.
//
// # Safety
// `config` must be a live handle; `out` must point to writable storage.
int32_t ruralcov_run(const struct ruralcov_config_t *config, struct ruralcov_result_t **out);

// Runs one figure-analog sweep (2, 3 or 5) with its default axes at the
// given trial count and seed.
//
// # Safety
// `out` must point to writable storage.
int32_t ruralcov_figure(uint32_t fig_id,
                        uint64_t n_trials,
                        uint64_t seed,
                        struct ruralcov_result_t **out);

// Number of (sweep value, mode) rows in the result.
//
// # Safety
// `result` must be NULL or a live handle from this library.
size_t ruralcov_result_len(const struct ruralcov_result_t *result);

// Copies row `index` into `row`.
//
// # Safety
// `result` must be a live handle; `row` must point to writable storage.
int32_t ruralcov_result_row(const struct ruralcov_result_t *result,
                            size_t index,
                            struct ruralcov_row_t *row);

// Deployment-mode label of row `index`; the pointer stays valid until the
// result handle is freed. NULL when the index is out of range.
//
// # Safety
// `result` must be NULL or a live handle from this library.
const char *ruralcov_result_mode(const struct ruralcov_result_t *result, size_t index);

// Renders the whole result as CSV (same format the CLI writes). Free with
// `ruralcov_string_free`.
//
// # Safety
// `result` must be NULL or a live handle from this library.
char *ruralcov_result_csv(const struct ruralcov_result_t *result);

// # Safety
// `result` must be NULL or a handle produced by this library, not yet freed.
void ruralcov_result_free(struct ruralcov_result_t *result);

// Frees a string returned by this library.
//
// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void ruralcov_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RURALCOV_H */
