/* Public C API of the sldg solver library.
 *
 * The library runs stochastic-transport experiments described by a JSON
 * configuration; outputs are written as CSV/JSON artifacts under the
 * experiment's output directory. All entry points are thread-safe as long as
 * distinct experiment handles are used.
 */
#ifndef SLDG_H
#define SLDG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLDG_API __declspec(dllexport)
#else
#define SLDG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sldg_status {
    SLDG_OK = 0,
    SLDG_ERR_INVALID_ARG = 1,
    SLDG_ERR_CONFIG = 2,
    SLDG_ERR_IO = 3,
    SLDG_ERR_BLOWUP = 4,
    SLDG_ERR_INTERNAL = 5
} sldg_status;

/* Opaque experiment handle. */
typedef struct sldg_experiment sldg_experiment;

SLDG_API const char* sldg_version(void);
SLDG_API const char* sldg_status_message(sldg_status status);

/* Create an experiment from JSON text or a file path. On failure returns a
 * non-OK status; sldg_last_error() describes the problem. */
SLDG_API sldg_status sldg_experiment_create_from_json(const char* json_text, sldg_experiment** out);
SLDG_API sldg_status sldg_experiment_create_from_file(const char* path, sldg_experiment** out);
SLDG_API void sldg_experiment_destroy(sldg_experiment* exp);

/* Overrides applied after parsing. */
SLDG_API sldg_status sldg_experiment_set_seed(sldg_experiment* exp, uint64_t seed);
SLDG_API sldg_status sldg_experiment_set_out_dir(sldg_experiment* exp, const char* dir);
SLDG_API sldg_status sldg_experiment_set_threads(sldg_experiment* exp, int threads);

/* Commands. Each writes its artifacts under the configured output directory
 * and, when `summary_json` is non-NULL, returns a malloc'd summary string the
 * caller releases with sldg_string_free(). */
SLDG_API sldg_status sldg_run_single(sldg_experiment* exp, char** summary_json);
SLDG_API sldg_status sldg_run_mc(sldg_experiment* exp, char** summary_json);
SLDG_API sldg_status sldg_run_eoc(sldg_experiment* exp, char** summary_json);
SLDG_API sldg_status sldg_run_energy(sldg_experiment* exp, char** summary_json);
SLDG_API sldg_status sldg_run_field(sldg_experiment* exp, char** summary_json);

SLDG_API void sldg_string_free(char* s);

/* Description of the most recent error on this thread (empty if none). */
SLDG_API const char* sldg_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* SLDG_H */
