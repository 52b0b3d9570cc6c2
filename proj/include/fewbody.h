/* SPDX-License-Identifier: Apache-2.0 */
#ifndef FEWBODY_H
#define FEWBODY_H

/*
 * C interface to the few-body Gaussian-expansion solvers. All entry points
 * take a JSON configuration document (see README.md for the schema) and
 * return an opaque result handle, or NULL on failure. After a failure,
 * fbt_last_error_code() / fbt_last_error() describe what went wrong:
 *
 *   0  success
 *   2  invalid input (configuration, symmetry, parse errors, ...)
 *   3  numerical failure (degenerate basis, integration breakdown, ...)
 *
 * Error state is thread-local. Result handles must be released with
 * fbt_result_free().
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FBT_API __declspec(dllexport)
#else
#define FBT_API __attribute__((visibility("default")))
#endif

typedef struct fbt_result fbt_result;

/* Solve the problem described by the JSON document. */
FBT_API fbt_result* fbt_run_json(const char* config_json);

/* Convergence sweep: re-solve with nmax (and Nmax for three-body problems)
 * set to each of nmax_list[0..count-1]. */
FBT_API fbt_result* fbt_bench_json(const char* config_json, const int* nmax_list,
                                   size_t count);

/* Number of eigenvalues (solve results) or sweep rows (bench results). */
FBT_API size_t fbt_result_count(const fbt_result* res);

/* i-th eigenvalue real part (solve) or lowest eigenvalue of row i (bench).
 * Returns NaN and sets the error state if i is out of range. */
FBT_API double fbt_result_energy(const fbt_result* res, size_t i);

/* Formatted report; format is "json" or "csv". The string is owned by the
 * result handle and valid until fbt_result_free(). NULL on failure. */
FBT_API const char* fbt_result_report(fbt_result* res, const char* format);

/* Write the report to a file; wavefunction grids, when present, go to
 * sidecar files "<path>.wf<N>.dat". Returns 0 on success. */
FBT_API int fbt_result_write(fbt_result* res, const char* format, const char* path);

FBT_API void fbt_result_free(fbt_result* res);

/* Error code of the most recent API call on this thread (0, 2 or 3). */
FBT_API int fbt_last_error_code(void);

/* Human-readable message for the most recent failure on this thread. */
FBT_API const char* fbt_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* FEWBODY_H */
