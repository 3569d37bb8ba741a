// Copyright 2026 The lgbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LGBS_LGBS_H_
#define LGBS_LGBS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LGBS_API __declspec(dllexport)
#else
#define LGBS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lgbs_status {
    LGBS_OK = 0,
    LGBS_ERR_INVALID_ARGUMENT = 1,
    LGBS_ERR_DOMAIN = 2,
    LGBS_ERR_SIZE_LIMIT = 3,
    LGBS_ERR_NULL_POINTER = 4,
    LGBS_ERR_INTERNAL = 5
} lgbs_status;

typedef enum lgbs_format { LGBS_FORMAT_JSON = 0, LGBS_FORMAT_CSV = 1 } lgbs_format;

/* Opaque handles. */
typedef struct lgbs_config lgbs_config;
typedef struct lgbs_report lgbs_report;
typedef struct lgbs_unitary lgbs_unitary;

LGBS_API const char *lgbs_version(void);

/* Message of the most recent failure on the calling thread ("" if none). */
LGBS_API const char *lgbs_last_error(void);

LGBS_API const char *lgbs_status_name(lgbs_status status);

/* Experiment configuration, a typed key-value store. Keys:
 *   int:    N, M, samples, trials, rows, terms, threads, auto_r (0/1)
 *   double: r, eta, k_star, eps0, delta0, delta, beta0, beta1
 *   uint64: seed
 *   string: seed_source, noise_mode (uniform|adversarial), outcome ("1,2,2")
 * Unknown keys and wrongly typed keys are rejected with LGBS_ERR_INVALID_ARGUMENT. */
LGBS_API lgbs_status lgbs_config_create(lgbs_config **out);
LGBS_API void lgbs_config_destroy(lgbs_config *config);
LGBS_API lgbs_status lgbs_config_set_int(lgbs_config *config, const char *key, int64_t value);
LGBS_API lgbs_status lgbs_config_set_double(lgbs_config *config, const char *key, double value);
LGBS_API lgbs_status lgbs_config_set_uint64(lgbs_config *config, const char *key, uint64_t value);
LGBS_API lgbs_status lgbs_config_set_string(lgbs_config *config, const char *key, const char *value);

/* Runs one of: probability, distribution, qfactor, postselect, extrapolate,
 * truncation, moments, tvd, selftest. */
LGBS_API lgbs_status lgbs_run(const char *command, const lgbs_config *config, lgbs_report **out);
LGBS_API void lgbs_report_destroy(lgbs_report *report);
/* Rendered text owned by the report; valid until lgbs_report_destroy. */
LGBS_API lgbs_status lgbs_report_text(const lgbs_report *report, lgbs_format format, const char **text);
/* 1 if every bound check in the report passed, else 0. */
LGBS_API lgbs_status lgbs_report_all_pass(const lgbs_report *report, int *pass);

/* Unitaries. Entries are interleaved (re, im), row-major, 2 * modes * modes doubles. */
LGBS_API lgbs_status lgbs_unitary_haar(uint64_t seed, int modes, lgbs_unitary **out);
LGBS_API lgbs_status lgbs_unitary_from_data(int modes, const double *re_im, lgbs_unitary **out);
LGBS_API void lgbs_unitary_destroy(lgbs_unitary *unitary);
LGBS_API lgbs_status lgbs_unitary_modes(const lgbs_unitary *unitary, int *modes);
LGBS_API lgbs_status lgbs_unitary_data(const lgbs_unitary *unitary, double *re_im, size_t length);

/* Hafnian of a dim x dim complex symmetric matrix (interleaved, row-major). */
LGBS_API lgbs_status lgbs_hafnian(int dim, const double *re_im, double *out_re, double *out_im);

LGBS_API lgbs_status lgbs_q_factor(int modes, int photons, double r, double eta, double *value, double *error_bound);
LGBS_API lgbs_status lgbs_prob_postselect_n(int modes, int photons, double r, double eta, double *value,
                                            double *error_bound);

/* Outcome probabilities; `outcome` holds `photons` 1-based mode indices. */
LGBS_API lgbs_status lgbs_prob_postselected(const lgbs_unitary *unitary, const int *outcome, int photons, double r,
                                            double eta, double *value);
LGBS_API lgbs_status lgbs_prob_no_postselect(const lgbs_unitary *unitary, const int *outcome, int photons, double r,
                                             double eta, double *value);

#ifdef __cplusplus
}
#endif

#endif  // LGBS_LGBS_H_
