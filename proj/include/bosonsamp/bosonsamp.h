// Copyright 2026 The bosonsamp Authors
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

/* C interface to the bosonsamp library. All functions are thread-compatible;
 * the last error message is kept per thread. */
#ifndef BOSONSAMP_BOSONSAMP_H
#define BOSONSAMP_BOSONSAMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(BOSONSAMP_BUILDING)
#define BS_API __attribute__((visibility("default")))
#else
#define BS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
  BS_OK = 0,
  BS_E_INVALID_ARGUMENT = 1,
  BS_E_ORACLE_SIZE = 2,
  BS_E_CAP_EXCEEDED = 3,
  BS_E_NOT_UNITARY = 4,
  BS_E_LAMBDA_TOO_SMALL = 5,
  BS_E_WORD_LENGTH = 6,
  BS_E_ZERO_VARIANCE = 7,
  BS_E_PARSE = 8,
  BS_E_IO = 9,
  BS_E_UNREACHABLE = 10,
  BS_E_INTERNAL = 99
} bs_status;

/* "E_INVALID_ARGUMENT" etc. */
BS_API const char* bs_status_name(bs_status status);
/* Message of the last failed call on this thread; "" if none. */
BS_API const char* bs_last_error(void);

/* Caps internal worker threads; 0 restores the default. Never changes results. */
BS_API void bs_set_threads(int threads);
/* Largest C(m,n) that may be enumerated (default 5e6 or BOSONSAMP_ENUM_CAP). */
BS_API void bs_set_enumeration_cap(uint64_t cap);

/* ---- Matrices ---------------------------------------------------------- */

typedef struct bs_unitary bs_unitary;

BS_API bs_status bs_unitary_haar(int modes, uint64_t seed, bs_unitary** out);
/* tolerance < 0 skips the unitarity check (plain matrix). */
BS_API bs_status bs_unitary_load(const char* path, double tolerance, bs_unitary** out);
BS_API bs_status bs_unitary_save(const bs_unitary* u, const char* path);
BS_API int bs_unitary_modes(const bs_unitary* u);
/* max |U^dagger U - I| entry. */
BS_API double bs_unitary_residual(const bs_unitary* u);
BS_API void bs_unitary_free(bs_unitary* u);

/* method: "glynn", "ryser" or "naive". `entries` is row-major, interleaved re/im. */
BS_API bs_status bs_permanent(const double* entries, int dim, const char* method, double* re, double* im);
/* Permanent of the leading dim x dim block of u (dim <= 0: whole matrix). */
BS_API bs_status bs_unitary_permanent(const bs_unitary* u, int dim, const char* method, double* re,
                                      double* im);

/* CSV of every collision-free pattern: rank,modes,probability,normalized. */
BS_API bs_status bs_distribution_write(const bs_unitary* u, int photons, const char* path);

/* ---- Sampling ---------------------------------------------------------- */

typedef struct bs_sample_config {
  int photons;
  const char* sampler;  /* brute, rejection, mcmc, mis, scmcmc, scmcmc-improved */
  const char* proposal; /* uniform, mov1p, distinguishable */
  uint64_t count;
  uint64_t seed;
  uint64_t cache_size; /* L */
  uint64_t jump;       /* K */
  uint64_t burn_in;
  double lambda;       /* rejection bound; <= 0 computes it exactly */
  int retain_candidates;
  int discard_cache;
} bs_sample_config;

/* Defaults: scmcmc-improved, uniform, L=4000, K=200, burn_in=100. */
BS_API void bs_sample_config_init(bs_sample_config* config);

typedef struct bs_run bs_run;

typedef struct bs_run_info {
  int photons;
  int modes;
  uint64_t samples;
  uint64_t candidates;
  uint64_t permanent_evals;
  uint64_t warmup_evals;
  uint64_t real_permanent_evals;
  uint64_t acceptance_count;
  uint64_t cache_full_after;
  int candidates_retained;
  double wall_seconds;
  double permanent_seconds;
} bs_run_info;

BS_API bs_status bs_sample(const bs_unitary* u, const bs_sample_config* config, bs_run** out);
BS_API bs_status bs_run_get_info(const bs_run* run, bs_run_info* info);
/* Copies sample i (photons ascending mode indices) into `modes`. */
BS_API bs_status bs_run_sample(const bs_run* run, uint64_t i, int* modes);
/* Candidate index of sample i; needs retained candidates. */
BS_API bs_status bs_run_source(const bs_run* run, uint64_t i, uint64_t* source);
/* Writes the samples file. Extra header pairs follow the run metadata.
 * path "-" writes to stdout. */
BS_API bs_status bs_run_write(const bs_run* run, const char* path, const char* const* extra_keys,
                              const char* const* extra_values, size_t extra_count);
/* Candidate sequence in sample format, and one candidate index per line. */
BS_API bs_status bs_run_write_candidates(const bs_run* run, const char* path);
BS_API bs_status bs_run_write_sources(const bs_run* run, const char* path);
BS_API void bs_run_free(bs_run* run);

/* ---- Diagnostics ------------------------------------------------------- */

typedef struct bs_diagnose_config {
  const char* samples_path;
  const char* sources_path; /* optional: candidate indices for cache statistics */
  const char* strategy;     /* sort_order (default), binary_decimal, neg_log_p */
  int lags;                 /* r_1 .. r_lags; default 200 */
  uint64_t cache_size;      /* 0: take L from the samples header */
  uint64_t jump;            /* 0: take K from the header, else 200 */
} bs_diagnose_config;

BS_API void bs_diagnose_config_init(bs_diagnose_config* config);

/* Writes "metric,lag-or-param,value" rows. `u` may be NULL, in which case the
 * unitary named by the samples header is used when available. Similarity
 * is reported when the exact table fits the enumeration cap. */
BS_API bs_status bs_diagnose(const bs_diagnose_config* config, const bs_unitary* u, const char* out_path);

/* ---- Performance model ------------------------------------------------- */

typedef struct bs_qa_params {
  const char* rate;    /* "const:<Hz>" or "scaled:<Hz>" */
  double eta;
  const char* network; /* square, linear */
  const char* preset;  /* scmcmc, mis */
  double a;            /* > 0 overrides the preset */
  double b;            /* > 0 overrides the preset */
} bs_qa_params;

BS_API void bs_qa_params_init(bs_qa_params* params);
BS_API bs_status bs_qa(int photons, const bs_qa_params* params, double* t_c, double* t_q, double* qa);
/* BS_E_UNREACHABLE when eta <= eta_limit or no n <= cap works. */
BS_API bs_status bs_qa_threshold(const bs_qa_params* params, int cap, int* photons);
BS_API bs_status bs_qa_min_eta(const bs_qa_params* params, int cap, double* eta);
BS_API double bs_qa_eta_limit(const char* network);
/* CSV n,eta,t_c,t_q,qa over the grid, then "# threshold" summary lines. */
BS_API bs_status bs_qa_curve(const bs_qa_params* params, int n_min, int n_max, const double* etas,
                             size_t eta_count, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* BOSONSAMP_BOSONSAMP_H */
