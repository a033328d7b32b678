// Copyright 2026 The diracsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIRACSIM_DIRACSIM_H
#define DIRACSIM_DIRACSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(DIRACSIM_BUILDING)
#define DS_API __declspec(dllexport)
#else
#define DS_API __declspec(dllimport)
#endif
#else
#define DS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every call that can fail returns one; the message of the last failure on the
 * calling thread is available from ds_last_error(). */
typedef enum ds_status {
    DS_OK = 0,
    DS_INVALID_ARGUMENT = 1,
    DS_GRID_TOO_NARROW = 2,
    DS_NOT_PRODUCT_STATE = 3,
    DS_EDGE_LEAKAGE = 4,
    DS_TRUNCATION = 5,
    DS_PAD_INSUFFICIENT = 6,
    DS_ZERO_WEIGHT = 7,
    DS_INDISTINCT = 8,
    DS_GRID_MISMATCH = 9,
    DS_STEP_FAILURE = 10,
    DS_ILL_CONDITIONED = 11,
    DS_SINGULAR = 12,
    DS_ZERO_POPULATION = 13,
    DS_NOT_CONVERGED = 14,
    DS_CONFIG = 15,
    DS_IO = 16,
    DS_PARTIAL = 17,
    DS_INTERNAL = 18,
    DS_BUFFER_TOO_SMALL = 19
} ds_status;

typedef struct ds_complex {
    double re;
    double im;
} ds_complex;

DS_API const char *ds_version(void);
DS_API const char *ds_status_name(ds_status status);
DS_API const char *ds_last_error(void);
/* Worker threads for grid-parallel loops (process wide, default 1). */
DS_API ds_status ds_set_threads(unsigned threads);

/* ---- Continuum Dirac spinors --------------------------------------------------------------- */

typedef struct ds_dirac_params {
    double c;
    double m;
} ds_dirac_params;

typedef struct ds_spinor ds_spinor;

/* Gaussian packet xi(p) e^{-i p x0} (x) (up, down) on the default grid p0 +- 8 delta_p. */
DS_API ds_status ds_spinor_gaussian(double p0, double delta_p, double x0, ds_complex up,
                                    ds_complex down, size_t n_points, ds_spinor **out);
/* Positive-energy packet with zero phase profile. */
DS_API ds_status ds_spinor_positive_branch(double p0, double delta_p, ds_dirac_params params,
                                           size_t n_points, ds_spinor **out);
DS_API ds_status ds_spinor_evolve(const ds_spinor *state, double t, ds_dirac_params params,
                                  ds_spinor **out);
DS_API ds_status ds_spinor_size(const ds_spinor *state, size_t *n_points);
DS_API ds_status ds_spinor_momenta(const ds_spinor *state, double *p, size_t n);
DS_API ds_status ds_spinor_components(const ds_spinor *state, ds_complex *up, ds_complex *down,
                                      size_t n);
DS_API ds_status ds_spinor_mean_position(const ds_spinor *state, double *mean_x);
DS_API ds_status ds_spinor_mean_position_analytic(const ds_spinor *initial, double t,
                                                  ds_dirac_params params, double *mean_x);
DS_API ds_status ds_spinor_entropy(const ds_spinor *state, double *bits);
DS_API void ds_spinor_free(ds_spinor *state);

/* ---- Wigner functions ---------------------------------------------------------------------- */

typedef struct ds_grid_spec {
    double x_min;
    double x_max;
    size_t n_x;
    double p_min;
    double p_max;
    size_t n_p;
} ds_grid_spec;

typedef struct ds_wigner ds_wigner;

/* W conditioned on the pseudospin vector b = (b_e, b_g); weight = population. */
DS_API ds_status ds_wigner_conditional(const ds_spinor *state, ds_complex b_e, ds_complex b_g,
                                       const ds_grid_spec *grid, ds_wigner **out);
/* Sum over the |e>, |g> projections. */
DS_API ds_status ds_wigner_unconditional(const ds_spinor *state, const ds_grid_spec *grid,
                                         ds_wigner **out);
DS_API ds_status ds_wigner_info(const ds_wigner *w, ds_grid_spec *grid, double *weight);
/* Values x-major: buf[i * n_p + j]. */
DS_API ds_status ds_wigner_values(const ds_wigner *w, double *buf, size_t n);
DS_API ds_status ds_wigner_moments(const ds_wigner *w, double *mean_x, double *mean_p,
                                   double *min_value, double *negative_volume);
DS_API ds_status ds_wigner_write_csv(const ds_wigner *w, const char *path);
DS_API ds_status ds_wigner_write_json(const ds_wigner *w, const char *path);
DS_API void ds_wigner_free(ds_wigner *w);

/* ---- Circuit emulator ---------------------------------------------------------------------- */

/* Angular frequencies in rad/ns, times in ns. */
typedef struct ds_circuit_params {
    double omega_0;
    double omega_r;
    double lambda;
    double eps_1;
    double nu_1;
    double phi_1;
    double eps_2;
    double nu_2;
    double phi_2;
    double Omega;
    double theta;
    double delta;
    double eps_drive;
    double drive_detuning;
} ds_circuit_params;

typedef struct ds_effective_params {
    double mu;
    double K;
    double eta;
    double omega;
    double c_star;
    double m_star;
    double coupling_over_nu1;
    double carrier_over_nu1;
    double sideband_over_2k;
} ds_effective_params;

typedef enum ds_model { DS_MODEL_EFFECTIVE = 0, DS_MODEL_FULL = 1 } ds_model;
typedef enum ds_outcome { DS_OUTCOME_E = 0, DS_OUTCOME_G = 1 } ds_outcome;

typedef struct ds_initial_state {
    double p0;       /* resonator starts in the coherent state i p0 / sqrt(2) */
    double axis[3];  /* qubit rotation applied to |g> */
    double angle;
} ds_initial_state;

typedef struct ds_circuit_state ds_circuit_state;

DS_API double ds_mhz_to_rad_per_ns(double mhz);
/* Zitterbewegung (klein = 0) or Klein (klein != 0) device and drive values. */
DS_API ds_status ds_circuit_default_params(int klein, ds_circuit_params *out);
DS_API ds_status ds_circuit_effective_params(const ds_circuit_params *params,
                                             ds_effective_params *out);
/* State at time t in the effective frame. rel_tol applies to the full model only. */
DS_API ds_status ds_circuit_evolve(const ds_circuit_params *params, ds_model model, size_t n_max,
                                   const ds_initial_state *initial, double t, double rel_tol,
                                   ds_circuit_state **out);
/* P_e(t) at the sample times (sorted, non-negative). */
DS_API ds_status ds_circuit_excited_population(const ds_circuit_params *params, ds_model model,
                                               size_t n_max, const ds_initial_state *initial,
                                               const double *times, size_t n, double *out);
DS_API ds_status ds_circuit_state_observables(const ds_circuit_state *state, double *mean_x,
                                              double *mean_p, double *entropy,
                                              double *excited);
/* Population-normalized conditional WF by the Fock displaced-parity route. */
DS_API ds_status ds_circuit_state_wigner(const ds_circuit_state *state, ds_outcome outcome,
                                         const ds_grid_spec *grid, ds_wigner **out);
DS_API void ds_circuit_state_free(ds_circuit_state *state);

/* ---- Tomography ---------------------------------------------------------------------------- */

typedef struct ds_rabi_model {
    double lambda_2;  /* rad/ns */
    double T1_p;      /* ns, <= 0 for no decay */
    double l;
    double P_g0;
} ds_rabi_model;

DS_API ds_status ds_tomo_simulate_rabi(const double *probs, size_t n_probs,
                                       const ds_rabi_model *model, const double *taus,
                                       size_t n_taus, double *values);
/* probs must hold n_max + 1 entries. P_g0 is fitted in [0.95, 1] when fit_P_g0 != 0. */
DS_API ds_status ds_tomo_fit(const double *taus, const double *values, size_t n_taus,
                             const ds_rabi_model *model, size_t n_max, int fit_P_g0,
                             double *probs, double *P_g0, double *residual);
DS_API ds_status ds_tomo_wigner_point(const double *probs, size_t n_probs, double *value);
/* fidelities = (F_g1, F_e1, F_g2, F_e2); populations ordered (gg, ge, eg, ee). */
DS_API ds_status ds_tomo_apply_calibration(const double measured[4], const double fidelities[4],
                                           double raw[4], double clamped[4]);
/* Writes up to capacity entries and sets *length to the full distribution length. */
DS_API ds_status ds_tomo_conditional_distribution(const ds_circuit_state *state,
                                                  ds_outcome outcome, ds_complex gamma,
                                                  double *probs, size_t capacity, size_t *length,
                                                  double *population);

/* ---- Scenario runner ----------------------------------------------------------------------- */

typedef struct ds_config ds_config;
typedef struct ds_run_result ds_run_result;

DS_API ds_status ds_config_load(const char *path, ds_config **out);
DS_API ds_status ds_config_parse(const char *yaml_text, ds_config **out);
DS_API ds_status ds_config_default(const char *scenario, ds_config **out);
DS_API ds_status ds_config_validate(const ds_config *cfg);
DS_API ds_status ds_config_set_model(ds_config *cfg, const char *model);
DS_API ds_status ds_config_set_output_dir(ds_config *cfg, const char *dir);
DS_API ds_status ds_config_set_seed(ds_config *cfg, uint64_t seed);
DS_API ds_status ds_config_set_threads(ds_config *cfg, unsigned threads);
/* Returned strings live as long as the config handle. */
DS_API const char *ds_config_scenario(const ds_config *cfg);
DS_API const char *ds_config_model(const ds_config *cfg);
DS_API const char *ds_config_output_dir(const ds_config *cfg);
DS_API const char *ds_config_param_hash(const ds_config *cfg);
DS_API void ds_config_free(ds_config *cfg);

/* Runs the configured scenario. DS_OK means a result was produced; check its exit code. */
DS_API ds_status ds_run(const ds_config *cfg, ds_run_result **out);
/* Full-vs-effective comparison with the config's circuit parameters. */
DS_API ds_status ds_compare(const ds_config *cfg, ds_run_result **out);

/* 0 ok, 3 numeric failure, 4 partial. */
DS_API int ds_result_exit_code(const ds_run_result *r);
DS_API const char *ds_result_status(const ds_run_result *r);
DS_API const char *ds_result_manifest_path(const ds_run_result *r);
DS_API size_t ds_result_file_count(const ds_run_result *r);
DS_API const char *ds_result_file(const ds_run_result *r, size_t i);
DS_API size_t ds_result_metric_count(const ds_run_result *r);
DS_API ds_status ds_result_metric(const ds_run_result *r, size_t i, const char **name,
                                  double *value);
DS_API size_t ds_result_warning_count(const ds_run_result *r);
DS_API const char *ds_result_warning(const ds_run_result *r, size_t i);
DS_API size_t ds_result_failure_count(const ds_run_result *r);
DS_API const char *ds_result_failure(const ds_run_result *r, size_t i);
DS_API void ds_result_free(ds_run_result *r);

#ifdef __cplusplus
}
#endif

#endif /* DIRACSIM_DIRACSIM_H */
