// Copyright 2026 The qeraser Authors
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


/* C interface to the qeraser library.
 *
 * Objects are opaque handles created by qe_*_create / qe_basis_* and released
 * with the matching destroy call. Every fallible call returns a qe_status;
 * on failure qe_last_error() describes the problem (per thread, valid until
 * the next failing call on that thread). Output arrays are caller-owned.
 */

#ifndef QERASER_QERASER_H_
#define QERASER_QERASER_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QERASER_BUILDING_LIBRARY)
#define QE_API __attribute__((visibility("default")))
#else
#define QE_API
#endif

typedef enum qe_status {
    QE_OK = 0,
    QE_ERR_INVALID_ARGUMENT = 1,
    QE_ERR_NON_UNITARY = 2,
    QE_ERR_DIMENSION_MISMATCH = 3,
    QE_ERR_ALIASING_RISK = 4,
    QE_ERR_WINDOW_OUT_OF_GRID = 5,
    QE_ERR_GRID_MISMATCH = 6,
    QE_ERR_NULL_ARGUMENT = 7,
    QE_ERR_INTERNAL = 8
} qe_status;

typedef enum qe_scenario {
    QE_PURE_EXACT = 0,
    QE_PURE_FARFIELD,
    QE_TAGGED,
    QE_TAGGED_FARFIELD,
    QE_SX_UP,
    QE_SX_RIGHT,
    QE_SX_DOWN,
    QE_ERASER_ALPHA,
    QE_ERASER_BETA,
    QE_ERASER_GAMMA
} qe_scenario;

typedef struct qe_complex {
    double re;
    double im;
} qe_complex;

/* Uniform screen grid; x_i = xmin + i * (xmax - xmin) / (points - 1). */
typedef struct qe_grid {
    double xmin;
    double xmax;
    size_t points;
} qe_grid;

typedef struct qe_comparison {
    double linf_abs;
    double linf_rel;
    double l2;
    double x_at_max;
} qe_comparison;

typedef struct qe_oracle_report {
    double amplitude_linf_abs; /* worst over detector components */
    double amplitude_linf_rel;
    double amplitude_l2;
    double pattern_linf_rel;
    double norm_initial;
    double norm_analytic;
    double norm_spectral;
    qe_grid domain; /* padded grid the comparison ran on */
    int pass;
} qe_oracle_report;

typedef struct qe_state qe_state;
typedef struct qe_basis qe_basis;

QE_API const char *qe_version(void);
QE_API const char *qe_status_name(qe_status status);
QE_API const char *qe_last_error(void);

/* 0 restores the default (QERASER_THREADS or hardware concurrency). */
QE_API void qe_set_max_threads(size_t threads);

/* Evolution parameter a and derived quantities. */
QE_API qe_status qe_evolution_from_time(double t, double mass, double hbar, double *a);
QE_API qe_status qe_evolution_from_geometry(double wavelength, double distance, double *a);
QE_API qe_status qe_omega(double epsilon, double a, double *omega);
QE_API qe_status qe_density_prefactor(double epsilon, double a, double *prefactor);

/* n slits of spacing d and width parameter epsilon. amplitudes may be NULL
 * (equal, 1/sqrt(n)). tagged != 0 entangles slit k with detector state k. */
QE_API qe_status qe_state_create(size_t n, double spacing, double epsilon, const qe_complex *amplitudes,
                                 int tagged, qe_state **out);
QE_API void qe_state_destroy(qe_state *state);
QE_API qe_status qe_state_propagate(const qe_state *state, double a, qe_state **out);
QE_API qe_status qe_state_detector_dim(const qe_state *state, size_t *dim);
QE_API qe_status qe_state_norm_squared(const qe_state *state, double *norm);
/* Trapezoid integral of the marginal over every center +- 12 sqrt(omega). */
QE_API qe_status qe_state_total_probability(const qe_state *state, double *probability);
/* Writes detector_dim amplitudes at x; out_len must be at least detector_dim. */
QE_API qe_status qe_state_amplitude(const qe_state *state, double x, qe_complex *out, size_t out_len);
QE_API qe_status qe_state_intensity_at(const qe_state *state, double x, double *intensity);
/* values: grid.points doubles. */
QE_API qe_status qe_marginal_intensity(const qe_state *state, qe_grid grid, double *values);

QE_API qe_status qe_basis_computational(size_t n, qe_basis **out);
QE_API qe_status qe_basis_sx3(qe_basis **out);
QE_API qe_status qe_basis_eraser(size_t n, qe_basis **out);
/* rows: n*n entries, row-major; row j is readout state j. */
QE_API qe_status qe_basis_custom(size_t n, const qe_complex *rows, qe_basis **out);
QE_API qe_status qe_basis_random(size_t n, uint64_t seed, qe_basis **out);
QE_API qe_status qe_basis_multiply(const qe_basis *lhs, const qe_basis *rhs, qe_basis **out);
QE_API void qe_basis_destroy(qe_basis *basis);
QE_API qe_status qe_basis_dim(const qe_basis *basis, size_t *dim);
QE_API qe_status qe_basis_entry(const qe_basis *basis, size_t row, size_t col, qe_complex *entry);
/* Short outcome name ("alpha", "up", ...); owned by the basis. */
QE_API qe_status qe_basis_label(const qe_basis *basis, size_t row, const char **label);

QE_API qe_status qe_project(const qe_state *state, const qe_basis *basis, size_t index, qe_state **out);
QE_API qe_status qe_outcome_probability(const qe_state *state, const qe_basis *basis, size_t index,
                                        double *probability);
/* values: dim * grid.points doubles, outcome-major. */
QE_API qe_status qe_joint_patterns(const qe_state *state, const qe_basis *basis, qe_grid grid, int normalize,
                                   double *values);

/* out_of_regime may be NULL. */
QE_API qe_status qe_closed_form(qe_scenario scenario, double d, double epsilon, double a, qe_grid grid,
                                double *values, int *out_of_regime);
QE_API qe_status qe_visibility(qe_grid grid, const double *pattern, const double *baseline, double fringe_period,
                               double *visibility);
/* amplitudes may be NULL (equal). values: grid.points doubles, signed. */
QE_API qe_status qe_sorkin(double spacing, double epsilon, const qe_complex *amplitudes, double a, qe_grid grid,
                           double *values);
QE_API qe_status qe_compare(qe_grid grid, const double *p, const double *q, qe_comparison *out);
/* state is the state before evolution; grid.points must be a power of two. */
QE_API qe_status qe_cross_validate(const qe_state *state, double a, qe_grid grid, qe_oracle_report *out);

#ifdef __cplusplus
}
#endif

#endif
