/*
 * absolve: bound states of a spin-1/2 particle in an Aharonov-Bohm flux with
 * an attractive Coulomb potential in a rotating frame.
 *
 * Plain C interface over the C++ core. Every fallible call returns an
 * absolve_status; on failure absolve_last_error() describes the problem for
 * the calling thread. Handles are opaque and must be released with the
 * matching *_destroy function. All functions are reentrant; a handle may be
 * shared between threads for reading.
 */
#ifndef ABSOLVE_H
#define ABSOLVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ABSOLVE_BUILDING_LIBRARY)
#    define ABSOLVE_API __declspec(dllexport)
#  else
#    define ABSOLVE_API __declspec(dllimport)
#  endif
#else
#  define ABSOLVE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum absolve_status {
  ABSOLVE_OK = 0,
  ABSOLVE_ERR_INVALID_ARGUMENT = 1,
  ABSOLVE_ERR_POLE = 2,
  ABSOLVE_ERR_DOMAIN = 3,
  ABSOLVE_ERR_SECTOR = 4,       /* irregular solution requested with |j| >= 1/2 */
  ABSOLVE_ERR_EXISTENCE = 5,    /* energy not in the bound-state regime */
  ABSOLVE_ERR_CONVERGENCE = 6,
  ABSOLVE_ERR_RESOLUTION = 7,
  ABSOLVE_ERR_IO = 8,
  ABSOLVE_ERR_BUFFER_TOO_SMALL = 9,
  ABSOLVE_ERR_INTERNAL = 10
} absolve_status;

typedef enum absolve_branch {
  ABSOLVE_BRANCH_REGULAR = 0,   /* lambda = 0 */
  ABSOLVE_BRANCH_IRREGULAR = 1  /* lambda = infinity */
} absolve_branch;

typedef struct absolve_params {
  double mass;
  double hbar;
  double eta;    /* Coulomb strength, V = -eta / r */
  double omega;  /* rotation frequency */
} absolve_params;

/* Self-adjoint extension parameter; is_infinite selects lambda = infinity. */
typedef struct absolve_lambda {
  double value;
  int is_infinite;
} absolve_lambda;

typedef struct absolve_level {
  double energy;
  double kappa;
  double binding_energy;  /* Coulomb part */
  double rotation_shift;  /* -hbar omega (j + s/2) */
  double j;
  int exists;
} absolve_level;

typedef struct absolve_root {
  int index;  /* 1 = most bound */
  double kappa;
  double residual;
  double energy;
} absolve_root;

typedef struct absolve_state {
  int n;
  int m;
  int s;
  absolve_branch branch;
} absolve_state;

/* Physical parameters plus a decomposed flux. */
typedef struct absolve_model absolve_model;
/* Sampled bound-state wavefunction with its norm, nodes and boundary values. */
typedef struct absolve_profile absolve_profile;

ABSOLVE_API const char* absolve_version(void);
ABSOLVE_API const char* absolve_status_string(absolve_status status);
ABSOLVE_API const char* absolve_last_error(void);

ABSOLVE_API absolve_params absolve_atomic_units(void);

ABSOLVE_API absolve_status absolve_model_create(const absolve_params* params, double flux,
                                                absolve_model** out);
ABSOLVE_API void absolve_model_destroy(absolve_model* model);
ABSOLVE_API absolve_status absolve_model_params(const absolve_model* model,
                                                absolve_params* out);
/* flux = n_integer + beta with 0 <= beta < 1 (floor convention). */
ABSOLVE_API absolve_status absolve_model_flux(const absolve_model* model, double* flux,
                                              int64_t* n_integer, double* beta);

ABSOLVE_API double absolve_effective_j(int m, double flux);
ABSOLVE_API int absolve_is_singular_sector(double j);
/* Writes at most one m into m_out (capacity >= 1) and its count into *count. */
ABSOLVE_API absolve_status absolve_admissible_m(double flux, int* m_out, size_t* count);

/* Closed-form level; ABSOLVE_ERR_SECTOR for irregular states with |j| >= 1/2. */
ABSOLVE_API absolve_status absolve_energy(const absolve_model* model, absolve_state state,
                                          absolve_level* out);
ABSOLVE_API absolve_status absolve_kappa_of_energy(const absolve_model* model, double energy,
                                                   int m, int s, double* kappa);

/* group_ids[i] = index of the degenerate group holding states[i], or -1. */
ABSOLVE_API absolve_status absolve_degeneracy_groups(const absolve_model* model,
                                                     const absolve_state* states, size_t count,
                                                     double tolerance, int* group_ids);

/* Up to `count` most bound roots of the secular equation for angular momentum
 * m; energies use spin s. *found receives the number written. */
ABSOLVE_API absolve_status absolve_solve_secular(const absolve_model* model, int m, int s,
                                                 absolve_lambda lambda, size_t count,
                                                 absolve_root* roots, size_t* found);

/* Wavefunction of root `root_index` (1-based) sampled on `points` radii. */
ABSOLVE_API absolve_status absolve_bound_state_profile(const absolve_model* model, int m,
                                                       absolve_lambda lambda, int root_index,
                                                       size_t points, absolve_profile** out);
ABSOLVE_API void absolve_profile_destroy(absolve_profile* profile);
ABSOLVE_API size_t absolve_profile_size(const absolve_profile* profile);
ABSOLVE_API absolve_status absolve_profile_samples(const absolve_profile* profile, double* r,
                                                   double* value, size_t capacity);
ABSOLVE_API absolve_status absolve_profile_stats(const absolve_profile* profile, double* kappa,
                                                 double* norm, int* nodes);
/* f0, f1 and the relative violation of f0 = lambda f1 (f1 = 0 at infinity). */
ABSOLVE_API absolve_status absolve_profile_boundary(const absolve_profile* profile, double* f0,
                                                    double* f1, double* residual);

/* Finite-difference regular spectrum (two-grid Richardson); kappas most bound first. */
ABSOLVE_API absolve_status absolve_oracle_regular(const absolve_model* model, int m,
                                                  size_t n_max, double* kappas, size_t* found);

/* Runs the invariant suite and writes a JSON report
 *   {"checks": [{"name", "pass", "residual", "tolerance"}], "pass"}
 * into json (NUL terminated). only may be NULL; gamma_fault perturbs Gamma
 * in the Gamma checks. *needed receives the report size including the NUL;
 * ABSOLVE_ERR_BUFFER_TOO_SMALL when capacity is short. */
ABSOLVE_API absolve_status absolve_verify(const char* only, double gamma_fault, char* json,
                                          size_t capacity, size_t* needed, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif /* ABSOLVE_H */
