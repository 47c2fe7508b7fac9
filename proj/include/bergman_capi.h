/* C interface to the Bergman-space diagnostics library.
 *
 * Conventions:
 *   - Every function returns a status code (BGM_OK = 0 on success); outputs
 *     go through pointer arguments.
 *   - On failure, bgm_last_error() returns a thread-local message describing
 *     what was rejected.
 *   - Objects are opaque handles created/freed by the matching pair of
 *     functions. Strings returned through char** are heap-allocated and must
 *     be released with bgm_string_free().
 */
#ifndef BERGMAN_CAPI_H
#define BERGMAN_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BGM_OK 0
#define BGM_ERR_INVALID_ARGUMENT 1
#define BGM_ERR_DOMAIN 2
#define BGM_ERR_NOT_CONVERGED 3
#define BGM_ERR_ILL_CONDITIONED 4
#define BGM_ERR_IO 5
#define BGM_ERR_UNKNOWN_NAME 6
#define BGM_ERR_INTERNAL 7

const char* bgm_version(void);
const char* bgm_last_error(void);
void bgm_string_free(char* s);

/* ---- scalar diagnostics -------------------------------------------- */

/* m > p (2+alpha)/(1+alpha) max{1, 1/(p-1)}; requires p > 1. */
int bgm_m_threshold(double p, double alpha, double* out);

/* Small-exponent threshold (0 < p <= 1) and the weight exponent beta. */
int bgm_m_threshold_small_p(double p, double alpha, double delta, double* threshold,
                            double* beta_exponent);

/* regime: 0 = inapplicable, 1 = case (a), 2 = case (b). */
int bgm_pq_regime(double p, double q, double m, double alpha, int* regime, double* window_lo,
                  double* window_hi);

int bgm_gamma(double x, double* out);

/* ---- geometry ------------------------------------------------------- */

int bgm_mobius(double z_re, double z_im, double w_re, double w_im, double* out_re, double* out_im);
int bgm_bergman_metric(double z_re, double z_im, double w_re, double w_im, double* out);

/* ---- quadrature grids ------------------------------------------------ */

typedef struct bgm_grid bgm_grid;
int bgm_grid_create(double alpha, int n_rad, int n_ang, bgm_grid** out);
void bgm_grid_free(bgm_grid* grid);
int bgm_integrate_mass(const bgm_grid* grid, double* out);
int bgm_kernel_norm(const bgm_grid* grid, double z_re, double z_im, double p, double* out);

/* I_{c,t}(z) with adaptive refinement; converged reports the cap status. */
int bgm_ict(double z_re, double z_im, double c, double t, double tol, double* value,
            double* err_est, int* converged);
int bgm_ict_bounds(double z_re, double z_im, double c, double t, double* lower, double* upper);

/* ---- lattices --------------------------------------------------------- */

typedef struct bgm_lattice bgm_lattice;
int bgm_lattice_build(double r, double r_max, bgm_lattice** out);
void bgm_lattice_free(bgm_lattice* lat);
int bgm_lattice_count(const bgm_lattice* lat, int* out);
int bgm_lattice_center(const bgm_lattice* lat, int k, double* re, double* im);
int bgm_lattice_export(const bgm_lattice* lat, char** text_out);
int bgm_lattice_import(const char* text, bgm_lattice** out);
int bgm_lattice_verify(const bgm_lattice* lat, int n_samples, uint64_t seed, double* worst_gap,
                       double* min_separation, int* pass);
int bgm_lattice_sum(const bgm_lattice* lat, double t1, double t2, double w_re, double w_im,
                    double* value, double* tail_estimate);

/* ---- operators -------------------------------------------------------- */

/* Selector micro-syntax: "identity", "toeplitz:one", "toeplitz:oneminusr2",
 * "toeplitz:halfdisk", "toeplitz:radialpow:<k>", "diagonal:one",
 * "diagonal:inv_n", "diagonal:const:<c>", "rankone". */
typedef struct bgm_operator bgm_operator;
int bgm_operator_create(const char* selector, bgm_operator** out);
void bgm_operator_free(bgm_operator* op);

/* Berezin transform <S k_z, k_z> via the quadrature pairing. */
int bgm_berezin(const bgm_operator* op, const bgm_grid* grid, double z_re, double z_im,
                double alpha, double* out_re, double* out_im);

/* ||S_z 1||_{m,alpha}. */
int bgm_sz1_norm(const bgm_operator* op, const bgm_grid* grid, double z_re, double z_im, double m,
                 double alpha, double* out);

/* ---- batch runs (the CLI back ends) ----------------------------------- */

/* Invariant suite by name; CSV written to csv_out. Returns BGM_OK even when
 * checks fail (n_failed carries the count); non-zero codes mean the run
 * itself could not proceed. */
int bgm_verify_run(const char* suite, uint64_t seed, int jobs, char** csv_out, int* n_checks,
                   int* n_failed);

/* Compactness boundary scan. Writes the serialized report (JSON and CSV) and
 * a one-line verdict. all_converged = 0 flags partial output. */
int bgm_scan_run(const char* op_selector, double p, double alpha, double m, int rays,
                 int radii_levels, int n_rad, int n_ang, int jobs, char** json_out, char** csv_out,
                 char** verdict_out, int* all_converged, int* compact_consistent);

/* Atomic decomposition run: expansion record, reconstruction-error table
 * (CSV over a radius grid), coefficient-norm ratio and solver residual.
 * ill_conditioned = 1 flags a failed solve (residual above threshold). */
int bgm_atomic_run(const char* f_selector, double p, double alpha, double r, double r_max,
                   double reg, int jobs, char** expansion_out, char** table_csv_out,
                   double* coeff_ratio, double* residual, int* ill_conditioned,
                   double* max_rel_error);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BERGMAN_CAPI_H */
