#ifndef RSLAB_H
#define RSLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define RSLAB_API __attribute__((visibility("default")))
#else
#define RSLAB_API
#endif

/* Status codes. Every fallible call returns one; the message is in rslab_last_error(). */
typedef enum rslab_status {
  RSLAB_OK = 0,
  RSLAB_ARGUMENT = 1,
  RSLAB_DOMAIN = 2,
  RSLAB_DATA = 3,
  RSLAB_RESOURCE = 4,
  RSLAB_NUMERIC = 5,
  RSLAB_POLE = 6,
  RSLAB_INTERNAL = 7
} rslab_status;

RSLAB_API const char* rslab_version(void);
RSLAB_API const char* rslab_status_name(int status);
/* Message of the last failure on this thread; empty after a successful call. */
RSLAB_API const char* rslab_last_error(void);

/* ---- handles ---------------------------------------------------------------------------- */

typedef struct rslab_primes rslab_primes;
typedef struct rslab_rep rslab_rep;
typedef struct rslab_edge rslab_edge;

RSLAB_API int rslab_primes_new(uint64_t capacity, rslab_primes** out);
RSLAB_API void rslab_primes_free(rslab_primes* primes);

/* field_d = 0 for Q, otherwise a squarefree d for Q(sqrt d). */
RSLAB_API int rslab_rep_trivial(int64_t field_d, rslab_rep** out);
RSLAB_API int rslab_rep_dirichlet(uint64_t modulus, uint64_t index, rslab_rep** out);
RSLAB_API int rslab_rep_delta(uint64_t cutoff, rslab_rep** out);
/* Reads an "ap-table v1" file. */
RSLAB_API int rslab_rep_newform_file(const char* path, rslab_rep** out);
RSLAB_API void rslab_rep_free(rslab_rep* rep);

typedef struct rslab_rep_info {
  int rank;
  int field_degree;
  int self_dual;
  uint64_t coefficient_cutoff; /* UINT64_MAX for closed forms */
  char label[64];
} rslab_rep_info;

RSLAB_API int rslab_rep_get_info(const rslab_rep* rep, rslab_rep_info* out);

/* Edge-line data L(1+it, pi x dual pi) for residues. */
RSLAB_API int rslab_edge_zeta(double tol, rslab_edge** out);
RSLAB_API int rslab_edge_table(const rslab_rep* rep, double gamma_m1, double gamma_0, double L1_ad,
                               double L1_ad_prime, double error, rslab_edge** out);
RSLAB_API int rslab_edge_add(rslab_edge* edge, double t, double L_re, double L_im,
                             double L_prime_re, double L_prime_im);
RSLAB_API void rslab_edge_free(rslab_edge* edge);

/* ---- sieve -------------------------------------------------------------------------------- */

typedef struct rslab_sieve_row {
  double Y, t, C;
  double tauberian_sum, tauberian_ratio;
  int64_t tauberian_ideals;
  int64_t density_count, density_total;
  double density_floor, density_ratio;
  int density_ok;
  int small_angle_applicable;
  int64_t small_angle_count;
  double small_angle_bound;
  int small_angle_ok;
  int lemma_applicable;
  double lemma_lhs, lemma_ratio;
  int64_t combined_count;
  double combined_lhs, combined_minorant;
  int combined_ok;
} rslab_sieve_row;

/* threshold <= 0 selects the default A in Y >= A (|t|+3)^2. */
RSLAB_API int rslab_sieve_report(const rslab_primes* primes, const rslab_rep* rep, double Y,
                                 double t, double C, double threshold, rslab_sieve_row* out);

typedef struct rslab_bt_row {
  double x, y;
  int64_t count;
  double bound;
  int satisfied;
} rslab_bt_row;

/* Brun-Titchmarsh over Q(sqrt field_d) (0 for Q): pi_F(x+y) - pi_F(x) <= 4 [F:Q] y / log y. */
RSLAB_API int rslab_brun_titchmarsh(const rslab_primes* primes, int64_t field_d, double x,
                                    double y, rslab_bt_row* out);

/* ---- perron ------------------------------------------------------------------------------- */

typedef struct rslab_profile {
  double a; /* support starts at a, 0 < a < 1 */
  double b; /* support ends at b, b > 2 */
} rslab_profile;

typedef struct rslab_perron_row {
  double Y;
  double F_direct;
  double F_predicted;
  double leading;      /* r_{-2} psi-hat(1) Y log Y */
  double linear;       /* (r_{-1} psi-hat(1) + r_{-2} psi-hat'(1)) Y */
  double plus_re;      /* Re r^+ psi-hat(1+it) Y^{1+it} */
  double minus_re;     /* Re r^- psi-hat(1-it) Y^{1-it} */
  double abs_diff;
  double diff_over_Y;
  double relative_gap;
  double error;
  int consistent;
} rslab_perron_row;

typedef struct rslab_perron_summary {
  int decreasing;
  double r_m2, r_m1;
  double residue_error;
} rslab_perron_summary;

/* rows has room for count entries. */
RSLAB_API int rslab_perron(const rslab_primes* primes, const rslab_rep* rep, double t,
                           const double* Ys, size_t count, rslab_profile profile,
                           const rslab_edge* edge, rslab_perron_row* rows,
                           rslab_perron_summary* summary);

typedef struct rslab_mellin_value {
  double re, im, error;
} rslab_mellin_value;

RSLAB_API int rslab_mellin(rslab_profile profile, double sigma, double tau, rslab_mellin_value* out);

/* ---- conductor ---------------------------------------------------------------------------- */

typedef enum rslab_weil_kind {
  RSLAB_COMPLEX_CHAR = 0,
  RSLAB_REAL_ONE_DIM = 1,
  RSLAB_REAL_TWO_DIM = 2
} rslab_weil_kind;

typedef struct rslab_weil {
  int kind;    /* rslab_weil_kind */
  int k;       /* ComplexChar / RealTwoDim */
  int epsilon; /* RealOneDim: +1 or -1 */
  double nu_re, nu_im;
} rslab_weil;

typedef struct rslab_reduction {
  double lhs, rhs, ratio;
  int satisfied;
} rslab_reduction;

RSLAB_API int rslab_conductor_v(double t, rslab_weil phi, double* out);
RSLAB_API int rslab_reduction_check(double t, rslab_weil phi, rslab_weil phi_prime, double C,
                                    rslab_reduction* out);

typedef struct rslab_sweep_sample {
  rslab_weil phi, phi_prime;
  double t;
  rslab_reduction check;
  int dimension_ok;
  int symmetric;
  int sqrt3_applicable;
  int sqrt3_first_ok, sqrt3_second_ok; /* both parameters */
} rslab_sweep_sample;

typedef struct rslab_sweep_summary {
  uint64_t samples;
  double max_ratio;
  rslab_sweep_sample argmax;
  uint64_t reduction_failures, dimension_failures, symmetry_failures;
  uint64_t sqrt3_checked, sqrt3_first_failures, sqrt3_second_failures;
} rslab_sweep_summary;

typedef void (*rslab_sweep_callback)(const rslab_sweep_sample* sample, void* user);

/* complex_place = 0 samples real-place parameters. callback may be NULL. */
RSLAB_API int rslab_reduction_sweep(int complex_place, uint64_t count, uint64_t seed, double C,
                                    rslab_sweep_callback callback, void* user,
                                    rslab_sweep_summary* out);

typedef struct rslab_global_bounds {
  int n, n_prime, degree;
  double finite_lhs, finite_rhs;
  int finite_holds;
  double arch_lhs, arch_base, implied_C1;
  double log_aux_lhs, log_aux_rhs;
  int aux_holds;
} rslab_global_bounds;

RSLAB_API int rslab_global_bounds_eval(const rslab_rep* pi, const rslab_rep* pi_prime, double t,
                                       rslab_global_bounds* out);

/* ---- poles -------------------------------------------------------------------------------- */

typedef struct rslab_rs_factor {
  int i, j;
  double net_shift;
  int contributes_pole;
  char left[64], right[64];
} rslab_rs_factor;

typedef struct rslab_pole_info {
  int m;          /* pole order of L(s, Pi x dual Pi) at s = 1 for the three-term Pi */
  int m_aux;      /* same for the auxiliary two-term Pi */
  size_t factors; /* factor count of the three-term Pi */
  int pi_self_dual, same_rep;
} rslab_pole_info;

/* factors may be NULL; otherwise it has room for capacity entries. */
RSLAB_API int rslab_pole_order(const rslab_rep* pi, const rslab_rep* pi_prime, double t,
                               rslab_rs_factor* factors, size_t capacity, rslab_pole_info* out);

/* ---- zero-free width and lower bounds ------------------------------------------------------ */

typedef struct rslab_width {
  int status; /* 0 bounded, 1 no constraint, 2 no zero possible */
  double sigma, lower, denominator, beta_max, one_minus_beta, scaled_width, residual;
} rslab_width;

RSLAB_API const char* rslab_width_status_name(int status);
/* logQ <= 0 selects 2 log(|gamma| + 3). */
RSLAB_API int rslab_width_solve(double c, double A, double logQ, double gamma, double c0,
                                rslab_width* out);

typedef struct rslab_scan_row {
  double t, offset, sigma, value, error, lower, comparator, ratio;
  int zeta;
} rslab_scan_row;

/* rows has room for t_count * offset_count entries, t-major. */
RSLAB_API int rslab_lower_scan(const rslab_primes* primes, const rslab_rep* rep, const double* ts,
                               size_t t_count, const double* offsets, size_t offset_count,
                               uint64_t cutoff, rslab_scan_row* rows, double* min_ratio);

typedef struct rslab_chain_row {
  double Y, F, upper_shape, implied;
  int informative;
} rslab_chain_row;

typedef struct rslab_chain_summary {
  double t, L_abs, L_error, K, comparator, best_implied;
} rslab_chain_summary;

RSLAB_API int rslab_lower_chain(const rslab_primes* primes, const rslab_rep* rep, double t,
                             const double* Ys, size_t count, rslab_profile profile,
                             const rslab_edge* edge, rslab_chain_row* rows,
                             rslab_chain_summary* summary);

typedef struct rslab_goli_row {
  double t, L_abs, L_prime_abs;
  double ratio_L, ratio_L_prime, ratio_r2, ratio_r1, ratio_rpm;
} rslab_goli_row;

/* t = 0 entries are skipped; *written receives the row count. */
RSLAB_API int rslab_goli(const rslab_rep* rep, const double* ts, size_t count,
                         const rslab_edge* edge, rslab_goli_row* rows, size_t* written);

typedef struct rslab_term_row {
  uint64_t norm, p;
  int k;
  double term, partial_sum, tail_bound;
} rslab_term_row;

/* Terms of -L'/L(sigma, Pi x dual Pi) for the auxiliary Pi at t. Two-pass: call with rows = NULL
   to get *count, then again with capacity >= *count. */
RSLAB_API int rslab_logderiv_terms(const rslab_primes* primes, const rslab_rep* rep, double t,
                                   double sigma, uint64_t cutoff, rslab_term_row* rows,
                                   size_t capacity, size_t* count);

/* ---- data --------------------------------------------------------------------------------- */

RSLAB_API int rslab_write_delta_table(uint64_t cutoff, const char* path);
RSLAB_API int rslab_tau(uint64_t n, char* buf, size_t size);

#ifdef __cplusplus
}
#endif

#endif
