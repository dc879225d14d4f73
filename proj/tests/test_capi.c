#include "rslab/rslab.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void count_samples(const rslab_sweep_sample* s, void* user) {
  if (s->check.ratio > 0.0) ++*(unsigned long*)user;
}

int main(void) {
  EXPECT(strcmp(rslab_version(), "0.1.0") == 0);
  EXPECT(strcmp(rslab_status_name(RSLAB_DATA), "data") == 0);

  rslab_primes* primes = NULL;
  EXPECT(rslab_primes_new(200000, &primes) == RSLAB_OK);

  rslab_rep* triv = NULL;
  EXPECT(rslab_rep_trivial(0, &triv) == RSLAB_OK);
  rslab_rep_info info;
  EXPECT(rslab_rep_get_info(triv, &info) == RSLAB_OK);
  EXPECT(info.rank == 1 && info.field_degree == 1 && info.self_dual == 1);

  rslab_rep* bad = NULL;
  EXPECT(rslab_rep_dirichlet(15, 1, &bad) == RSLAB_ARGUMENT);
  EXPECT(bad == NULL);
  EXPECT(strlen(rslab_last_error()) > 0);
  EXPECT(rslab_rep_get_info(NULL, &info) == RSLAB_ARGUMENT);
  EXPECT(rslab_rep_newform_file("/nonexistent/table.csv", &bad) != RSLAB_OK);

  rslab_sieve_row row;
  EXPECT(rslab_sieve_report(primes, triv, 1e5, 10.0, 0.1, 0.0, &row) == RSLAB_OK);
  EXPECT(strlen(rslab_last_error()) == 0);
  EXPECT(row.small_angle_applicable && row.small_angle_ok);
  EXPECT(rslab_sieve_report(primes, triv, 1e7, 10.0, 0.1, 0.0, &row) == RSLAB_RESOURCE);

  rslab_bt_row bt;
  EXPECT(rslab_brun_titchmarsh(primes, 0, 1e5, 1e3, &bt) == RSLAB_OK);
  EXPECT(bt.satisfied && bt.count > 0);

  const double Ys[] = {1e3, 1e4};
  rslab_perron_row prow[2];
  rslab_perron_summary psum;
  const rslab_profile profile = {0.5, 2.5};
  EXPECT(rslab_perron(primes, triv, 1.0, Ys, 2, profile, NULL, prow, &psum) == RSLAB_OK);
  EXPECT(psum.decreasing == 1);
  EXPECT(fabs(prow[1].F_direct - prow[1].F_predicted) < 0.01 * prow[1].F_direct);

  rslab_mellin_value mv;
  EXPECT(rslab_mellin(profile, 1.0, 0.0, &mv) == RSLAB_OK);
  EXPECT(fabs(mv.re - 1.5) < 1e-12);

  const rslab_weil r2 = {RSLAB_REAL_TWO_DIM, 3, 1, 0.0, 0.0};
  double q = 0.0;
  EXPECT(rslab_conductor_v(0.0, r2, &q) == RSLAB_OK);
  EXPECT(fabs(q - 6.25) < 1e-12);
  const rslab_weil broken = {RSLAB_REAL_TWO_DIM, 0, 1, 0.0, 0.0};
  EXPECT(rslab_conductor_v(0.0, broken, &q) == RSLAB_ARGUMENT);

  unsigned long seen = 0;
  rslab_sweep_summary sum;
  EXPECT(rslab_reduction_sweep(1, 500, 9, 9.0, count_samples, &seen, &sum) == RSLAB_OK);
  EXPECT(seen == 500 && sum.samples == 500);

  rslab_rep* delta = NULL;
  EXPECT(rslab_rep_delta(2000, &delta) == RSLAB_OK);
  rslab_pole_info pole;
  rslab_rs_factor factors[16];
  EXPECT(rslab_pole_order(delta, delta, 0.0, factors, 16, &pole) == RSLAB_OK);
  EXPECT(pole.m == 9 && pole.m_aux == 4);
  EXPECT(pole.factors == 9);
  EXPECT(rslab_pole_order(delta, delta, 0.0, factors, 2, &pole) == RSLAB_RESOURCE);

  rslab_global_bounds gb;
  EXPECT(rslab_global_bounds_eval(triv, triv, 1.0, &gb) == RSLAB_OK);
  EXPECT(gb.finite_holds && gb.aux_holds);
  EXPECT(fabs(gb.implied_C1 - 1.5) < 1e-12);

  rslab_width w;
  EXPECT(rslab_width_solve(1.0, 1.0, 0.0, 100.0, 0.1, &w) == RSLAB_OK);
  EXPECT(w.status == 0 && w.residual < 1e-12);
  EXPECT(strcmp(rslab_width_status_name(1), "no constraint") == 0);

  const double ts[] = {1.0, 2.0};
  const double offs[] = {0.0};
  rslab_scan_row scan[2];
  double min_ratio = 0.0;
  EXPECT(rslab_lower_scan(primes, triv, ts, 2, offs, 1, 100000, scan, &min_ratio) == RSLAB_OK);
  EXPECT(scan[0].zeta && min_ratio > 0.8);

  size_t count = 0;
  EXPECT(rslab_logderiv_terms(primes, triv, 1.0, 2.0, 100, NULL, 0, &count) == RSLAB_OK);
  EXPECT(count == 35); /* prime powers <= 100 */
  rslab_term_row* terms = malloc(count * sizeof *terms);
  EXPECT(rslab_logderiv_terms(primes, triv, 1.0, 2.0, 100, terms, count, &count) == RSLAB_OK);
  EXPECT(terms[0].norm == 2 && terms[0].k == 1);
  free(terms);

  char buf[64];
  EXPECT(rslab_tau(2, buf, sizeof buf) == RSLAB_OK && strcmp(buf, "-24") == 0);
  EXPECT(rslab_tau(7, buf, sizeof buf) == RSLAB_OK && strcmp(buf, "-16744") == 0);

  const char* path = "capi_delta_table.csv";
  EXPECT(rslab_write_delta_table(500, path) == RSLAB_OK);
  rslab_rep* loaded = NULL;
  EXPECT(rslab_rep_newform_file(path, &loaded) == RSLAB_OK);
  EXPECT(rslab_rep_get_info(loaded, &info) == RSLAB_OK && info.rank == 2);
  remove(path);

  rslab_rep_free(loaded);
  rslab_rep_free(delta);
  rslab_rep_free(triv);
  rslab_primes_free(primes);
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
