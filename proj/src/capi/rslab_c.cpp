#include "rslab/rslab.h"

#include "rslab/conductor.hpp"
#include "rslab/error.hpp"
#include "rslab/fields.hpp"
#include "rslab/lseries.hpp"
#include "rslab/modular.hpp"
#include "rslab/perron.hpp"
#include "rslab/reps.hpp"
#include "rslab/sieve.hpp"
#include "rslab/zerofree.hpp"

#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>

struct rslab_primes {
  rslab::PrimeTable table;
};

struct rslab_rep {
  rslab::Rep rep;
};

struct rslab_edge {
  std::unique_ptr<rslab::EdgeEvaluator> evaluator;
  rslab::TabulatedEdgeEvaluator* table = nullptr;
};

namespace {

using namespace rslab;

constexpr double kDefaultEdgeTol = 1e-10;

thread_local std::string last_error;

int code_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Argument: return RSLAB_ARGUMENT;
    case ErrorKind::Domain: return RSLAB_DOMAIN;
    case ErrorKind::Data: return RSLAB_DATA;
    case ErrorKind::Resource: return RSLAB_RESOURCE;
    case ErrorKind::Numeric: return RSLAB_NUMERIC;
    case ErrorKind::Pole: return RSLAB_POLE;
  }
  return RSLAB_INTERNAL;
}

template <class F>
int guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return RSLAB_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return code_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RSLAB_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RSLAB_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return RSLAB_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  require(p != nullptr, ErrorKind::Argument, std::string(name) + " is null");
}

template <std::size_t N>
void copy_label(char (&dst)[N], const std::string& src) {
  std::snprintf(dst, N, "%s", src.c_str());
}

NumberField field_of(std::int64_t d) {
  return d == 0 ? NumberField::rationals() : NumberField::quadratic(d);
}

SmoothWeight weight_of(rslab_profile p) { return SmoothWeight(p.a, p.b); }

// Owns a fallback evaluator when the caller passes none.
struct EdgeRef {
  std::optional<ZetaEdgeEvaluator> fallback;
  const EdgeEvaluator* ptr = nullptr;

  explicit EdgeRef(const rslab_edge* edge) {
    if (edge) {
      ptr = edge->evaluator.get();
    } else {
      fallback.emplace(kDefaultEdgeTol);
      ptr = &*fallback;
    }
  }
  const EdgeEvaluator& operator*() const { return *ptr; }
};

WeilParameter weil_from(const rslab_weil& w) {
  const Complex nu(w.nu_re, w.nu_im);
  switch (w.kind) {
    case RSLAB_COMPLEX_CHAR: return WeilParameter::complex_char(w.k, nu);
    case RSLAB_REAL_ONE_DIM: return WeilParameter::real_one_dim(w.epsilon, nu);
    case RSLAB_REAL_TWO_DIM: return WeilParameter::real_two_dim(w.k, nu);
    default: fail(ErrorKind::Argument, "unknown parameter kind " + std::to_string(w.kind));
  }
}

rslab_weil weil_to(const WeilParameter& p) {
  rslab_weil w{};
  switch (p.kind) {
    case WeilParameter::Kind::ComplexChar: w.kind = RSLAB_COMPLEX_CHAR; break;
    case WeilParameter::Kind::RealOneDim: w.kind = RSLAB_REAL_ONE_DIM; break;
    case WeilParameter::Kind::RealTwoDim: w.kind = RSLAB_REAL_TWO_DIM; break;
  }
  w.k = p.k;
  w.epsilon = p.epsilon;
  w.nu_re = p.nu.real();
  w.nu_im = p.nu.imag();
  return w;
}

rslab_reduction reduction_to(const ReductionCheck& c) {
  return {c.lhs, c.rhs, c.ratio, c.satisfied ? 1 : 0};
}

rslab_sweep_sample sample_to(const SweepSample& s) {
  rslab_sweep_sample o{};
  o.phi = weil_to(s.phi);
  o.phi_prime = weil_to(s.phi_prime);
  o.t = s.t;
  o.check = reduction_to(s.check);
  o.dimension_ok = s.tensor_dimension_ok;
  o.symmetric = s.symmetric;
  o.sqrt3_applicable = s.sqrt3_applicable;
  o.sqrt3_first_ok = s.sqrt3_phi.first_holds && s.sqrt3_phi_prime.first_holds;
  o.sqrt3_second_ok = s.sqrt3_phi.second_holds && s.sqrt3_phi_prime.second_holds;
  return o;
}

}  // namespace

extern "C" {

const char* rslab_version(void) { return "0.1.0"; }

const char* rslab_status_name(int status) {
  switch (status) {
    case RSLAB_OK: return "ok";
    case RSLAB_ARGUMENT: return "argument";
    case RSLAB_DOMAIN: return "domain";
    case RSLAB_DATA: return "data";
    case RSLAB_RESOURCE: return "resource";
    case RSLAB_NUMERIC: return "numeric";
    case RSLAB_POLE: return "pole";
    case RSLAB_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rslab_last_error(void) { return last_error.c_str(); }

int rslab_primes_new(uint64_t capacity, rslab_primes** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rslab_primes{PrimeTable(capacity)};
  });
}

void rslab_primes_free(rslab_primes* primes) { delete primes; }

int rslab_rep_trivial(int64_t field_d, rslab_rep** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rslab_rep{Rep::trivial(field_of(field_d))};
  });
}

int rslab_rep_dirichlet(uint64_t modulus, uint64_t index, rslab_rep** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rslab_rep{Rep::dirichlet(modulus, index)};
  });
}

int rslab_rep_delta(uint64_t cutoff, rslab_rep** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rslab_rep{Rep::delta(cutoff)};
  });
}

int rslab_rep_newform_file(const char* path, rslab_rep** out) {
  return guarded([&] {
    need(out, "out");
    need(path, "path");
    *out = new rslab_rep{Rep::newform(read_ap_table(path))};
  });
}

void rslab_rep_free(rslab_rep* rep) { delete rep; }

int rslab_rep_get_info(const rslab_rep* rep, rslab_rep_info* out) {
  return guarded([&] {
    need(rep, "rep");
    need(out, "out");
    *out = rslab_rep_info{};
    out->rank = rep->rep.rank();
    out->field_degree = rep->rep.field().degree();
    out->self_dual = rep->rep.self_dual();
    out->coefficient_cutoff = rep->rep.coefficient_cutoff();
    copy_label(out->label, rep->rep.label());
  });
}

int rslab_edge_zeta(double tol, rslab_edge** out) {
  return guarded([&] {
    need(out, "out");
    require(tol > 0.0, ErrorKind::Argument, "tolerance must be positive");
    auto edge = std::make_unique<rslab_edge>();
    edge->evaluator = std::make_unique<ZetaEdgeEvaluator>(tol);
    *out = edge.release();
  });
}

int rslab_edge_table(const rslab_rep* rep, double gamma_m1, double gamma_0, double L1_ad,
                     double L1_ad_prime, double error, rslab_edge** out) {
  return guarded([&] {
    need(rep, "rep");
    need(out, "out");
    auto edge = std::make_unique<rslab_edge>();
    auto table = std::make_unique<TabulatedEdgeEvaluator>(rep->rep.key(), gamma_m1, gamma_0, L1_ad,
                                                          L1_ad_prime, error);
    edge->table = table.get();
    edge->evaluator = std::move(table);
    *out = edge.release();
  });
}

int rslab_edge_add(rslab_edge* edge, double t, double L_re, double L_im, double L_prime_re,
                   double L_prime_im) {
  return guarded([&] {
    need(edge, "edge");
    require(edge->table != nullptr, ErrorKind::Argument, "edge is not a table");
    edge->table->add(t, Complex(L_re, L_im), Complex(L_prime_re, L_prime_im));
  });
}

void rslab_edge_free(rslab_edge* edge) { delete edge; }

int rslab_sieve_report(const rslab_primes* primes, const rslab_rep* rep, double Y, double t,
                       double C, double threshold, rslab_sieve_row* out) {
  return guarded([&] {
    need(primes, "primes");
    need(rep, "rep");
    need(out, "out");
    const double A = threshold > 0.0 ? threshold : kDefaultSieveThreshold;
    const SieveReport r = sieve_report(primes->table, rep->rep, Y, t, C, A);
    *out = rslab_sieve_row{};
    out->Y = r.Y;
    out->t = r.t;
    out->C = r.C;
    out->tauberian_sum = r.tauberian.sum;
    out->tauberian_ratio = r.tauberian.ratio_to_Y;
    out->tauberian_ideals = r.tauberian.ideals;
    out->density_count = r.density.count;
    out->density_total = r.density.total;
    out->density_floor = r.density.paper_floor;
    out->density_ratio = r.density.ratio;
    out->density_ok = r.density.meets_floor;
    out->small_angle_applicable = r.small_angle_applicable;
    out->small_angle_count = r.small_angle.count;
    out->small_angle_bound = r.small_angle.paper_bound;
    out->small_angle_ok = r.small_angle.satisfied;
    out->lemma_applicable = r.lemma_applicable;
    out->lemma_lhs = r.lemma.lhs;
    out->lemma_ratio = r.lemma.ratio;
    out->combined_count = r.combined.count;
    out->combined_lhs = r.combined.lhs;
    out->combined_minorant = r.combined.minorant;
    out->combined_ok = r.combined.satisfied;
  });
}

int rslab_brun_titchmarsh(const rslab_primes* primes, int64_t field_d, double x, double y,
                          rslab_bt_row* out) {
  return guarded([&] {
    need(primes, "primes");
    need(out, "out");
    const auto m = primes->table.brun_titchmarsh_margin(field_of(field_d), x, y);
    *out = rslab_bt_row{x, y, m.count, m.bound, m.satisfied};
  });
}

int rslab_perron(const rslab_primes* primes, const rslab_rep* rep, double t, const double* Ys,
                 size_t count, rslab_profile profile, const rslab_edge* edge, rslab_perron_row* rows,
                 rslab_perron_summary* summary) {
  return guarded([&] {
    need(primes, "primes");
    need(rep, "rep");
    need(Ys, "Ys");
    need(rows, "rows");
    const EdgeRef ev(edge);
    const ResidueData res = residues(rep->rep, t, *ev);
    const PerronTable table = perron_discrepancy(primes->table, rep->rep, t,
                                                 std::span(Ys, count), weight_of(profile), res);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const PerronRow& r = table.rows[i];
      rows[i] = rslab_perron_row{r.Y,
                                 r.F_direct,
                                 r.predicted.value,
                                 r.predicted.leading,
                                 r.predicted.linear,
                                 r.predicted.plus.real(),
                                 r.predicted.minus.real(),
                                 r.abs_diff,
                                 r.diff_over_Y,
                                 r.relative_gap,
                                 r.predicted.error,
                                 r.predicted.consistent};
    }
    if (summary)
      *summary = rslab_perron_summary{table.decreasing, res.r_minus2, res.r_minus1, res.error_bound};
  });
}

int rslab_mellin(rslab_profile profile, double sigma, double tau, rslab_mellin_value* out) {
  return guarded([&] {
    need(out, "out");
    const MellinValue v = mellin(weight_of(profile), Complex(sigma, tau));
    *out = rslab_mellin_value{v.value.real(), v.value.imag(), v.error};
  });
}

int rslab_conductor_v(double t, rslab_weil phi, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = conductor_v(t, weil_from(phi));
  });
}

int rslab_reduction_check(double t, rslab_weil phi, rslab_weil phi_prime, double C,
                          rslab_reduction* out) {
  return guarded([&] {
    need(out, "out");
    *out = reduction_to(check_reduction_inequality(t, weil_from(phi), weil_from(phi_prime), C));
  });
}

int rslab_reduction_sweep(int complex_place, uint64_t count, uint64_t seed, double C,
                          rslab_sweep_callback callback, void* user, rslab_sweep_summary* out) {
  return guarded([&] {
    need(out, "out");
    std::function<void(const SweepSample&)> each;
    if (callback)
      each = [&](const SweepSample& s) {
        const rslab_sweep_sample c = sample_to(s);
        callback(&c, user);
      };
    const SweepSummary s =
        reduction_sweep(complex_place ? Place::Complex : Place::Real, count, seed, C, each);
    *out = rslab_sweep_summary{};
    out->samples = s.samples;
    out->max_ratio = s.max_ratio;
    out->argmax = sample_to(s.argmax);
    out->reduction_failures = s.reduction_failures;
    out->dimension_failures = s.dimension_failures;
    out->symmetry_failures = s.symmetry_failures;
    out->sqrt3_checked = s.sqrt3_checked;
    out->sqrt3_first_failures = s.sqrt3_first_failures;
    out->sqrt3_second_failures = s.sqrt3_second_failures;
  });
}

int rslab_global_bounds_eval(const rslab_rep* pi, const rslab_rep* pi_prime, double t,
                             rslab_global_bounds* out) {
  return guarded([&] {
    need(pi, "pi");
    need(pi_prime, "pi_prime");
    need(out, "out");
    const GlobalBounds g =
        global_conductor_bounds(descriptor_of(pi->rep), descriptor_of(pi_prime->rep), t);
    *out = rslab_global_bounds{g.n,           g.n_prime,     g.degree,      g.finite_lhs,
                               g.finite_rhs,  g.finite_holds, g.arch_lhs,   g.arch_base,
                               g.implied_C1,  g.log_aux_lhs, g.log_aux_rhs, g.aux_holds};
  });
}

int rslab_pole_order(const rslab_rep* pi, const rslab_rep* pi_prime, double t,
                     rslab_rs_factor* factors, size_t capacity, rslab_pole_info* out) {
  return guarded([&] {
    need(pi, "pi");
    need(pi_prime, "pi_prime");
    need(out, "out");
    const RSFactorization f = rs_factorize(build_appendix_pi(pi->rep, pi_prime->rep, t));
    const RSFactorization aux = rs_factorize(build_auxiliary_pi(pi->rep, t));
    *out = rslab_pole_info{};
    out->m = f.pole_order;
    out->m_aux = aux.pole_order;
    out->factors = f.factors.size();
    out->pi_self_dual = pi->rep.self_dual();
    out->same_rep = pi->rep.key() == pi_prime->rep.key();
    if (factors) {
      require(capacity >= f.factors.size(), ErrorKind::Resource,
              "factor buffer holds " + std::to_string(capacity) + ", need " +
                  std::to_string(f.factors.size()));
      for (std::size_t i = 0; i < f.factors.size(); ++i) {
        const RSFactor& x = f.factors[i];
        factors[i] = rslab_rs_factor{};
        factors[i].i = static_cast<int>(x.i);
        factors[i].j = static_cast<int>(x.j);
        factors[i].net_shift = x.net_shift;
        factors[i].contributes_pole = x.contributes_pole;
        copy_label(factors[i].left, x.left_key);
        copy_label(factors[i].right, x.right_key);
      }
    }
  });
}

const char* rslab_width_status_name(int status) {
  switch (status) {
    case 0: return to_string(WidthStatus::Bounded);
    case 1: return to_string(WidthStatus::Vacuous);
    case 2: return to_string(WidthStatus::NoZeroPossible);
  }
  return "unknown";
}

int rslab_width_solve(double c, double A, double logQ, double gamma, double c0, rslab_width* out) {
  return guarded([&] {
    need(out, "out");
    const double q = logQ > 0.0 ? logQ : default_logQ(gamma);
    const WidthResult r = width_solver(c, A, q, gamma, c0);
    int status = 0;
    if (r.status == WidthStatus::Vacuous) status = 1;
    if (r.status == WidthStatus::NoZeroPossible) status = 2;
    *out = rslab_width{status,   r.sigma,        r.lower,        r.denominator,
                       r.beta_max, r.one_minus_beta, r.scaled_width, r.residual};
  });
}

int rslab_lower_scan(const rslab_primes* primes, const rslab_rep* rep, const double* ts,
                     size_t t_count, const double* offsets, size_t offset_count, uint64_t cutoff,
                     rslab_scan_row* rows, double* min_ratio) {
  return guarded([&] {
    need(primes, "primes");
    need(rep, "rep");
    need(ts, "ts");
    need(offsets, "offsets");
    need(rows, "rows");
    const ScanTable s = lower_bound_scan(primes->table, rep->rep, std::span(ts, t_count),
                                         std::span(offsets, offset_count), cutoff);
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      const ScanRow& r = s.rows[i];
      rows[i] = rslab_scan_row{r.t,     r.offset,     r.sigma, r.value, r.error,
                               r.lower, r.comparator, r.ratio, r.zeta};
    }
    if (min_ratio) *min_ratio = s.min_ratio;
  });
}

int rslab_lower_chain(const rslab_primes* primes, const rslab_rep* rep, double t, const double* Ys,
                   size_t count, rslab_profile profile, const rslab_edge* edge,
                   rslab_chain_row* rows, rslab_chain_summary* summary) {
  return guarded([&] {
    need(primes, "primes");
    need(rep, "rep");
    need(Ys, "Ys");
    need(rows, "rows");
    const EdgeRef ev(edge);
    const LowerBoundChain c =
        lower_bound_chain(primes->table, rep->rep, t, std::span(Ys, count), weight_of(profile), *ev);
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      const ChainRow& r = c.rows[i];
      rows[i] = rslab_chain_row{r.Y, r.F, r.upper_shape, r.implied, r.informative};
    }
    if (summary)
      *summary = rslab_chain_summary{c.t, c.L_abs, c.L_error, c.K, c.comparator, c.best_implied};
  });
}

int rslab_goli(const rslab_rep* rep, const double* ts, size_t count, const rslab_edge* edge,
               rslab_goli_row* rows, size_t* written) {
  return guarded([&] {
    need(rep, "rep");
    need(ts, "ts");
    need(rows, "rows");
    need(written, "written");
    const EdgeRef ev(edge);
    const auto g = goli_bound_check(rep->rep, std::span(ts, count), *ev);
    for (std::size_t i = 0; i < g.size(); ++i)
      rows[i] = rslab_goli_row{g[i].t,        g[i].L_abs,    g[i].L_prime_abs,
                               g[i].ratio_L,  g[i].ratio_L_prime, g[i].ratio_r2,
                               g[i].ratio_r1, g[i].ratio_rpm};
    *written = g.size();
  });
}

int rslab_logderiv_terms(const rslab_primes* primes, const rslab_rep* rep, double t, double sigma,
                         uint64_t cutoff, rslab_term_row* rows, size_t capacity, size_t* count) {
  return guarded([&] {
    need(primes, "primes");
    need(rep, "rep");
    need(count, "count");
    const auto terms =
        neg_logderiv_terms(primes->table, build_auxiliary_pi(rep->rep, t), sigma, cutoff);
    *count = terms.size();
    if (!rows) return;
    require(capacity >= terms.size(), ErrorKind::Resource,
            "term buffer holds " + std::to_string(capacity) + ", need " +
                std::to_string(terms.size()));
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const SeriesTerm& s = terms[i];
      rows[i] = rslab_term_row{s.norm, s.p, s.k, s.term, s.partial_sum, s.tail_bound};
    }
  });
}

int rslab_write_delta_table(uint64_t cutoff, const char* path) {
  return guarded([&] {
    need(path, "path");
    require(cutoff >= 2 && cutoff <= std::numeric_limits<std::uint32_t>::max(),
            ErrorKind::Argument, "cutoff must lie in [2, 2^32)");
    write_ap_table(std::string(path), delta_ap_table(cutoff));
  });
}

int rslab_tau(uint64_t n, char* buf, size_t size) {
  return guarded([&] {
    need(buf, "buf");
    require(n >= 1, ErrorKind::Argument, "n must be positive");
    const std::string s = to_string(ramanujan_tau(n)[n]);
    require(s.size() < size, ErrorKind::Resource, "buffer too small for tau(n)");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

}  // extern "C"
