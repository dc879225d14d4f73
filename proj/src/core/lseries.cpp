#include "rslab/lseries.hpp"

#include "rslab/error.hpp"
#include "rslab/summation.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace rslab {

std::vector<Complex> satake_multiset(const IsobaricSum& sum, const PrimeIdeal& P) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(sum.total_rank()));
  const double log_norm = std::log(static_cast<double>(P.norm));
  for (const auto& c : sum.components()) {
    const Complex twist = std::polar(1.0, -c.shift * log_norm);
    for (const Complex& alpha : c.rep.satake(P)) out.push_back(alpha * twist);
  }
  return out;
}

LocalRS rs_local(const IsobaricSum& sum, const PrimeIdeal& P, int kmax) {
  require(kmax >= 0 && kmax <= kMaxPrimePower, ErrorKind::Argument,
          "prime power exponent exceeds configured max " + std::to_string(kMaxPrimePower));
  if (sum.ramified_at(P.p))
    fail(ErrorKind::Domain, "prime " + std::to_string(P.p) + " excluded by S_pi");
  const auto beta = satake_multiset(sum, P);

  LocalRS out;
  out.power_sum_sq.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
  std::vector<Complex> powers(beta.size(), Complex(1.0, 0.0));
  for (int k = 1; k <= kmax; ++k) {
    Complex pk(0.0, 0.0);
    for (std::size_t j = 0; j < beta.size(); ++j) {
      powers[j] *= beta[j];
      pk += powers[j];
    }
    out.power_sum_sq[static_cast<std::size_t>(k)] = std::norm(pk);
  }
  // log L_p = sum_k |p_k|^2 X^k / k, so n a_n = sum_{k=1}^n |p_k|^2 a_{n-k}; all terms >= 0.
  out.lambda.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
  out.lambda[0] = 1.0;
  for (int n = 1; n <= kmax; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k)
      acc += out.power_sum_sq[static_cast<std::size_t>(k)] * out.lambda[static_cast<std::size_t>(n - k)];
    out.lambda[static_cast<std::size_t>(n)] = acc / n;
  }
  return out;
}

double rs_lambda_prime(const IsobaricSum& sum, const PrimeIdeal& P) {
  return rs_local(sum, P, 1).lambda[1];
}

double rs_Lambda_prime(const IsobaricSum& sum, const PrimeIdeal& P) {
  return rs_local(sum, P, 1).power_sum_sq[1] * std::log(static_cast<double>(P.norm));
}

double rs_lambda_prime_power(const IsobaricSum& sum, const PrimeIdeal& P, int k) {
  require(k >= 1, ErrorKind::Argument, "prime power exponent must be >= 1");
  return rs_local(sum, P, k).lambda[static_cast<std::size_t>(k)];
}

double factorization_linear_coefficient(const IsobaricSum& sum, const RSFactorization& fact,
                                        const PrimeIdeal& P) {
  if (sum.ramified_at(P.p))
    fail(ErrorKind::Domain, "prime " + std::to_string(P.p) + " excluded by S_pi");
  const auto& comps = sum.components();
  const double log_norm = std::log(static_cast<double>(P.norm));
  Complex acc(0.0, 0.0);
  for (const RSFactor& f : fact.factors) {
    const Complex li = comps[f.i].rep.lambda(P);
    const Complex lj = comps[f.j].rep.lambda(P);
    acc += li * std::conj(lj) * std::polar(1.0, -f.net_shift * log_norm);
  }
  return acc.real();
}

std::vector<double> rs_coefficients_by_norm(const PrimeTable& primes, const IsobaricSum& sum,
                                            std::uint64_t limit) {
  require(limit >= 1, ErrorKind::Argument, "coefficient limit must be >= 1");
  if (limit > primes.capacity())
    fail(ErrorKind::Resource, "sieve capacity " + std::to_string(primes.capacity()) +
                                  " exceeded (requested " + std::to_string(limit) + ")");
  require(limit <= 200'000'000, ErrorKind::Resource, "coefficient limit above 2e8");
  sum.require_coefficients(limit);

  const auto n_max = static_cast<std::uint32_t>(limit);
  std::vector<std::uint32_t> spf(n_max + 1, 0);
  for (std::uint32_t p : primes.primes()) {
    if (p > n_max) break;
    for (std::uint64_t m = p; m <= n_max; m += p)
      if (spf[m] == 0) spf[m] = p;
  }

  std::unordered_map<std::uint32_t, std::vector<double>> local;
  auto local_table = [&](std::uint32_t p) -> const std::vector<double>& {
    auto it = local.find(p);
    if (it != local.end()) return it->second;
    int jmax = 0;
    for (std::uint64_t q = p; q <= n_max; q *= p) ++jmax;
    std::vector<double> series(static_cast<std::size_t>(jmax) + 1, 0.0);
    series[0] = 1.0;
    if (!sum.ramified_at(p)) {
      for (const PrimeIdeal& P : PrimeTable::ideals_above(sum.field(), p)) {
        const int kmax = jmax / P.f;
        const auto loc = rs_local(sum, P, kmax).lambda;
        std::vector<double> next(series.size(), 0.0);
        for (std::size_t a = 0; a < series.size(); ++a) {
          if (series[a] == 0.0) continue;
          for (int k = 0; k <= kmax; ++k) {
            const std::size_t idx = a + static_cast<std::size_t>(k * P.f);
            if (idx >= series.size()) break;
            next[idx] += series[a] * loc[static_cast<std::size_t>(k)];
          }
        }
        series.swap(next);
      }
    } else {
      std::fill(series.begin() + 1, series.end(), 0.0);
    }
    return local.emplace(p, std::move(series)).first->second;
  };

  std::vector<double> a(n_max + 1, 0.0);
  if (n_max >= 1) a[1] = 1.0;
  for (std::uint32_t n = 2; n <= n_max; ++n) {
    const std::uint32_t p = spf[n];
    std::uint32_t m = n;
    int j = 0;
    while (m % p == 0) {
      m /= p;
      ++j;
    }
    a[n] = a[m] * local_table(p)[static_cast<std::size_t>(j)];
  }
  return a;
}

double neg_logderiv_tail_bound(int rank, int degree, double sigma, double x) {
  require(sigma > 1.0, ErrorKind::Argument, "tail bound needs sigma > 1");
  const double X = std::max(x, 1.0);
  return static_cast<double>(rank) * rank * degree * kChebyshevPsiConstant * sigma *
         std::pow(X, 1.0 - sigma) / (sigma - 1.0);
}

namespace {

struct PowerTerm {
  std::uint64_t norm;
  std::uint64_t p;
  int k;
  double power_sum_sq;
  double log_norm_prime;
};

// All unramified prime powers p^k with N(p)^k <= cutoff, sorted by norm.
std::vector<PowerTerm> prime_power_terms(const PrimeTable& primes, const IsobaricSum& sum,
                                         std::uint64_t cutoff) {
  std::vector<PowerTerm> out;
  if (cutoff < 2) return out;
  sum.require_coefficients(cutoff);
  for (const PrimeIdeal& P : primes.primes_in_norm_range(sum.field(), 2, cutoff)) {
    if (sum.ramified_at(P.p)) continue;
    int kmax = 0;
    for (std::uint64_t q = P.norm; q <= cutoff && kmax < kMaxPrimePower;) {
      ++kmax;
      if (q > cutoff / P.norm) break;
      q *= P.norm;
    }
    const auto loc = rs_local(sum, P, kmax);
    const double log_norm = std::log(static_cast<double>(P.norm));
    std::uint64_t q = P.norm;
    for (int k = 1; k <= kmax; ++k) {
      out.push_back({q, P.p, k, loc.power_sum_sq[static_cast<std::size_t>(k)], log_norm});
      if (k < kmax) q *= P.norm;
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PowerTerm& a, const PowerTerm& b) { return a.norm < b.norm; });
  return out;
}

void check_series_args(const PrimeTable& primes, double sigma, std::uint64_t cutoff) {
  require(std::isfinite(sigma), ErrorKind::Argument, "sigma must be finite");
  require(sigma > 1.0, ErrorKind::Argument, "sigma <= 1 is the divergent region");
  require(cutoff >= 1, ErrorKind::Argument, "cutoff must be >= 1");
  if (cutoff > primes.capacity())
    fail(ErrorKind::Resource, "sieve capacity " + std::to_string(primes.capacity()) +
                                  " exceeded (requested " + std::to_string(cutoff) + ")");
}

}  // namespace

SeriesValue truncated_neg_logderiv(const PrimeTable& primes, const IsobaricSum& sum,
                                   double sigma, std::uint64_t cutoff) {
  check_series_args(primes, sigma, cutoff);
  CompensatedSum acc;
  for (const PowerTerm& pt : prime_power_terms(primes, sum, cutoff))
    acc += pt.power_sum_sq * pt.log_norm_prime * std::pow(static_cast<double>(pt.norm), -sigma);
  return {acc.value(), neg_logderiv_tail_bound(sum.total_rank(), sum.field().degree(), sigma,
                                               static_cast<double>(cutoff))};
}

std::vector<SeriesTerm> neg_logderiv_terms(const PrimeTable& primes, const IsobaricSum& sum,
                                           double sigma, std::uint64_t cutoff) {
  check_series_args(primes, sigma, cutoff);
  std::vector<SeriesTerm> out;
  CompensatedSum acc;
  for (const PowerTerm& pt : prime_power_terms(primes, sum, cutoff)) {
    SeriesTerm st;
    st.norm = pt.norm;
    st.p = pt.p;
    st.k = pt.k;
    st.term = pt.power_sum_sq * pt.log_norm_prime * std::pow(static_cast<double>(pt.norm), -sigma);
    acc += st.term;
    st.partial_sum = acc.value();
    st.tail_bound = neg_logderiv_tail_bound(sum.total_rank(), sum.field().degree(), sigma,
                                            static_cast<double>(pt.norm));
    out.push_back(st);
  }
  return out;
}

ComplexSeriesValue truncated_log_L(const PrimeTable& primes, const Rep& rep, Complex s,
                                   std::uint64_t cutoff) {
  check_series_args(primes, s.real(), cutoff);
  require(std::isfinite(s.imag()), ErrorKind::Argument, "s must be finite");
  const IsobaricSum sum({{rep, 0.0}});
  CompensatedComplexSum acc;
  for (const PowerTerm& pt : prime_power_terms(primes, sum, cutoff)) {
    const double log_n = std::log(static_cast<double>(pt.norm));
    acc += (pt.power_sum_sq / pt.k) * std::exp(-s * log_n);
  }
  const double sigma = s.real();
  const double tail = neg_logderiv_tail_bound(rep.rank(), rep.field().degree(), sigma,
                                              static_cast<double>(cutoff)) /
                      std::log(static_cast<double>(cutoff) + 1.0);
  return {acc.value(), tail};
}

// ---------------------------------------------------------------------------
// Euler-Maclaurin zeta

namespace {

constexpr std::array<double, 16> kBernoulli2j = {
    1.0,                          // B_0
    1.0 / 6.0,                    // B_2
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,    // B_30
};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// |B_{2M+2}/(2M+2)! * prod_{i=0}^{2M} (s+i) * N^{-s-2M-1}| * |s+2M+1| / (sigma+2M+1),
// with |s+i| inflated by rho and sigma deflated by rho (used for the Cauchy estimate).
double em_remainder_bound(Complex s, int N, int M, double rho) {
  const double sigma = s.real() - rho;
  double prod = 1.0;
  for (int i = 0; i <= 2 * M; ++i) prod *= std::abs(s + static_cast<double>(i)) + rho;
  const double coeff = std::abs(kBernoulli2j[static_cast<std::size_t>(M + 1)]) / factorial(2 * M + 2);
  const double npow = std::pow(static_cast<double>(N), -sigma - 2.0 * M - 1.0);
  return coeff * prod * npow * (std::abs(s + (2.0 * M + 1.0)) + rho) / (sigma + 2.0 * M + 1.0);
}

}  // namespace

ZetaValue zeta_em(Complex s, int N, int M) {
  require(std::isfinite(s.real()) && std::isfinite(s.imag()), ErrorKind::Argument,
          "s must be finite");
  if (s == Complex(1.0, 0.0)) fail(ErrorKind::Pole, "zeta has a pole at s = 1");
  require(N >= 10, ErrorKind::Argument, "Euler-Maclaurin needs N >= 10");
  require(M >= 2 && M <= 14, ErrorKind::Argument, "Euler-Maclaurin needs 2 <= M <= 14");
  constexpr double kRho = 0.25;
  require(s.real() - kRho + 2.0 * M + 1.0 > 0.5, ErrorKind::Argument,
          "Re s too far left for the requested M");

  CompensatedComplexSum val, der;
  double abs_val = 0.0, abs_der = 0.0;
  for (int n = 1; n < N; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const Complex term = std::exp(-s * ln);
    val += term;
    der += -ln * term;
    abs_val += std::abs(term);
    abs_der += ln * std::abs(term);
  }
  const double lnN = std::log(static_cast<double>(N));
  const Complex Ns = std::exp(-s * lnN);  // N^{-s}
  const Complex sm1 = s - 1.0;
  {
    const Complex t1 = static_cast<double>(N) * Ns / sm1;
    const Complex d1 = -lnN * t1 - t1 / sm1;
    const Complex t2 = 0.5 * Ns;
    const Complex d2 = -lnN * t2;
    val += t1;
    val += t2;
    der += d1;
    der += d2;
    abs_val += std::abs(t1) + std::abs(t2);
    abs_der += std::abs(d1) + std::abs(d2);
  }
  // T_j = B_2j/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
  Complex P(1.0, 0.0), dP(0.0, 0.0);
  int next_factor = 0;
  for (int j = 1; j <= M; ++j) {
    for (; next_factor <= 2 * j - 2; ++next_factor) {
      const Complex f = s + static_cast<double>(next_factor);
      dP = dP * f + P;
      P *= f;
    }
    const double c = kBernoulli2j[static_cast<std::size_t>(j)] / factorial(2 * j);
    const Complex npow = Ns * std::pow(static_cast<double>(N), -2.0 * j + 1.0);
    const Complex term = c * P * npow;
    const Complex dterm = c * (dP * npow - lnN * P * npow);
    val += term;
    der += dterm;
    abs_val += std::abs(term);
    abs_der += std::abs(dterm);
  }

  ZetaValue out;
  out.value = val.value();
  out.derivative = der.value();
  const double roundoff = (8.0 + std::abs(s) * lnN) * DBL_EPSILON;
  out.error = em_remainder_bound(s, N, M, 0.0) + roundoff * abs_val;
  // Cauchy: |R'(s)| <= max_{|z-s|=rho} |R(z)| / rho.
  out.derivative_error = em_remainder_bound(s, N, M, kRho) / kRho + roundoff * abs_der;
  return out;
}

ZetaValue zeta_em_auto(Complex s, double tol) {
  require(tol > 0.0, ErrorKind::Argument, "tolerance must be positive");
  constexpr int kM = 12;
  int N = std::max(10, static_cast<int>(std::ceil(std::abs(s))) + 10);
  double previous = HUGE_VAL;
  for (;;) {
    const ZetaValue z = zeta_em(s, N, kM);
    const double worst = std::max(z.error, z.derivative_error);
    if (worst <= tol) return z;
    // Once rounding dominates, larger N only makes things worse.
    if (N > (1 << 22) || worst > 0.9 * previous) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "zeta_em did not reach tolerance %.3g at s = %.6g%+.6gi (error %.3g, N = %d)",
                    tol, s.real(), s.imag(), worst, N);
      fail(ErrorKind::Numeric, msg);
    }
    previous = worst;
    N *= 2;
  }
}

// ---------------------------------------------------------------------------
// Residues

bool ZetaEdgeEvaluator::supports(const Rep& rep) const {
  return rep.is_trivial() && rep.field().is_rational();
}

EdgeValues ZetaEdgeEvaluator::at(double t) const {
  require(std::isfinite(t), ErrorKind::Argument, "t must be finite");
  if (t == 0.0) fail(ErrorKind::Pole, "zeta has a pole at s = 1");
  const ZetaValue z = zeta_em_auto(Complex(1.0, t), tol_);
  return {z.value, z.derivative, std::max(z.error, z.derivative_error)};
}

ResidueInputs ZetaEdgeEvaluator::residue_inputs(double t) const {
  const ZetaValue z1 = zeta_em_auto(Complex(1.0, t), tol_);
  const ZetaValue z2 = zeta_em_auto(Complex(1.0, 2.0 * t), tol_);
  ResidueInputs in;
  in.t = t;
  in.gamma_m1 = 1.0;
  in.gamma_0 = kEulerGamma;
  in.L1_ad = 1.0;
  in.L1_ad_prime = 0.0;
  in.L_1p_it = z1.value;
  in.L_1m_it = std::conj(z1.value);
  in.L_1p_2it = z2.value;
  in.L_1m_2it = std::conj(z2.value);
  in.logderiv_1p_it = z1.derivative / z1.value;
  const double a = std::abs(z1.value);
  const double logderiv_err =
      z1.derivative_error / a + std::abs(z1.derivative) * z1.error / (a * a);
  in.input_error = std::max({z1.error, z2.error, logderiv_err});
  return in;
}

TabulatedEdgeEvaluator::TabulatedEdgeEvaluator(std::string rep_key, double gamma_m1,
                                               double gamma_0, double L1_ad, double L1_ad_prime,
                                               double error)
    : rep_key_(std::move(rep_key)),
      gamma_m1_(gamma_m1),
      gamma_0_(gamma_0),
      L1_ad_(L1_ad),
      L1_ad_prime_(L1_ad_prime),
      error_(error) {}

void TabulatedEdgeEvaluator::add(double t, Complex L, Complex L_prime) {
  values_[t] = EdgeValues{L, L_prime, error_};
}

bool TabulatedEdgeEvaluator::supports(const Rep& rep) const { return rep.key() == rep_key_; }

EdgeValues TabulatedEdgeEvaluator::at(double t) const {
  if (t == 0.0) fail(ErrorKind::Pole, "L(s, pi x dual(pi)) has a pole at s = 1");
  auto it = values_.find(t);
  if (it != values_.end()) return it->second;
  // Coefficients are real, so L(1 - it) = conj L(1 + it).
  auto neg = values_.find(-t);
  if (neg != values_.end())
    return {std::conj(neg->second.L), std::conj(neg->second.L_prime), neg->second.error};
  fail(ErrorKind::Data, "no supplied edge value at t=" + std::to_string(t));
}

ResidueInputs TabulatedEdgeEvaluator::residue_inputs(double t) const {
  const EdgeValues v1 = at(t);
  const EdgeValues v2 = at(2.0 * t);
  ResidueInputs in;
  in.t = t;
  in.gamma_m1 = gamma_m1_;
  in.gamma_0 = gamma_0_;
  in.L1_ad = L1_ad_;
  in.L1_ad_prime = L1_ad_prime_;
  in.L_1p_it = v1.L;
  in.L_1m_it = std::conj(v1.L);
  in.L_1p_2it = v2.L;
  in.L_1m_2it = std::conj(v2.L);
  in.logderiv_1p_it = v1.L_prime / v1.L;
  const double a = std::abs(v1.L);
  in.input_error = std::max(error_, error_ / a + std::abs(v1.L_prime) * error_ / (a * a));
  return in;
}

namespace {

struct ResidueCore {
  double r2, r1;
  Complex rp, rm;
};

ResidueCore residue_core(const ResidueInputs& in) {
  const double g = in.gamma_m1;
  const double lad = in.L1_ad;
  const double L2 = std::norm(in.L_1p_it);
  ResidueCore r;
  r.r2 = g * g * lad * lad * L2;
  r.r1 = L2 * (2.0 * g * lad * (in.gamma_0 * lad + g * in.L1_ad_prime) +
               2.0 * g * g * lad * lad * in.logderiv_1p_it.real());
  r.rp = g * lad * in.L_1p_it * in.L_1p_it * in.L_1p_2it;
  r.rm = g * lad * in.L_1m_it * in.L_1m_it * in.L_1m_2it;
  return r;
}

double core_distance(const ResidueCore& a, const ResidueCore& b) {
  return std::max({std::abs(a.r2 - b.r2), std::abs(a.r1 - b.r1), std::abs(a.rp - b.rp),
                   std::abs(a.rm - b.rm)});
}

}  // namespace

ResidueData residues(const ResidueInputs& in) {
  for (double v : {in.t, in.gamma_m1, in.gamma_0, in.L1_ad, in.L1_ad_prime})
    require(std::isfinite(v), ErrorKind::Data, "residue inputs must be finite");
  require(in.t != 0.0, ErrorKind::Argument, "residues need t != 0");
  const ResidueCore base = residue_core(in);

  // First-order propagation: perturb each input by its error bar.
  double err = 0.0;
  if (in.input_error > 0.0) {
    const double e = in.input_error;
    auto probe = [&](auto mutate) {
      double worst = 0.0;
      for (double sgn : {-1.0, 1.0}) {
        ResidueInputs p = in;
        mutate(p, sgn * e);
        worst = std::max(worst, core_distance(base, residue_core(p)));
      }
      err += worst;
    };
    probe([](ResidueInputs& p, double d) { p.gamma_m1 += d; });
    probe([](ResidueInputs& p, double d) { p.gamma_0 += d; });
    probe([](ResidueInputs& p, double d) { p.L1_ad += d; });
    probe([](ResidueInputs& p, double d) { p.L1_ad_prime += d; });
    for (Complex ResidueInputs::*field :
         {&ResidueInputs::L_1p_it, &ResidueInputs::L_1m_it, &ResidueInputs::L_1p_2it,
          &ResidueInputs::L_1m_2it, &ResidueInputs::logderiv_1p_it}) {
      probe([field](ResidueInputs& p, double d) { p.*field += Complex(d, 0.0); });
      probe([field](ResidueInputs& p, double d) { p.*field += Complex(0.0, d); });
    }
  }
  const double scale = std::max({std::abs(base.r2), std::abs(base.r1), std::abs(base.rp),
                                 std::abs(base.rm)});

  ResidueData out;
  out.t = in.t;
  out.r_minus2 = base.r2;
  out.r_minus1 = base.r1;
  out.r_plus = base.rp;
  out.r_minus = base.rm;
  out.error_bound = err + 16.0 * DBL_EPSILON * scale;
  out.inputs = in;
  return out;
}

ResidueData residues(const Rep& rep, double t, const EdgeEvaluator& evaluator) {
  require(std::isfinite(t) && t != 0.0, ErrorKind::Argument, "residues need finite t != 0");
  require(evaluator.supports(rep), ErrorKind::Data,
          "no edge-line values available for '" + rep.label() + "'");
  return residues(evaluator.residue_inputs(t));
}

std::vector<GoliRow> goli_bound_check(const Rep& rep, std::span<const double> ts,
                                      const EdgeEvaluator& evaluator) {
  require(evaluator.supports(rep), ErrorKind::Data,
          "no edge-line values available for '" + rep.label() + "'");
  std::vector<GoliRow> rows;
  GoliRow running;
  for (double t : ts) {
    require(std::isfinite(t), ErrorKind::Argument, "t grid must be finite");
    if (t == 0.0) continue;
    const EdgeValues ev = evaluator.at(t);
    const ResidueData res = residues(rep, t, evaluator);
    const double lg = std::log(std::abs(t) + 3.0);
    GoliRow row;
    row.t = t;
    row.L_abs = std::abs(ev.L);
    row.L_prime_abs = std::abs(ev.L_prime);
    row.ratio_L = row.L_abs / lg;
    row.ratio_L_prime = row.L_prime_abs / (lg * lg);
    row.ratio_r2 = res.r_minus2 / (row.L_abs * lg);
    row.ratio_r1 = std::abs(res.r_minus1) / (row.L_abs * lg * lg);
    row.ratio_rpm = std::max(std::abs(res.r_plus), std::abs(res.r_minus)) / (row.L_abs * lg * lg);
    running.max_ratio_L = std::max(running.max_ratio_L, row.ratio_L);
    running.max_ratio_L_prime = std::max(running.max_ratio_L_prime, row.ratio_L_prime);
    running.max_ratio_r2 = std::max(running.max_ratio_r2, row.ratio_r2);
    running.max_ratio_r1 = std::max(running.max_ratio_r1, row.ratio_r1);
    running.max_ratio_rpm = std::max(running.max_ratio_rpm, row.ratio_rpm);
    row.max_ratio_L = running.max_ratio_L;
    row.max_ratio_L_prime = running.max_ratio_L_prime;
    row.max_ratio_r2 = running.max_ratio_r2;
    row.max_ratio_r1 = running.max_ratio_r1;
    row.max_ratio_rpm = running.max_ratio_rpm;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rslab
