#pragma once

#include "rslab/fields.hpp"
#include "rslab/reps.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rslab {

inline constexpr int kMaxPrimePower = 40;
/// Rosser-Schoenfeld: psi(x) < 1.03883 x for all x > 0.
inline constexpr double kChebyshevPsiConstant = 1.03883;

/// Satake parameters of Pi at p: alpha * N(p)^{-i tau} over all components.
std::vector<Complex> satake_multiset(const IsobaricSum& sum, const PrimeIdeal& P);

/// Local data of L(s, Pi x dual(Pi)) at an unramified prime.
struct LocalRS {
  std::vector<double> lambda;       // lambda(p^k), k = 0..kmax, lambda[0] = 1
  std::vector<double> power_sum_sq; // |sum_j beta_j^k|^2, k = 0..kmax; Lambda(p^k) = this * log N(p)
};

LocalRS rs_local(const IsobaricSum& sum, const PrimeIdeal& P, int kmax);

/// |lambda_pi(p)|^2 |1 + N(p)^{it}|^2 for the auxiliary Pi, in general |sum beta_j|^2.
double rs_lambda_prime(const IsobaricSum& sum, const PrimeIdeal& P);
double rs_Lambda_prime(const IsobaricSum& sum, const PrimeIdeal& P);
/// Coefficient of X^k in prod_{j,l} (1 - beta_j conj(beta_l) X)^{-1}; 1 <= k <= 40.
double rs_lambda_prime_power(const IsobaricSum& sum, const PrimeIdeal& P, int k);

/// Linear coefficient at p assembled from the symbolic factor list:
/// sum over factors of lambda_{pi_i}(p) conj(lambda_{pi_j}(p)) N(p)^{-i shift}.
double factorization_linear_coefficient(const IsobaricSum& sum, const RSFactorization& fact,
                                        const PrimeIdeal& P);

/// Coefficients a(n) = sum_{N(a) = n} lambda_{Pi x dual(Pi)}(a) for n <= limit,
/// multiplicative, with ideals touching S_pi dropped.
std::vector<double> rs_coefficients_by_norm(const PrimeTable& primes, const IsobaricSum& sum,
                                            std::uint64_t limit);

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

struct ComplexSeriesValue {
  Complex value;
  double tail_bound = 0.0;
};

struct SeriesTerm {
  std::uint64_t norm = 0;  // N(p)^k
  std::uint64_t p = 0;
  int k = 0;
  double term = 0.0;
  double partial_sum = 0.0;
  double tail_bound = 0.0;  // bound on all terms of norm > this one
};

/// sum over r^2 [F:Q] Lambda(m) / m^sigma for m > x, using psi(x) < 1.03883 x.
double neg_logderiv_tail_bound(int rank, int degree, double sigma, double x);

/// sum_{N(p^k) <= cutoff, p not in S} Lambda(p^k) / N(p^k)^sigma, sigma > 1.
SeriesValue truncated_neg_logderiv(const PrimeTable& primes, const IsobaricSum& sum,
                                   double sigma, std::uint64_t cutoff);
std::vector<SeriesTerm> neg_logderiv_terms(const PrimeTable& primes, const IsobaricSum& sum,
                                           double sigma, std::uint64_t cutoff);

/// Truncated log L(s, pi x dual(pi)) = sum Lambda(a) / (N(a)^s log N(a)), Re s > 1.
ComplexSeriesValue truncated_log_L(const PrimeTable& primes, const Rep& rep, Complex s,
                                   std::uint64_t cutoff);

struct ZetaValue {
  Complex value;
  Complex derivative;
  double error = 0.0;             // bound on |value - zeta(s)|
  double derivative_error = 0.0;  // bound on |derivative - zeta'(s)|
};

/// Euler-Maclaurin with N - 1 direct terms and M Bernoulli corrections (2 <= M <= 14).
ZetaValue zeta_em(Complex s, int N, int M);
/// Doubles N until both error bounds are <= tol.
ZetaValue zeta_em_auto(Complex s, double tol = 1e-12);

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Edge-line inputs to the residue formulas at s in {1, 1 +- it, 1 +- 2it}.
struct ResidueInputs {
  double t = 0.0;
  double gamma_m1 = 1.0;   // residue of zeta_F at 1
  double gamma_0 = kEulerGamma;
  double L1_ad = 1.0;      // L(1, ad pi)
  double L1_ad_prime = 0.0;
  Complex L_1p_it, L_1m_it, L_1p_2it, L_1m_2it;
  Complex logderiv_1p_it;  // (L'/L)(1 + it, pi x dual(pi))
  double input_error = 0.0;  // absolute error bar on each input
};

struct ResidueData {
  double t = 0.0;
  double r_minus2 = 0.0;
  double r_minus1 = 0.0;
  Complex r_plus;
  Complex r_minus;
  double error_bound = 0.0;
  ResidueInputs inputs;
};

struct EdgeValues {
  Complex L;        // L(1 + it, pi x dual(pi))
  Complex L_prime;
  double error = 0.0;
};

/// Supplies L(1 + it, pi x dual(pi)) and the constants of the residue formulas.
class EdgeEvaluator {
public:
  virtual ~EdgeEvaluator() = default;
  virtual bool supports(const Rep& rep) const = 0;
  virtual EdgeValues at(double t) const = 0;
  virtual ResidueInputs residue_inputs(double t) const = 0;
};

/// Trivial representation over Q: everything reduces to zeta.
class ZetaEdgeEvaluator final : public EdgeEvaluator {
public:
  explicit ZetaEdgeEvaluator(double tol = 1e-12) : tol_(tol) {}
  bool supports(const Rep& rep) const override;
  EdgeValues at(double t) const override;
  ResidueInputs residue_inputs(double t) const override;

private:
  double tol_;
};

/// Externally supplied edge values, keyed by t.
class TabulatedEdgeEvaluator final : public EdgeEvaluator {
public:
  TabulatedEdgeEvaluator(std::string rep_key, double gamma_m1, double gamma_0, double L1_ad,
                         double L1_ad_prime, double error);
  void add(double t, Complex L, Complex L_prime);

  bool supports(const Rep& rep) const override;
  EdgeValues at(double t) const override;
  ResidueInputs residue_inputs(double t) const override;

private:
  std::string rep_key_;
  double gamma_m1_, gamma_0_, L1_ad_, L1_ad_prime_, error_;
  std::map<double, EdgeValues> values_;
};

/// r_{-2}, r_{-1}, r_{-1}^{+-} from the Laurent data of L(s, pi x dual(pi))^2 L(s +- it, ...).
ResidueData residues(const ResidueInputs& in);
ResidueData residues(const Rep& rep, double t, const EdgeEvaluator& evaluator);

struct GoliRow {
  double t = 0.0;
  double L_abs = 0.0;
  double L_prime_abs = 0.0;
  double ratio_L = 0.0;        // |L(1+it)| / log(|t|+3)
  double ratio_L_prime = 0.0;  // |L'(1+it)| / log(|t|+3)^2
  double ratio_r2 = 0.0;       // r_{-2} / (|L| log)
  double ratio_r1 = 0.0;       // |r_{-1}| / (|L| log^2)
  double ratio_rpm = 0.0;      // max |r^{+-}| / (|L| log^2)
  double max_ratio_L = 0.0;    // running maxima
  double max_ratio_L_prime = 0.0;
  double max_ratio_r2 = 0.0;
  double max_ratio_r1 = 0.0;
  double max_ratio_rpm = 0.0;
};

/// t = 0 is skipped (pole).
std::vector<GoliRow> goli_bound_check(const Rep& rep, std::span<const double> ts,
                                      const EdgeEvaluator& evaluator);

}  // namespace rslab
