#pragma once

#include "rslab/reps.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace rslab {

enum class Place { Real, Complex };

/// Archimedean Langlands parameter: chi_{k,nu}(z) = (z/|z|)^k |z|^{2 nu} on C^x, a character
/// sgn^{(1-eps)/2} |x|^nu of R^x, or the induction of chi_{k,nu} to W_R (k >= 1).
struct WeilParameter {
  enum class Kind { ComplexChar, RealOneDim, RealTwoDim };

  Kind kind = Kind::RealOneDim;
  int k = 0;        // ComplexChar: any integer; RealTwoDim: k >= 1
  int epsilon = 1;  // RealOneDim only
  Complex nu;

  static WeilParameter complex_char(int k, Complex nu);
  static WeilParameter real_one_dim(int epsilon, Complex nu);
  static WeilParameter real_two_dim(int k, Complex nu);

  Place place() const noexcept { return kind == Kind::ComplexChar ? Place::Complex : Place::Real; }
  int dimension() const noexcept { return kind == Kind::RealTwoDim ? 2 : 1; }
  Complex mu() const;
  WeilParameter dual() const;
  std::string label() const;
};

/// |Re nu| <= 1/2; throws ErrorKind::Argument otherwise.
void check_jacquet_shalika(const WeilParameter& phi);

struct GammaFactor {
  enum class Kind { R, C };
  Kind kind = Kind::R;
  Complex shift;

  int degree() const noexcept { return kind == Kind::R ? 1 : 2; }
};

/// Sort by kind (R first), then real and imaginary part of the shift.
void canonicalize(std::vector<GammaFactor>& gammas);

std::vector<GammaFactor> gamma_factors(const WeilParameter& phi);

/// prod over gamma factors of (1 + |it + mu|)^{1 for R, 2 for C}.
double conductor_v(double t, const std::vector<GammaFactor>& gammas);
double conductor_v(double t, const WeilParameter& phi);

struct TensorProduct {
  std::vector<WeilParameter> pieces;  // literal decomposition
  std::vector<GammaFactor> gammas;    // canonical: the k = k' pair is written as Gamma_C
  int dimension = 0;
};

TensorProduct tensor(const WeilParameter& phi, const WeilParameter& phi_prime);

struct ReductionCheck {
  double lhs = 0.0;
  double rhs = 0.0;    // C q_v(phi)^{d'} q_v(phi')^d (1+|t|)^{d d' [F_v:R]}
  double ratio = 0.0;  // lhs / (rhs / C)
  bool satisfied = false;
};

ReductionCheck check_reduction_inequality(double t, const WeilParameter& phi,
                                          const WeilParameter& phi_prime, double C);

/// (|k|/2 + |nu|)^2 <= 3 (k^2/4 + |nu|^2) and k^2/4 + |nu|^2 <= 3 |mu|^2.
struct Sqrt3Claim {
  double first_lhs = 0.0, first_rhs = 0.0;
  double second_lhs = 0.0, second_rhs = 0.0;
  bool first_holds = false;
  bool second_holds = false;
};

Sqrt3Claim sqrt3_claim(int k, Complex nu);

/// 1 + |t| + |mu| + |mu'| <= (1 + |mu|)(1 + |mu'|)(1 + |t|).
struct BoringCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

BoringCheck boring_inequality(double t, Complex mu, Complex mu_prime);

/// Global conductor data of a representation: one parameter list per archimedean place.
struct ConductorDescriptor {
  std::string label;
  int field_degree = 1;
  std::vector<std::vector<WeilParameter>> places;
  std::uint64_t finite_conductor = 1;

  int rank() const;
  double arch_conductor(double t) const;
  double analytic_conductor(double t) const { return finite_conductor * arch_conductor(t); }
  ConductorDescriptor dual() const;
};

/// trivial: R1(+1, 0) per real place, C(0, 0) per complex place; chi: R1(chi(-1), 0) with its
/// conductor; weight-k newform: R2(k - 1, 0) with its level.
ConductorDescriptor descriptor_of(const Rep& rep);

/// Arithmetic conductor of a Dirichlet character given by its values mod q.
std::uint64_t dirichlet_conductor(const DirichletSource& chi);

struct GlobalBounds {
  int n = 0, n_prime = 0, degree = 1;
  // Three-component Pi = pi|it + dual(pi)|-it + pi'.
  double finite_lhs = 0.0;   // product of per-factor Bushnell-Henniart bounds
  double finite_rhs = 0.0;   // (q_f(pi)^2 q_f(pi'))^{4n + 2n'}
  bool finite_holds = false;
  double arch_lhs = 0.0;     // q_inf(Pi x dual(Pi))
  double arch_base = 0.0;    // (q_inf(pi)^2 q_inf(pi'))^{4n+2n'} (1+|t|)^{(4nn'+2n^2)[F:Q]}
  double implied_C1 = 0.0;   // (arch_lhs / arch_base)^{1/(n+n')}
  // Auxiliary Pi = pi|it/2 + pi|-it/2.
  double aux_lhs = 0.0;      // q(pi x dual pi)^2 q(it, pi x dual pi) q(-it, pi x dual pi)
  double aux_rhs = 0.0;      // q(pi)^{8n} (|t| + 3)^{2 n^2 [F:Q]}
  bool aux_holds = false;
  double log_aux_lhs = 0.0;
  double log_aux_rhs = 0.0;
};

GlobalBounds global_conductor_bounds(const ConductorDescriptor& pi,
                                     const ConductorDescriptor& pi_prime, double t);

/// Arch parameters of pi x dual(pi') and q(it, pi x dual(pi')) including the BH finite bound.
std::vector<GammaFactor> rs_gammas(const std::vector<WeilParameter>& a,
                                   const std::vector<WeilParameter>& b);
double log_rs_conductor(const ConductorDescriptor& pi, const ConductorDescriptor& pi_prime,
                        double t);

// Random sweeps ---------------------------------------------------------------

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

struct SweepSample {
  WeilParameter phi, phi_prime;
  double t = 0.0;
  ReductionCheck check;
  bool tensor_dimension_ok = false;
  bool symmetric = false;  // conductor(phi x phi') == conductor(phi' x phi)
  bool sqrt3_applicable = false;
  Sqrt3Claim sqrt3_phi, sqrt3_phi_prime;
};

struct SweepSummary {
  std::uint64_t samples = 0;
  double max_ratio = 0.0;
  SweepSample argmax;
  std::uint64_t reduction_failures = 0;  // ratio > C
  std::uint64_t dimension_failures = 0;
  std::uint64_t symmetry_failures = 0;
  std::uint64_t sqrt3_checked = 0;
  std::uint64_t sqrt3_first_failures = 0;
  std::uint64_t sqrt3_second_failures = 0;
  SweepSample sqrt3_counterexample;
};

/// Draws JS-constrained parameter pairs at one place type: k in [-8, 8] (two-dimensional
/// k in [1, 8]), Re nu in [-1/2, 1/2], Im nu in [-10, 10], t in [0, 20].
class ParameterSampler {
public:
  ParameterSampler(Place place, std::uint64_t seed);
  SweepSample next(double C);

private:
  double uniform(double lo, double hi);
  int integer(int lo, int hi);
  WeilParameter parameter();

  Place place_;
  std::mt19937_64 rng_;
};

/// `each` (optional) sees every sample in draw order.
SweepSummary reduction_sweep(Place place, std::uint64_t count, std::uint64_t seed, double C,
                             const std::function<void(const SweepSample&)>& each = {});

}  // namespace rslab
