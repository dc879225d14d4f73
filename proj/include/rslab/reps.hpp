#pragma once

#include "rslab/fields.hpp"
#include "rslab/modular.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace rslab {

using Complex = std::complex<double>;

struct TrivialSource {};

struct DirichletSource {
  std::uint64_t modulus = 1;
  std::uint64_t index = 0;
  std::uint64_t group_order = 1;  // phi(q)
  std::vector<Complex> values;    // chi(a) for a mod q
};

struct NewformSource {
  int weight = 12;
  std::uint64_t level = 1;
  std::shared_ptr<const ApTable> table;
  std::shared_ptr<const std::vector<double>> normalized;  // a_p / p^{(k-1)/2}, same order
};

using CoefficientSource = std::variant<TrivialSource, DirichletSource, NewformSource>;

/// A unitary cuspidal representation descriptor with tempered Hecke data.
class Rep {
public:
  static Rep trivial(const NumberField& field = NumberField::rationals());
  /// The character chi(g^a) = exp(2 pi i index a / phi(q)) for a primitive root g.
  /// Requires (Z/q)^* cyclic: q in {2, 4, p^k, 2p^k}.
  static Rep dirichlet(std::uint64_t modulus, std::uint64_t index);
  /// Validates |a_p| <= 2 p^{(k-1)/2} for p not dividing the level.
  static Rep newform(ApTable table);
  static Rep delta(std::uint64_t cutoff = 100'000);

  int rank() const noexcept { return rank_; }
  const NumberField& field() const noexcept { return field_; }
  const CoefficientSource& source() const noexcept { return source_; }
  const std::vector<std::uint64_t>& ramified_primes() const noexcept { return ramified_; }
  bool self_dual() const noexcept { return self_dual_; }
  const std::string& label() const noexcept { return label_; }

  bool is_trivial() const noexcept { return std::holds_alternative<TrivialSource>(source_); }
  bool ramified_at(std::uint64_t p) const;
  /// Largest prime norm with tabulated coefficients (unbounded for closed forms).
  std::uint64_t coefficient_cutoff() const noexcept;
  /// Throws ErrorKind::Resource if norms up to `norm` are not covered.
  void require_coefficients(std::uint64_t norm) const;

  /// Descriptor identity; two reps are isomorphic here iff their keys agree.
  std::string key() const;
  Rep dual() const;

  /// Unitary-normalized Hecke eigenvalue lambda(p).
  Complex lambda(const PrimeIdeal& P) const;
  /// Satake parameters; they sum to lambda(p) and multiply to the central character.
  std::vector<Complex> satake(const PrimeIdeal& P) const;

private:
  Rep() = default;
  void check_unramified(const PrimeIdeal& P) const;

  int rank_ = 1;
  NumberField field_ = NumberField::rationals();
  CoefficientSource source_;
  std::vector<std::uint64_t> ramified_;
  bool self_dual_ = true;
  std::string label_;
};

/// Formal sum of twists rep (x) |det|^{i shift}.
struct IsobaricComponent {
  Rep rep;
  double shift = 0.0;
};

class IsobaricSum {
public:
  explicit IsobaricSum(std::vector<IsobaricComponent> components);

  const std::vector<IsobaricComponent>& components() const noexcept { return components_; }
  int total_rank() const noexcept { return total_rank_; }
  const NumberField& field() const noexcept { return components_.front().rep.field(); }
  bool ramified_at(std::uint64_t p) const;
  void require_coefficients(std::uint64_t norm) const;

private:
  std::vector<IsobaricComponent> components_;
  int total_rank_ = 0;
};

/// pi (x) |det|^{it/2}  boxplus  pi (x) |det|^{-it/2}. t = 0 is allowed.
IsobaricSum build_auxiliary_pi(const Rep& rep, double t);

/// pi (x) |det|^{it}  boxplus  dual(pi) (x) |det|^{-it}  boxplus  pi'.
/// Requires pi' self-dual.
IsobaricSum build_appendix_pi(const Rep& pi, const Rep& pi_prime, double t);

/// One factor L(s + i net_shift, left x right) of L(s, Pi x dual(Pi)), where
/// left = pi_i and right = dual(pi_j).
struct RSFactor {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string left_key;
  std::string right_key;
  double net_shift = 0.0;
  bool contributes_pole = false;
};

struct RSFactorization {
  std::vector<RSFactor> factors;
  int pole_order = 0;
};

RSFactorization rs_factorize(const IsobaricSum& sum);

struct ZeroCountRange {
  double lower_sigma = 0.0;
  int max_real_zeros = 0;
};

/// 1 - kappa / ((n + n')^2 (m + 1) log q) with m the pole order.
ZeroCountRange zero_count_range(const RSFactorization& fact, int n, int n_prime,
                                double log_conductor, double kappa);

}  // namespace rslab
