#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rslab {

/// The base field: either Q or a quadratic field Q(sqrt(d)), d squarefree.
class NumberField {
public:
  static NumberField rationals() { return NumberField(0); }
  /// Throws ErrorKind::Argument unless d is squarefree, nonzero and != 1.
  static NumberField quadratic(std::int64_t d);

  bool is_rational() const noexcept { return d_ == 0; }
  int degree() const noexcept { return is_rational() ? 1 : 2; }
  std::int64_t radicand() const noexcept { return d_; }
  /// 1 for Q; d if d = 1 mod 4, else 4d.
  std::int64_t discriminant() const noexcept;
  bool is_imaginary() const noexcept { return d_ < 0; }

  std::string label() const;

  friend bool operator==(const NumberField&, const NumberField&) = default;

private:
  explicit NumberField(std::int64_t d) : d_(d) {}
  std::int64_t d_;
};

enum class Splitting { Split, Inert, Ramified };

struct PrimeIdeal {
  std::uint64_t p = 0;     // residue characteristic
  int f = 1;               // residue degree
  std::uint64_t norm = 0;  // p^f
  bool ramified = false;
  int index = 0;           // 0 or 1; distinguishes the two ideals above a split p
};

/// Kronecker symbol (D | p) for a prime p.
int kronecker_symbol(std::int64_t disc, std::uint64_t p);

Splitting splitting_type(const NumberField& field, std::uint64_t p);

struct BrunTitchmarshMargin {
  std::int64_t count = 0;
  double bound = 0.0;
  bool satisfied = false;
};

/// Rational primes up to a fixed capacity, built once with a segmented sieve.
/// Immutable after construction; safe for concurrent reads.
class PrimeTable {
public:
  static constexpr std::uint64_t kDefaultCapacity = 10'000'000;

  explicit PrimeTable(std::uint64_t capacity = kDefaultCapacity);

  std::uint64_t capacity() const noexcept { return capacity_; }
  const std::vector<std::uint32_t>& primes() const noexcept { return primes_; }

  bool is_prime(std::uint64_t n) const;
  /// Number of rational primes <= x.
  std::uint64_t pi(std::uint64_t x) const;

  /// Prime ideals with lo <= N(p) <= hi, sorted by norm then characteristic.
  std::vector<PrimeIdeal> primes_in_norm_range(const NumberField& field, std::uint64_t lo,
                                               std::uint64_t hi) const;

  /// #{p : N(p) <= x}, split primes counted twice.
  std::int64_t prime_count(const NumberField& field, double x) const;

  /// Compares pi_F(x + y) - pi_F(x) against 4 [F:Q] y / log y. Requires 2 <= y <= x.
  BrunTitchmarshMargin brun_titchmarsh_margin(const NumberField& field, double x,
                                              double y) const;

  /// Prime ideals of `field` lying above the rational prime p.
  static std::vector<PrimeIdeal> ideals_above(const NumberField& field, std::uint64_t p);

private:
  void check_capacity(std::uint64_t hi) const;

  std::uint64_t capacity_;
  std::vector<std::uint32_t> primes_;
};

/// Streaming segmented sieve: calls fn(p) for every prime in [lo, hi] in
/// increasing order. Memory is O(sqrt(hi) + segment).
template <class Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn);

std::vector<std::uint32_t> small_primes(std::uint32_t limit);

}  // namespace rslab

#include <algorithm>
#include <cmath>

namespace rslab {

template <class Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi)));
  while (root * root > hi) --root;
  while ((root + 1) * (root + 1) <= hi) ++root;
  const auto base = small_primes(static_cast<std::uint32_t>(root));

  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<char> composite(kSegment);
  for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), 0);
    for (std::uint64_t p : base) {
      if (p * p > seg_hi) break;
      std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= seg_hi; m += p) composite[m - seg_lo] = 1;
    }
    for (std::uint64_t n = seg_lo; n <= seg_hi; ++n)
      if (!composite[n - seg_lo]) fn(n);
    if (seg_hi == hi) break;
  }
}

}  // namespace rslab
