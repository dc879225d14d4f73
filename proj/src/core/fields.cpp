#include "rslab/fields.hpp"

#include "rslab/error.hpp"

#include <algorithm>
#include <cmath>

namespace rslab {

namespace {

bool is_squarefree(std::int64_t d) {
  std::uint64_t m = static_cast<std::uint64_t>(d < 0 ? -d : d);
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % (q * q) == 0) return false;
    if (m % q == 0) m /= q;
  }
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

NumberField NumberField::quadratic(std::int64_t d) {
  require(d != 0 && d != 1, ErrorKind::Argument, "quadratic field needs d != 0, 1");
  require(is_squarefree(d), ErrorKind::Argument,
          "quadratic field needs squarefree d, got " + std::to_string(d));
  return NumberField(d);
}

std::int64_t NumberField::discriminant() const noexcept {
  if (is_rational()) return 1;
  return mod_floor(d_, 4) == 1 ? d_ : 4 * d_;
}

std::string NumberField::label() const {
  if (is_rational()) return "Q";
  return "Q(sqrt(" + std::to_string(d_) + "))";
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<char> mark(limit + 1, 1);
  mark[0] = mark[1] = 0;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (mark[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
  for (std::uint32_t i = 2; i <= limit; ++i)
    if (mark[i]) out.push_back(i);
  return out;
}

int kronecker_symbol(std::int64_t disc, std::uint64_t p) {
  if (p == 2) {
    if (disc % 2 == 0) return 0;
    const std::int64_t r = mod_floor(disc, 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  const std::uint64_t a = static_cast<std::uint64_t>(mod_floor(disc, static_cast<std::int64_t>(p)));
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

Splitting splitting_type(const NumberField& field, std::uint64_t p) {
  if (field.is_rational()) return Splitting::Split;
  switch (kronecker_symbol(field.discriminant(), p)) {
    case 0: return Splitting::Ramified;
    case 1: return Splitting::Split;
    default: return Splitting::Inert;
  }
}

std::vector<PrimeIdeal> PrimeTable::ideals_above(const NumberField& field, std::uint64_t p) {
  if (field.is_rational()) return {PrimeIdeal{p, 1, p, false, 0}};
  switch (splitting_type(field, p)) {
    case Splitting::Ramified: return {PrimeIdeal{p, 1, p, true, 0}};
    case Splitting::Split: return {PrimeIdeal{p, 1, p, false, 0}, PrimeIdeal{p, 1, p, false, 1}};
    case Splitting::Inert: return {PrimeIdeal{p, 2, p * p, false, 0}};
  }
  return {};
}

PrimeTable::PrimeTable(std::uint64_t capacity) : capacity_(capacity) {
  require(capacity >= 2, ErrorKind::Argument, "sieve capacity must be at least 2");
  require(capacity <= 4'000'000'000ULL, ErrorKind::Resource,
          "sieve capacity above 4e9 is not supported");
  for_each_prime(2, capacity, [&](std::uint64_t p) {
    primes_.push_back(static_cast<std::uint32_t>(p));
  });
}

void PrimeTable::check_capacity(std::uint64_t hi) const {
  if (hi > capacity_)
    fail(ErrorKind::Resource, "sieve capacity " + std::to_string(capacity_) +
                                  " exceeded (requested " + std::to_string(hi) + ")");
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  check_capacity(n);
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  check_capacity(x);
  return static_cast<std::uint64_t>(
      std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(x)) -
      primes_.begin());
}

std::vector<PrimeIdeal> PrimeTable::primes_in_norm_range(const NumberField& field,
                                                         std::uint64_t lo,
                                                         std::uint64_t hi) const {
  require(lo <= hi, ErrorKind::Argument,
          "empty norm range: lo=" + std::to_string(lo) + " > hi=" + std::to_string(hi));
  require(lo >= 2, ErrorKind::Argument, "norm range must start at 2 or above");
  check_capacity(hi);

  std::vector<PrimeIdeal> out;
  if (field.is_rational()) {
    auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(primes_.begin(), primes_.end(), hi);
    out.reserve(static_cast<std::size_t>(last - first));
    for (auto it = first; it != last; ++it) out.push_back(PrimeIdeal{*it, 1, *it, false, 0});
    return out;
  }

  auto last = std::upper_bound(primes_.begin(), primes_.end(), hi);
  for (auto it = primes_.begin(); it != last; ++it) {
    const std::uint64_t p = *it;
    for (const PrimeIdeal& P : ideals_above(field, p))
      if (P.norm >= lo && P.norm <= hi) out.push_back(P);
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    if (a.p != b.p) return a.p < b.p;
    return a.index < b.index;
  });
  return out;
}

std::int64_t PrimeTable::prime_count(const NumberField& field, double x) const {
  require(x >= 0.0 && std::isfinite(x), ErrorKind::Argument, "prime_count needs finite x >= 0");
  if (x < 2.0) return 0;
  const auto n = static_cast<std::uint64_t>(std::floor(x));
  check_capacity(n);
  if (field.is_rational()) return static_cast<std::int64_t>(pi(n));

  std::int64_t count = 0;
  auto last = std::upper_bound(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
  for (auto it = primes_.begin(); it != last; ++it) {
    const std::uint64_t p = *it;
    switch (splitting_type(field, p)) {
      case Splitting::Split: count += 2; break;
      case Splitting::Ramified: count += 1; break;
      case Splitting::Inert: count += (p * p <= n) ? 1 : 0; break;
    }
  }
  return count;
}

BrunTitchmarshMargin PrimeTable::brun_titchmarsh_margin(const NumberField& field, double x,
                                                        double y) const {
  require(std::isfinite(x) && std::isfinite(y), ErrorKind::Argument,
          "Brun-Titchmarsh inputs must be finite");
  require(y >= 2.0, ErrorKind::Argument, "Brun-Titchmarsh needs y >= 2");
  require(y <= x, ErrorKind::Argument, "Brun-Titchmarsh needs y <= x");
  BrunTitchmarshMargin m;
  m.count = prime_count(field, x + y) - prime_count(field, x);
  m.bound = 4.0 * field.degree() * y / std::log(y);
  m.satisfied = static_cast<double>(m.count) <= m.bound;
  return m;
}

}  // namespace rslab
