#include "doctest.h"

#include "rslab/error.hpp"
#include "rslab/fields.hpp"

#include <cmath>
#include <vector>

using namespace rslab;

namespace {

std::vector<bool> eratosthenes(std::uint64_t n) {
  std::vector<bool> prime(n + 1, true);
  prime[0] = false;
  if (n >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (prime[i])
      for (std::uint64_t j = i * i; j <= n; j += i) prime[j] = false;
  return prime;
}

const PrimeTable& table() {
  static const PrimeTable t(2'000'000);
  return t;
}

std::vector<std::uint64_t> norms(const std::vector<PrimeIdeal>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& P : v) out.push_back(P.norm);
  return out;
}

}  // namespace

TEST_CASE("number field invariants") {
  const auto q = NumberField::rationals();
  CHECK(q.degree() == 1);
  CHECK(q.discriminant() == 1);
  CHECK(NumberField::quadratic(-1).discriminant() == -4);
  CHECK(NumberField::quadratic(5).discriminant() == 5);
  CHECK(NumberField::quadratic(-3).discriminant() == -3);
  CHECK(NumberField::quadratic(2).discriminant() == 8);
  CHECK(NumberField::quadratic(2).degree() == 2);
  CHECK_THROWS_AS(NumberField::quadratic(1), Error);
  CHECK_THROWS_AS(NumberField::quadratic(0), Error);
  CHECK_THROWS_AS(NumberField::quadratic(12), Error);
}

TEST_CASE("kronecker symbol for -4 matches p mod 4") {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 101ULL, 103ULL}) {
    const int expected = (p % 4 == 1) ? 1 : -1;
    CHECK(kronecker_symbol(-4, p) == expected);
  }
  CHECK(kronecker_symbol(-4, 2) == 0);
}

TEST_CASE("kronecker symbol against brute-force squares") {
  for (std::int64_t d : {-7, -3, 2, 3, 5, 13, -15}) {
    const auto F = NumberField::quadratic(d);
    const std::int64_t D = F.discriminant();
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
      const auto t = splitting_type(F, p);
      const std::int64_t r = ((D % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                              static_cast<std::int64_t>(p);
      if (r == 0) {
        CHECK(t == Splitting::Ramified);
        continue;
      }
      bool square = false;
      for (std::uint64_t x = 1; x < p; ++x)
        if ((x * x) % p == static_cast<std::uint64_t>(r)) square = true;
      CHECK(t == (square ? Splitting::Split : Splitting::Inert));
    }
  }
}

TEST_CASE("primes in norm range") {
  const auto& T = table();
  CHECK(norms(T.primes_in_norm_range(NumberField::rationals(), 2, 10)) ==
        std::vector<std::uint64_t>{2, 3, 5, 7});
  const auto gauss = T.primes_in_norm_range(NumberField::quadratic(-1), 2, 10);
  CHECK(norms(gauss) == std::vector<std::uint64_t>{2, 5, 5, 9});
  CHECK(gauss[0].ramified);
  CHECK(gauss[1].index == 0);
  CHECK(gauss[2].index == 1);
  CHECK(gauss[3].f == 2);
  CHECK(gauss[3].p == 3);
  CHECK_THROWS_AS(T.primes_in_norm_range(NumberField::rationals(), 10, 2), Error);
  try {
    T.primes_in_norm_range(NumberField::rationals(), 2, 3'000'000);
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
    CHECK(std::string(e.what()).find("2000000") != std::string::npos);
  }
}

TEST_CASE("prime count agrees with plain sieve") {
  const auto& T = table();
  const auto sieve = eratosthenes(100'000);
  std::int64_t count = 0;
  for (bool b : sieve) count += b;
  CHECK(count == 9592);
  CHECK(T.prime_count(NumberField::rationals(), 100'000) == count);
  CHECK(T.prime_count(NumberField::rationals(), 10) == 4);
  CHECK(T.prime_count(NumberField::rationals(), 0) == 0);
  CHECK(T.prime_count(NumberField::rationals(), 10.5) == 4);
  // Q(i): 2 once, p = 1 mod 4 twice, p = 3 mod 4 once when p^2 <= x.
  std::int64_t gauss = 0;
  for (std::uint64_t p = 2; p <= 10'000; ++p) {
    if (!sieve[p]) continue;
    if (p == 2) gauss += 1;
    else if (p % 4 == 1) gauss += 2;
    else if (p * p <= 10'000) gauss += 1;
  }
  CHECK(T.prime_count(NumberField::quadratic(-1), 10'000) == gauss);
}

TEST_CASE("segmented sieve matches plain sieve on a window") {
  const auto sieve = eratosthenes(1'200'000);
  std::vector<std::uint64_t> got;
  for_each_prime(999'000, 1'200'000, [&](std::uint64_t p) { got.push_back(p); });
  std::vector<std::uint64_t> want;
  for (std::uint64_t n = 999'000; n <= 1'200'000; ++n)
    if (sieve[n]) want.push_back(n);
  CHECK(got == want);
}

TEST_CASE("brun titchmarsh margin") {
  const auto& T = table();
  const auto m = T.brun_titchmarsh_margin(NumberField::rationals(), 1e6, 1e4);
  const auto sieve = eratosthenes(1'010'000);
  std::int64_t c = 0;
  for (std::uint64_t n = 1'000'001; n <= 1'010'000; ++n) c += sieve[n];
  CHECK(m.count == c);
  CHECK(m.bound == doctest::Approx(4e4 / std::log(1e4)));
  CHECK(m.satisfied);
  CHECK_THROWS_AS(T.brun_titchmarsh_margin(NumberField::rationals(), 10, 1), Error);
  CHECK_THROWS_AS(T.brun_titchmarsh_margin(NumberField::rationals(), 10, 20), Error);
}
