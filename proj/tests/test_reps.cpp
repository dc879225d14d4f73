#include "doctest.h"

#include "rslab/error.hpp"
#include "rslab/reps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace rslab;

namespace {

PrimeIdeal rational_prime(std::uint64_t p) { return PrimeIdeal{p, 1, p, false, 0}; }

const Rep& delta() {
  static const Rep d = Rep::delta(20'000);
  return d;
}

}  // namespace

TEST_CASE("lambda for closed-form sources") {
  CHECK(Rep::trivial().lambda(rational_prime(7)) == Complex(1.0, 0.0));
  const Rep chi4 = Rep::dirichlet(4, 1);
  CHECK(chi4.lambda(rational_prime(3)).real() == -1.0);
  CHECK(chi4.lambda(rational_prime(5)).real() == 1.0);
  CHECK(chi4.self_dual());
  try {
    chi4.lambda(rational_prime(2));
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("dirichlet characters are multiplicative and unitary") {
  for (std::uint64_t q : {5ULL, 7ULL, 9ULL, 25ULL, 18ULL}) {
    const auto& src = std::get<DirichletSource>(Rep::dirichlet(q, 1).source());
    for (std::uint64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      CHECK(std::abs(src.values[a]) == doctest::Approx(1.0));
      for (std::uint64_t b = 1; b < q; ++b) {
        if (std::gcd(b, q) != 1) continue;
        CHECK(std::abs(src.values[a] * src.values[b] - src.values[(a * b) % q]) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(Rep::dirichlet(8, 1), Error);
  CHECK_THROWS_AS(Rep::dirichlet(5, 4), Error);
  CHECK(Rep::dirichlet(5, 1).dual().key() == Rep::dirichlet(5, 3).key());
  CHECK(!Rep::dirichlet(5, 1).self_dual());
  CHECK(Rep::dirichlet(5, 2).self_dual());
}

TEST_CASE("delta eigenvalues and satake parameters") {
  const Rep& d = delta();
  CHECK(d.lambda(rational_prime(2)).real() == doctest::Approx(-24.0 / std::pow(2.0, 5.5)));
  CHECK(d.lambda(rational_prime(2)).real() == doctest::Approx(-0.5303300859).epsilon(1e-9));
  CHECK(d.lambda(rational_prime(3)).real() == doctest::Approx(252.0 / (243.0 * std::sqrt(3.0))).epsilon(1e-12));
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 19997ULL}) {
    const auto P = rational_prime(p);
    const auto s = d.satake(P);
    REQUIRE(s.size() == 2);
    const Complex lam = d.lambda(P);
    // Roots of X^2 - lambda X + 1 via the quadratic formula.
    const Complex disc = std::sqrt(lam * lam - 4.0);
    const Complex r1 = (lam + disc) / 2.0, r2 = (lam - disc) / 2.0;
    const bool match = (std::abs(s[0] - r1) < 1e-12 && std::abs(s[1] - r2) < 1e-12) ||
                       (std::abs(s[0] - r2) < 1e-12 && std::abs(s[1] - r1) < 1e-12);
    CHECK(match);
    CHECK(std::abs(s[0]) == doctest::Approx(1.0));
    CHECK(std::abs(s[0] * s[1] - 1.0) < 1e-12);
  }
  try {
    d.lambda(rational_prime(20'011));
    FAIL("expected resource or data error");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::Data || e.kind() == ErrorKind::Resource));
  }
}

TEST_CASE("satake sums reproduce lambda for every unramified prime below 1e4") {
  const PrimeTable primes(10'000);
  for (const Rep& r : {Rep::trivial(), Rep::dirichlet(4, 1), Rep::dirichlet(7, 1), delta()}) {
    for (std::uint32_t p : primes.primes()) {
      if (r.ramified_at(p)) continue;
      const auto P = rational_prime(p);
      Complex sum(0.0, 0.0);
      for (const Complex& a : r.satake(P)) sum += a;
      CHECK(std::abs(sum - r.lambda(P)) < 1e-12);
    }
  }
}

TEST_CASE("trivial rep over a quadratic field") {
  const Rep r = Rep::trivial(NumberField::quadratic(-1));
  CHECK(r.lambda(PrimeIdeal{3, 2, 9, false, 0}) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(Rep::dirichlet(4, 1).lambda(PrimeIdeal{3, 2, 9, false, 0}), Error);
}

TEST_CASE("deligne bound enforced at ingestion") {
  ApTable bad;
  bad.weight = 12;
  bad.level = 1;
  bad.label = "bad";
  bad.entries = {{2, 100}};
  CHECK_THROWS_AS(Rep::newform(bad), Error);
}

TEST_CASE("auxiliary pi") {
  const auto pi = build_auxiliary_pi(delta(), 5.0);
  REQUIRE(pi.components().size() == 2);
  CHECK(pi.components()[0].shift == 2.5);
  CHECK(pi.components()[1].shift == -2.5);
  CHECK(pi.total_rank() == 4);
  CHECK(build_auxiliary_pi(Rep::trivial(), 0.0).total_rank() == 2);
  CHECK_THROWS_AS(build_auxiliary_pi(Rep::trivial(), std::nan("")), Error);
}

TEST_CASE("pole order of the auxiliary pi") {
  for (const Rep& r : {Rep::trivial(), Rep::dirichlet(4, 1), Rep::dirichlet(5, 1), delta()}) {
    for (double t : {0.5, -3.0, 10.0}) {
      const auto f = rs_factorize(build_auxiliary_pi(r, t));
      CHECK(f.pole_order == 2);
      std::vector<double> shifts;
      for (const auto& x : f.factors) shifts.push_back(x.net_shift);
      std::sort(shifts.begin(), shifts.end());
      CHECK(shifts == std::vector<double>{-std::abs(t), 0.0, 0.0, std::abs(t)});
    }
    CHECK(rs_factorize(build_auxiliary_pi(r, 0.0)).pole_order == 4);
  }
}

TEST_CASE("pole order of the three-component construction") {
  const Rep d = delta();
  const Rep triv = Rep::trivial();
  const Rep chi5 = Rep::dirichlet(5, 1);
  const Rep chi4 = Rep::dirichlet(4, 1);
  // not self-dual
  CHECK(rs_factorize(build_appendix_pi(chi5, d, 0.0)).pole_order == 3);
  CHECK(rs_factorize(build_appendix_pi(chi5, d, 2.0)).pole_order == 3);
  // self-dual, t != 0
  CHECK(rs_factorize(build_appendix_pi(d, d, 1.0)).pole_order == 3);
  CHECK(rs_factorize(build_appendix_pi(d, triv, 1.0)).pole_order == 3);
  // self-dual, t = 0
  CHECK(rs_factorize(build_appendix_pi(d, triv, 0.0)).pole_order == 5);
  CHECK(rs_factorize(build_appendix_pi(chi4, d, 0.0)).pole_order == 5);
  // pi = pi': L_2 carries (pi x pi')^2 (dual(pi) x pi')^2 (pi x pi) (dual(pi) x dual(pi)),
  // six poles at t = 0, on top of the three from L_1.
  CHECK(rs_factorize(build_appendix_pi(d, d, 0.0)).pole_order == 9);
  CHECK(rs_factorize(build_appendix_pi(chi4, chi4, 0.0)).pole_order == 9);
  // pi' must be self-dual
  CHECK_THROWS_AS(build_appendix_pi(d, chi5, 0.0), Error);
}

TEST_CASE("pole order is invariant under permutations") {
  const Rep d = delta();
  std::vector<IsobaricComponent> comps = {
      {d, 1.0}, {d, -1.0}, {Rep::dirichlet(5, 1), 0.0}, {Rep::dirichlet(5, 3), 0.0}, {d, 0.0}};
  const int m = rs_factorize(IsobaricSum(comps)).pole_order;
  std::vector<std::size_t> idx(comps.size());
  std::iota(idx.begin(), idx.end(), 0);
  int perms = 0;
  do {
    std::vector<IsobaricComponent> c;
    for (auto i : idx) c.push_back(comps[i]);
    CHECK(rs_factorize(IsobaricSum(c)).pole_order == m);
    ++perms;
  } while (std::next_permutation(idx.begin(), idx.end()));
  CHECK(perms == 120);
  CHECK(m == 5);
}

TEST_CASE("zero count range") {
  const auto f3 = rs_factorize(build_appendix_pi(Rep::dirichlet(5, 1), Rep::trivial(), 0.0));
  const auto r = zero_count_range(f3, 1, 1, 10.0, 1.0);
  CHECK(r.lower_sigma == doctest::Approx(1.0 - 1.0 / 160.0));
  CHECK(r.max_real_zeros == 3);
  const auto f5 = rs_factorize(build_appendix_pi(Rep::trivial(), Rep::dirichlet(4, 1), 0.0));
  CHECK(f5.pole_order == 5);
  CHECK(zero_count_range(f5, 1, 1, 10.0, 1.0).lower_sigma == doctest::Approx(1.0 - 1.0 / 240.0));
  CHECK(zero_count_range(f5, 1, 1, 10.0, 1.0).max_real_zeros == 5);
  CHECK_THROWS_AS(zero_count_range(f3, 1, 1, 10.0, 0.0), Error);
  CHECK_THROWS_AS(zero_count_range(f3, 1, 1, -1.0, 1.0), Error);
}
