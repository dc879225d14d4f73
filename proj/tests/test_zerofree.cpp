#include "doctest.h"

#include "rslab/error.hpp"
#include "rslab/zerofree.hpp"

#include <cmath>

using namespace rslab;

namespace {

const PrimeTable& table() {
  static const PrimeTable t(1'000'000);
  return t;
}

// Largest beta < sigma with lower <= upper(beta), by bisection on the defining inequality.
double bisect_beta(double sigma, double lower, double A, double logQ) {
  auto ok = [&](double beta) { return lower <= upper_template(sigma, beta, A, logQ); };
  double lo = sigma - 1e6, hi = sigma;
  REQUIRE(ok(lo));
  for (int i = 0; i < 400 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

TEST_CASE("templates") {
  CHECK(upper_template(1.1, 0.9, 1.0, 10.0) == doctest::Approx(-10.0 + 20.0 + 10.0));
  CHECK(upper_template(1.1, 0.95, 1.0, 10.0) < upper_template(1.1, 0.9, 1.0, 10.0));
  CHECK(lower_template(1.1, 2.0, 7.0) == doctest::Approx(2.0 * std::pow(10.0, -0.2) / 0.1));
  CHECK(lower_template(1.5, 1.0, 0.0) > 0.0);
  CHECK_THROWS_AS(upper_template(1.0, 0.5, 1.0, 1.0), Error);
  CHECK_THROWS_AS(upper_template(1.1, 1.1, 1.0, 1.0), Error);
  CHECK_THROWS_AS(lower_template(0.9, 1.0, 1.0), Error);
}

TEST_CASE("width solver against bisection") {
  for (double gamma : {10.0, 100.0, 1000.0, 10000.0}) {
    for (double logQ : {10.0, default_logQ(gamma)}) {
      const auto r = width_solver(1.0, 1.0, logQ, gamma, 0.1);
      REQUIRE(r.status == WidthStatus::Bounded);
      CHECK(r.beta_max < 1.0);
      CHECK(r.residual < 1e-12);
      CHECK(r.sigma == doctest::Approx(1.0 + 0.1 / std::log(gamma + 3.0)));
      CHECK(std::abs(bisect_beta(r.sigma, r.lower, 1.0, logQ) - r.beta_max) < 1e-12);
    }
  }
}

TEST_CASE("width scales like 1/log") {
  // with logQ = 2 log(g+3), (1 - beta) log(g+3) = 2/D' - c0 where D' = 2/c0 + 2A - c e^{-2c0}/c0
  const double c0 = 0.1;
  const double Dp = 2.0 / c0 + 2.0 - std::exp(-2.0 * c0) / c0;
  const double expected = 2.0 / Dp - c0;
  for (double gamma : {10.0, 100.0, 1000.0, 10000.0}) {
    const auto r = width_solver(1.0, 1.0, default_logQ(gamma), gamma, c0);
    CHECK(r.scaled_width == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("width solver edge cases") {
  CHECK(width_solver(0.0, 1.0, 10.0, 10.0, 0.1).status == WidthStatus::Vacuous);
  // larger A shrinks the width
  double prev = 1e9;
  for (double A : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const auto r = width_solver(1.0, A, 10.0, 10.0, 0.1);
    CHECK(r.one_minus_beta < prev);
    prev = r.one_minus_beta;
  }
  // huge c: lower beats upper for every beta
  const auto none = width_solver(1e6, 1.0, 1.0, 10.0, 0.1);
  CHECK(none.status == WidthStatus::NoZeroPossible);
  CHECK(none.denominator <= 0.0);
  CHECK_THROWS_AS(width_solver(-1.0, 1.0, 1.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(width_solver(1.0, 0.0, 1.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(width_solver(1.0, 1.0, 0.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(width_solver(1.0, 1.0, 1.0, 1.0, 0.0), Error);
  CHECK(std::string(to_string(WidthStatus::Vacuous)) == "no constraint");
}

TEST_CASE("lower bound scan on the zeta line") {
  std::vector<double> ts;
  for (double t = 1.0; t <= 100.0; t += 0.5) ts.push_back(t);
  const double off[] = {0.0};
  const auto s = lower_bound_scan(table(), Rep::trivial(), ts, off);
  REQUIRE(s.rows.size() == ts.size());
  CHECK(s.min_ratio > 0.8);
  for (const auto& r : s.rows) {
    CHECK(r.zeta);
    CHECK(r.lower <= r.value);
    CHECK(r.lower >= r.value - r.error);
  }
  // mpmath: abs(zeta(1+1j)) = 1.0945118856076
  CHECK(s.rows[0].value == doctest::Approx(1.0945118856076).epsilon(1e-11));
  std::vector<double> fine;
  for (double t = 1.0; t <= 100.0; t += 0.25) fine.push_back(t);
  const auto f = lower_bound_scan(table(), Rep::trivial(), fine, off);
  CHECK(std::abs(f.min_ratio - s.min_ratio) / s.min_ratio < 0.02);
  CHECK(f.min_ratio <= s.min_ratio);
}

TEST_CASE("lower bound scan off the line") {
  const Rep d = Rep::delta(100'000);
  const double ts[] = {10.0, -10.0, 50.0};
  const double off[] = {1.0, 2.0};
  const auto s = lower_bound_scan(table(), d, ts, off);
  REQUIRE(s.rows.size() == 6);
  for (const auto& r : s.rows) {
    CHECK_FALSE(r.zeta);
    CHECK(r.lower > 0.0);
    CHECK(r.lower < r.value);
    CHECK(r.sigma >= 1.0 + 1.0 / std::log(std::abs(r.t) + 3.0) - 1e-15);
  }
  // self-dual data: t -> -t
  CHECK(s.rows[0].value == doctest::Approx(s.rows[2].value).epsilon(1e-12));
  CHECK(s.rows[1].lower == doctest::Approx(s.rows[3].lower).epsilon(1e-12));
  // trivial rep: series route agrees with zeta within its bar
  const double t1[] = {5.0};
  const double o1[] = {1.0};
  const auto z = lower_bound_scan(table(), Rep::trivial(), t1, o1);
  const auto q = lower_bound_scan(table(), Rep::trivial(NumberField::quadratic(-1)), t1, o1);
  CHECK(z.rows[0].zeta);
  CHECK_FALSE(q.rows[0].zeta);
  const double half[] = {0.5};
  CHECK_THROWS_AS(lower_bound_scan(table(), d, t1, half), Error);
  const double zero[] = {0.0};
  const double t0[] = {0.0};
  CHECK_THROWS_AS(lower_bound_scan(table(), Rep::trivial(), t0, zero), Error);
}

TEST_CASE("lower-bound chain") {
  const ZetaEdgeEvaluator ev;
  const double Ys[] = {1e3, 1e4, 1e5};
  const auto c = lower_bound_chain(table(), Rep::trivial(), 1.0, Ys, SmoothWeight(), ev);
  CHECK(c.L_abs == doctest::Approx(1.0945118856076).epsilon(1e-11));
  REQUIRE(c.rows.size() == 3);
  for (const auto& r : c.rows) {
    CHECK(r.informative);
    CHECK(r.implied <= c.L_abs * (1.0 + 1e-12));
    CHECK(r.implied > 0.0);
  }
  CHECK(c.best_implied == doctest::Approx(c.L_abs));
  CHECK(c.comparator == doctest::Approx(1.0 / std::pow(std::log(4.0), 3)));
  const double tiny[] = {1.5};  // no ideal in (aY, bY) beyond 1
  const auto u = lower_bound_chain(table(), Rep::trivial(), 1.0, tiny, SmoothWeight(0.5, 2.5), ev);
  CHECK(u.rows[0].F >= 0.0);
  const std::vector<double> none;
  CHECK_THROWS_AS(lower_bound_chain(table(), Rep::trivial(), 1.0, none, SmoothWeight(), ev), Error);
  CHECK_THROWS_AS(lower_bound_chain(table(), Rep::delta(1000), 1.0, Ys, SmoothWeight(), ev), Error);
}
