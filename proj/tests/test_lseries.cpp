#include "doctest.h"

#include "rslab/error.hpp"
#include "rslab/lseries.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace rslab;

namespace {

PrimeIdeal rational_prime(std::uint64_t p) { return PrimeIdeal{p, 1, p, false, 0}; }

const PrimeTable& table() {
  static const PrimeTable t(1'000'000);
  return t;
}

const Rep& delta() {
  static const Rep d = Rep::delta(20'000);
  return d;
}

// prod_{j,l} (1 - beta_j conj(beta_l) X)^{-1} to order kmax by multiplying geometric series.
std::vector<Complex> local_factor_by_expansion(const std::vector<Complex>& beta, int kmax) {
  std::vector<Complex> series(static_cast<std::size_t>(kmax) + 1, 0.0);
  series[0] = 1.0;
  for (const Complex& a : beta)
    for (const Complex& b : beta) {
      const Complex z = a * std::conj(b);
      std::vector<Complex> next(series.size(), 0.0);
      for (std::size_t i = 0; i < series.size(); ++i) {
        Complex zp = 1.0;
        for (std::size_t k = 0; i + k < series.size(); ++k) {
          next[i + k] += series[i] * zp;
          zp *= z;
        }
      }
      series = next;
    }
  return series;
}

// Dirichlet coefficients of zeta(s)^2 zeta(s + it) zeta(s - it), by direct convolution.
std::vector<double> four_zeta_coefficients(std::size_t n_max, double t) {
  std::vector<Complex> a(n_max + 1, 0.0), b(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) a[n] = 1.0;
  auto convolve = [&](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    std::vector<Complex> z(n_max + 1, 0.0);
    for (std::size_t i = 1; i <= n_max; ++i)
      for (std::size_t j = 1; i * j <= n_max; ++j) z[i * j] += x[i] * y[j];
    return z;
  };
  std::vector<Complex> plus(n_max + 1), minus(n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    plus[n] = std::polar(1.0, -t * std::log(static_cast<double>(n)));
    minus[n] = std::conj(plus[n]);
  }
  b = convolve(convolve(convolve(a, a), plus), minus);
  std::vector<double> out(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) out[n] = b[n].real();
  return out;
}

}  // namespace

TEST_CASE("local coefficients match the product of geometric series") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tdist(-50.0, 50.0);
  for (const Rep& r : {Rep::trivial(), Rep::dirichlet(4, 1), Rep::dirichlet(7, 1), delta()}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double t = tdist(rng);
      const auto pi = build_auxiliary_pi(r, t);
      for (std::uint64_t p : {3ULL, 11ULL, 101ULL, 9973ULL}) {
        if (pi.ramified_at(p)) continue;
        const auto P = rational_prime(p);
        const auto oracle = local_factor_by_expansion(satake_multiset(pi, P), 10);
        const auto loc = rs_local(pi, P, 10);
        for (int k = 0; k <= 10; ++k) {
          CHECK(std::abs(oracle[k].imag()) < 1e-9);
          CHECK(loc.lambda[k] == doctest::Approx(oracle[k].real()).epsilon(1e-9).scale(1.0));
          CHECK(loc.lambda[k] >= 0.0);
        }
        const Complex l = r.lambda(P);
        const double expected = std::norm(l) * std::norm(1.0 + std::polar(1.0, t * std::log(double(p))));
        CHECK(rs_lambda_prime(pi, P) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
        CHECK(rs_Lambda_prime(pi, P) ==
              doctest::Approx(expected * std::log(double(p))).epsilon(1e-10).scale(1.0));
        CHECK(rs_lambda_prime_power(pi, P, 3) == doctest::Approx(loc.lambda[3]));
      }
    }
  }
}

TEST_CASE("symbolic factor list reproduces the linear coefficient") {
  const auto pi = build_auxiliary_pi(delta(), 3.7);
  const auto fact = rs_factorize(pi);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 97ULL}) {
    const auto P = rational_prime(p);
    CHECK(factorization_linear_coefficient(pi, fact, P) ==
          doctest::Approx(rs_lambda_prime(pi, P)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("local coefficient argument checks") {
  const auto pi = build_auxiliary_pi(Rep::dirichlet(4, 1), 1.0);
  CHECK_THROWS_AS(rs_local(pi, rational_prime(2), 3), Error);
  CHECK_THROWS_AS(rs_local(pi, rational_prime(3), 41), Error);
  CHECK_THROWS_AS(rs_lambda_prime_power(pi, rational_prime(3), 0), Error);
}

TEST_CASE("coefficients by norm match direct convolution") {
  for (double t : {0.0, 1.0, 7.5}) {
    const auto a = rs_coefficients_by_norm(table(), build_auxiliary_pi(Rep::trivial(), t), 400);
    const auto oracle = four_zeta_coefficients(400, t);
    for (std::size_t n = 1; n <= 400; ++n)
      CHECK(a[n] == doctest::Approx(oracle[n]).epsilon(1e-10).scale(1.0));
  }
  // Q(i), t = 0: coefficients of zeta_K(s)^4 with zeta_K = zeta * L(chi_{-4}).
  {
    const std::size_t N = 300;
    std::vector<double> zk(N + 1, 0.0);
    for (std::size_t d = 1; d <= N; ++d) {
      const double chi = d % 2 == 0 ? 0.0 : (d % 4 == 1 ? 1.0 : -1.0);
      for (std::size_t m = d; m <= N; m += d) zk[m] += chi;
    }
    auto conv = [&](const std::vector<double>& x, const std::vector<double>& y) {
      std::vector<double> z(N + 1, 0.0);
      for (std::size_t i = 1; i <= N; ++i)
        for (std::size_t j = 1; i * j <= N; ++j) z[i * j] += x[i] * y[j];
      return z;
    };
    const auto oracle = conv(conv(zk, zk), conv(zk, zk));
    const auto a = rs_coefficients_by_norm(
        table(), build_auxiliary_pi(Rep::trivial(NumberField::quadratic(-1)), 0.0), N);
    for (std::size_t n = 1; n <= N; ++n) CHECK(a[n] == doctest::Approx(oracle[n]));
  }
  // chi mod 5: zeta^4 with the Euler factor at 5 removed.
  {
    const auto a = rs_coefficients_by_norm(table(), build_auxiliary_pi(Rep::dirichlet(5, 1), 0.0), 200);
    const auto z4 = four_zeta_coefficients(200, 0.0);
    for (std::size_t n = 1; n <= 200; ++n) CHECK(a[n] == doctest::Approx(n % 5 == 0 ? 0.0 : z4[n]));
  }
  CHECK_THROWS_AS(rs_coefficients_by_norm(table(), build_auxiliary_pi(Rep::trivial(), 0.0), 2'000'000),
                  Error);
}

TEST_CASE("truncated negative log derivative with tail bound") {
  const auto pi = build_auxiliary_pi(Rep::trivial(), 0.0);
  const double truth = 4.0 * 0.56996099309453280639986436002;
  for (std::uint64_t cutoff : {100ULL, 10'000ULL, 1'000'000ULL}) {
    const auto v = truncated_neg_logderiv(table(), pi, 2.0, cutoff);
    CHECK(std::abs(v.value - truth) <= v.tail_bound);
    CHECK(v.value <= truth);
  }
  const auto terms = neg_logderiv_terms(table(), pi, 2.0, 1000);
  REQUIRE(!terms.empty());
  CHECK(terms.front().norm == 2);
  for (std::size_t i = 1; i < terms.size(); ++i) CHECK(terms[i].norm >= terms[i - 1].norm);
  CHECK(terms.back().partial_sum == doctest::Approx(truncated_neg_logderiv(table(), pi, 2.0, 1000).value));
  CHECK_THROWS_AS(truncated_neg_logderiv(table(), pi, 1.0, 100), Error);
  CHECK_THROWS_AS(truncated_neg_logderiv(table(), pi, 2.0, 10'000'000), Error);
}

TEST_CASE("truncated log L against log zeta") {
  const Complex s(2.0, 3.0);
  const Complex truth(-0.215563136446139049508685281866, -0.141579184240551645873091981017);
  const auto v = truncated_log_L(table(), Rep::trivial(), s, 100'000);
  CHECK(std::abs(v.value - truth) <= v.tail_bound);
  CHECK(std::abs(v.value - truth) < 1e-4);
}

TEST_CASE("euler maclaurin zeta against reference values") {
  struct Ref {
    Complex s, z, dz;
  };
  const Ref refs[] = {
      {{1.0, 1.0}, {0.582158059752003648199, -0.926848564330807076536}, {1.07380897611570794500, -0.0100798441876324410990}},
      {{1.0, 100.0}, {1.63283350668671186661, -0.0681312038418124901012}, {-1.07834014688721553835, -0.0279820400446548082144}},
      {{2.0, 3.0}, {0.798021985146275720622, -0.113744308052938500216}, {0.140129590117486480246, 0.0215146782791966581959}},
      {{2.0, 0.0}, {std::numbers::pi * std::numbers::pi / 6.0, 0.0}, {-0.937548254315843753702574, 0.0}},
  };
  for (const auto& r : refs) {
    for (int N : {20, 50, 200}) {
      for (int M : {4, 8, 12}) {
        const auto z = zeta_em(r.s, N, M);
        CHECK(std::abs(z.value - r.z) <= z.error + 1e-15);
        CHECK(std::abs(z.derivative - r.dz) <= z.derivative_error + 1e-15);
      }
    }
    const auto z = zeta_em_auto(r.s, 1e-11);
    CHECK(std::abs(z.value - r.z) < 1e-11);
    CHECK(std::abs(z.derivative - r.dz) < 1e-11);
    CHECK(z.error <= 1e-11);
  }
  CHECK_THROWS_AS(zeta_em({1.0, 0.0}, 20, 6), Error);
  CHECK_THROWS_AS(zeta_em({2.0, 0.0}, 20, 1), Error);
  CHECK_THROWS_AS(zeta_em({2.0, 0.0}, 20, 15), Error);
}

TEST_CASE("residues against contour integrals of a synthetic Laurent model") {
  // Z(s) = g/(s-1) + g0 + c1 (s-1) + c2 (s-1)^2, A(s) = a0 + a1 (s-1) + a2 (s-1)^2,
  // M = Z A, G(s) = M(s)^2 M(s + it) M(s - it).
  const double g = 0.7, g0 = 0.31, c1 = -0.2, c2 = 0.05;
  const double a0 = 1.4, a1 = -0.6, a2 = 0.25;
  const double t = 1.3;
  auto M = [&](Complex s) {
    const Complex u = s - 1.0;
    return (g / u + g0 + c1 * u + c2 * u * u) * (a0 + a1 * u + a2 * u * u);
  };
  auto dM = [&](Complex s) {
    const Complex u = s - 1.0;
    const Complex Z = g / u + g0 + c1 * u + c2 * u * u;
    const Complex dZ = -g / (u * u) + c1 + 2.0 * c2 * u;
    const Complex A = a0 + a1 * u + a2 * u * u;
    const Complex dA = a1 + 2.0 * a2 * u;
    return dZ * A + Z * dA;
  };
  const Complex I(0.0, 1.0);
  auto G = [&](Complex s) { return M(s) * M(s) * M(s + I * t) * M(s - I * t); };
  auto contour = [&](Complex centre, int power) {
    const int n = 512;
    const double rho = 0.3;
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex w = std::polar(rho, 2.0 * std::numbers::pi * k / n);
      acc += G(centre + w) * std::pow(w, power) * w;
    }
    return acc / static_cast<double>(n);
  };

  ResidueInputs in;
  in.t = t;
  in.gamma_m1 = g;
  in.gamma_0 = g0;
  in.L1_ad = a0;
  in.L1_ad_prime = a1;
  in.L_1p_it = M(1.0 + I * t);
  in.L_1m_it = M(1.0 - I * t);
  in.L_1p_2it = M(1.0 + 2.0 * I * t);
  in.L_1m_2it = M(1.0 - 2.0 * I * t);
  in.logderiv_1p_it = dM(1.0 + I * t) / M(1.0 + I * t);
  const auto r = residues(in);

  CHECK(std::abs(contour(1.0, 1) - r.r_minus2) < 1e-10);
  CHECK(std::abs(contour(1.0, 0) - r.r_minus1) < 1e-10);
  CHECK(std::abs(contour(1.0 + I * t, 0) - r.r_plus) < 1e-10);
  CHECK(std::abs(contour(1.0 - I * t, 0) - r.r_minus) < 1e-10);
  CHECK(std::abs(r.r_minus - std::conj(r.r_plus)) < 1e-12);

  in.t = 0.0;
  CHECK_THROWS_AS(residues(in), Error);
}

TEST_CASE("residue error bound covers perturbed inputs") {
  const ZetaEdgeEvaluator ev(1e-12);
  ResidueInputs in = ev.residue_inputs(1.0);
  in.input_error = 1e-6;
  const auto r = residues(in);
  ResidueInputs shifted = in;
  shifted.L_1p_it += Complex(5e-7, -5e-7);
  shifted.L_1m_it = std::conj(shifted.L_1p_it);
  shifted.logderiv_1p_it += Complex(-8e-7, 0.0);
  shifted.input_error = 0.0;
  const auto r2 = residues(shifted);
  CHECK(std::abs(r2.r_minus2 - r.r_minus2) <= r.error_bound);
  CHECK(std::abs(r2.r_minus1 - r.r_minus1) <= r.error_bound);
  CHECK(std::abs(r2.r_plus - r.r_plus) <= r.error_bound);
}

TEST_CASE("zeta residues for the trivial representation") {
  const ZetaEdgeEvaluator ev(1e-12);
  const auto r = residues(Rep::trivial(), 1.0, ev);
  const Complex z(0.582158059752003648199, -0.926848564330807076536);
  CHECK(r.r_minus2 == doctest::Approx(std::norm(z)).epsilon(1e-11));
  CHECK(r.error_bound < 1e-9);
  CHECK(r.t == 1.0);
  CHECK_THROWS_AS(residues(Rep::trivial(), 0.0, ev), Error);
  CHECK_THROWS_AS(residues(delta(), 1.0, ev), Error);
}

TEST_CASE("tabulated edge values") {
  TabulatedEdgeEvaluator ev("trivial@Q", 1.0, kEulerGamma, 1.0, 0.0, 1e-13);
  const auto z1 = zeta_em_auto({1.0, 1.0}, 1e-13);
  const auto z2 = zeta_em_auto({1.0, 2.0}, 1e-13);
  ev.add(1.0, z1.value, z1.derivative);
  ev.add(2.0, z2.value, z2.derivative);
  const auto a = residues(Rep::trivial(), 1.0, ev);
  const auto b = residues(Rep::trivial(), 1.0, ZetaEdgeEvaluator(1e-13));
  CHECK(a.r_minus1 == doctest::Approx(b.r_minus1).epsilon(1e-10));
  CHECK(std::abs(a.r_plus - b.r_plus) < 1e-10);
  CHECK(std::abs(residues(Rep::trivial(), -1.0, ev).r_plus - std::conj(a.r_plus)) < 1e-12);
  CHECK_THROWS_AS(residues(Rep::trivial(), 3.0, ev), Error);
}

TEST_CASE("goli bound table") {
  const ZetaEdgeEvaluator ev(1e-10);
  const std::vector<double> ts = {0.0, 1.0, 5.0, 20.0, 50.0};
  const auto rows = goli_bound_check(Rep::trivial(), ts, ev);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].ratio_L > 0.0);
    CHECK(rows[i].ratio_L < 2.0);
    CHECK(rows[i].ratio_L_prime < 2.0);
    if (i > 0) CHECK(rows[i].max_ratio_L >= rows[i - 1].max_ratio_L);
  }
}
