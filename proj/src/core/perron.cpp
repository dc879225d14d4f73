#include "rslab/perron.hpp"

#include "rslab/error.hpp"
#include "rslab/summation.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <functional>

namespace rslab {

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / u - 1.0 / (1.0 - u)));
}

double smooth_step_derivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double s = smooth_step(u);
  return s * (1.0 - s) * (1.0 / (u * u) + 1.0 / ((1.0 - u) * (1.0 - u)));
}

SmoothWeight::SmoothWeight(double a, double b) : a_(a), b_(b) {
  require(std::isfinite(a) && std::isfinite(b), ErrorKind::Argument, "support must be finite");
  require(a > 0.0 && a < 1.0, ErrorKind::Argument, "support start a must lie in (0, 1)");
  require(b > 2.0, ErrorKind::Argument, "support end b must exceed 2");
}

double SmoothWeight::operator()(double x) const {
  if (x <= a_ || x >= b_) return 0.0;
  if (x < 1.0) return smooth_step((x - a_) / (1.0 - a_));
  if (x <= 2.0) return 1.0;
  return smooth_step((b_ - x) / (b_ - 2.0));
}

double SmoothWeight::derivative(double x) const {
  if (x <= a_ || x >= b_) return 0.0;
  if (x < 1.0) return smooth_step_derivative((x - a_) / (1.0 - a_)) / (1.0 - a_);
  if (x <= 2.0) return 0.0;
  return -smooth_step_derivative((b_ - x) / (b_ - 2.0)) / (b_ - 2.0);
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Quadrature {
  Complex value;
  double error = 0.0;
};

Quadrature gk15(const std::function<Complex(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  const Complex fc = f(c);
  Complex kron = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const Complex pair = f(c - dx) + f(c + dx);
    kron += pair * kWgk[static_cast<std::size_t>(j)];
    if (j % 2 == 1) gauss += pair * kWg[static_cast<std::size_t>(j / 2)];
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

Quadrature adaptive(const std::function<Complex(double)>& f, double lo, double hi, double tol) {
  struct Piece {
    double lo, hi;
    Quadrature q;
  };
  constexpr int kMaxPieces = 20000;
  const double width = hi - lo;
  std::vector<Piece> todo{{lo, hi, gk15(f, lo, hi)}};
  CompensatedComplexSum total;
  double err = 0.0;
  int pieces = 0;
  while (!todo.empty()) {
    Piece p = todo.back();
    todo.pop_back();
    const double share = tol * (p.hi - p.lo) / width;
    if (p.q.error <= share || (p.hi - p.lo) < 1e-12 * width) {
      total += p.q.value;
      err += p.q.error;
      continue;
    }
    if (++pieces > kMaxPieces) {
      char msg[200];
      std::snprintf(msg, sizeof msg,
                    "Mellin quadrature did not converge on [%.6g, %.6g]: estimate %.3g > %.3g "
                    "after %d subdivisions",
                    p.lo, p.hi, p.q.error, share, kMaxPieces);
      fail(ErrorKind::Numeric, msg);
    }
    const double mid = 0.5 * (p.lo + p.hi);
    todo.push_back({mid, p.hi, gk15(f, mid, p.hi)});
    todo.push_back({p.lo, mid, gk15(f, p.lo, mid)});
  }
  return {total.value(), err};
}

// int_1^2 x^{s-1} (log x)^order dx for order 0 or 1.
Complex plateau(Complex s, int order) {
  const double l2 = std::log(2.0);
  if (std::abs(s) * l2 < 0.5) {
    // Taylor series in s: sum_k (log 2)^{k+1} s^k / (k+1)!, and its s-derivative.
    Complex acc(0.0, 0.0);
    Complex spow(1.0, 0.0);
    double coef = l2;  // (log 2)^{k+1} / (k+1)!
    for (int k = 0; k < 40; ++k) {
      if (order == 0) {
        acc += coef * spow;
        spow *= s;
      } else if (k >= 1) {
        acc += static_cast<double>(k) * coef * spow;
        spow *= s;
      }
      coef *= l2 / (k + 2);
    }
    return acc;
  }
  const Complex two_s = std::exp(s * l2);
  if (order == 0) return (two_s - 1.0) / s;
  return (two_s * l2 * s - (two_s - 1.0)) / (s * s);
}

MellinValue mellin_impl(const SmoothWeight& psi, Complex s, double tol, int order) {
  require(std::isfinite(s.real()) && std::isfinite(s.imag()), ErrorKind::Argument,
          "s must be finite");
  require(tol > 0.0, ErrorKind::Argument, "tolerance must be positive");
  const Complex sm1 = s - 1.0;
  auto kernel = [sm1, order](double x) {
    const double lx = std::log(x);
    const Complex v = std::exp(sm1 * lx);
    return order == 0 ? v : v * lx;
  };
  const double a = psi.a(), b = psi.b();
  auto left = [&](double x) { return smooth_step((x - a) / (1.0 - a)) * kernel(x); };
  auto right = [&](double x) { return smooth_step((b - x) / (b - 2.0)) * kernel(x); };
  const Quadrature ql = adaptive(left, a, 1.0, 0.5 * tol);
  const Quadrature qr = adaptive(right, 2.0, b, 0.5 * tol);
  const Complex mid = plateau(s, order);
  MellinValue out;
  out.s = s;
  out.value = ql.value + mid + qr.value;
  out.error = ql.error + qr.error + 16.0 * DBL_EPSILON * (std::abs(mid) + 1.0);
  return out;
}

}  // namespace

MellinValue mellin(const SmoothWeight& psi, Complex s, double tol) {
  return mellin_impl(psi, s, tol, 0);
}

MellinValue mellin_derivative(const SmoothWeight& psi, Complex s, double tol) {
  return mellin_impl(psi, s, tol, 1);
}

FDirect F_direct(const PrimeTable& primes, const IsobaricSum& sum, double Y,
                 const SmoothWeight& psi) {
  require(std::isfinite(Y) && Y > 0.0, ErrorKind::Argument, "Y must be finite and positive");
  FDirect out;
  const double top = std::nextafter(psi.b() * Y, 0.0);
  if (top < 1.0) return out;
  const auto limit = static_cast<std::uint64_t>(std::floor(top));
  const auto first = static_cast<std::uint64_t>(std::max(1.0, std::floor(psi.a() * Y) + 1.0));
  if (first > limit) return out;
  const auto a = rs_coefficients_by_norm(primes, sum, limit);
  CompensatedSum acc;
  for (std::uint64_t n = first; n <= limit; ++n) {
    if (a[n] == 0.0) continue;
    const double w = psi(static_cast<double>(n) / Y);
    if (w == 0.0) continue;
    acc += a[n] * w;
    ++out.terms;
  }
  out.value = acc.value();
  return out;
}

double plateau_minorant(const PrimeTable& primes, const IsobaricSum& sum, double Y) {
  require(std::isfinite(Y) && Y > 0.0, ErrorKind::Argument, "Y must be finite and positive");
  const double lo = std::max(2.0, std::ceil(Y));
  const double hi = std::floor(2.0 * Y);
  if (lo > hi) return 0.0;
  sum.require_coefficients(static_cast<std::uint64_t>(hi));
  CompensatedSum acc;
  for (const PrimeIdeal& P : primes.primes_in_norm_range(sum.field(), static_cast<std::uint64_t>(lo),
                                                         static_cast<std::uint64_t>(hi))) {
    if (sum.ramified_at(P.p)) continue;
    acc += rs_lambda_prime(sum, P);
  }
  return acc.value();
}

namespace {

bool power_in_range(std::uint64_t m, int e, double lo, double hi) {
  double v = 1.0;
  for (int i = 0; i < e; ++i) v *= static_cast<double>(m);
  return v >= lo && v <= hi;
}

// Values lambda(b^e) for every ideal b of norm p^j above p.
std::vector<double> local_power_terms(const IsobaricSum& sum, std::uint64_t p, int j, int e) {
  const auto ideals = PrimeTable::ideals_above(sum.field(), p);
  std::vector<std::pair<int, double>> partial{{0, 1.0}};  // (norm exponent used, product)
  for (const PrimeIdeal& P : ideals) {
    const int kmax = j / P.f;
    const auto loc = rs_local(sum, P, std::min(kMaxPrimePower, kmax * e)).lambda;
    std::vector<std::pair<int, double>> next;
    for (const auto& [used, val] : partial)
      for (int k = 0; used + k * P.f <= j; ++k) {
        require(k * e <= kMaxPrimePower, ErrorKind::Resource,
                "prime power exponent exceeds configured max");
        next.emplace_back(used + k * P.f, val * loc[static_cast<std::size_t>(k * e)]);
      }
    partial.swap(next);
  }
  std::vector<double> out;
  for (const auto& [used, val] : partial)
    if (used == j) out.push_back(val);
  return out;
}

}  // namespace

BrumleyMinorant brumley_minorant(const PrimeTable& primes, const IsobaricSum& sum, double Y) {
  require(std::isfinite(Y) && Y > 0.0, ErrorKind::Argument, "Y must be finite and positive");
  const int e = sum.total_rank();
  BrumleyMinorant out;
  const double lo = Y, hi = 2.0 * Y;
  auto m = static_cast<std::uint64_t>(std::max(1.0, std::floor(std::pow(lo, 1.0 / e)) - 1.0));
  const auto m_hi = static_cast<std::uint64_t>(std::ceil(std::pow(hi, 1.0 / e)) + 1.0);
  double min_term = HUGE_VAL;
  CompensatedSum acc;
  for (; m <= m_hi; ++m) {
    if (!power_in_range(m, e, lo, hi)) continue;
    // Ideals of norm m, as products of local choices over p^j || m.
    std::vector<double> terms{1.0};
    bool touches_s = false;
    std::uint64_t r = m;
    for (std::uint32_t p : primes.primes()) {
      if (static_cast<std::uint64_t>(p) * p > r) break;
      if (r % p != 0) continue;
      int j = 0;
      while (r % p == 0) {
        r /= p;
        ++j;
      }
      if (sum.ramified_at(p)) {
        touches_s = true;
        break;
      }
      const auto local = local_power_terms(sum, p, j, e);
      std::vector<double> next;
      for (double a : terms)
        for (double b : local) next.push_back(a * b);
      terms.swap(next);
    }
    if (!touches_s && r > 1) {
      if (r > primes.capacity())
        fail(ErrorKind::Resource, "sieve capacity exceeded in minorant factorization");
      if (sum.ramified_at(r)) {
        touches_s = true;
      } else {
        const auto local = local_power_terms(sum, r, 1, e);
        std::vector<double> next;
        for (double a : terms)
          for (double b : local) next.push_back(a * b);
        terms.swap(next);
      }
    }
    if (touches_s) continue;
    for (double v : terms) {
      acc += v;
      ++out.ideals;
      min_term = std::min(min_term, v);
    }
  }
  out.value = acc.value();
  out.min_term = out.ideals > 0 ? min_term : 0.0;
  return out;
}

PerronPrediction F_predicted(const ResidueData& res, double Y, double t, const SmoothWeight& psi) {
  require(std::isfinite(t) && t != 0.0, ErrorKind::Argument,
          "t = 0 merges the poles at 1 and 1 +- it; the four-term shape does not apply");
  require(std::isfinite(Y) && Y > 1.0, ErrorKind::Argument, "Y must be finite and > 1");
  const MellinValue m1 = mellin(psi, 1.0);
  const MellinValue d1 = mellin_derivative(psi, 1.0);
  const MellinValue mp = mellin(psi, Complex(1.0, t));
  const MellinValue mm = mellin(psi, Complex(1.0, -t));
  const double logY = std::log(Y);
  const Complex Yp = Y * std::polar(1.0, t * logY);
  const Complex Ym = std::conj(Yp);

  PerronPrediction out;
  out.leading = res.r_minus2 * m1.value.real() * Y * logY;
  out.linear = (res.r_minus1 * m1.value.real() + res.r_minus2 * d1.value.real()) * Y;
  out.plus = res.r_plus * mp.value * Yp;
  out.minus = res.r_minus * mm.value * Ym;
  const Complex total = out.leading + out.linear + out.plus + out.minus;
  out.value = total.real();
  out.imag_residual = std::abs(total.imag()) / std::max(std::abs(total.real()), DBL_MIN);
  const double rmax = std::max({std::abs(res.r_minus2), std::abs(res.r_minus1),
                                std::abs(res.r_plus), std::abs(res.r_minus)});
  out.error = res.error_bound * (std::abs(m1.value) * Y * logY +
                                 (std::abs(m1.value) + std::abs(d1.value)) * Y +
                                 (std::abs(mp.value) + std::abs(mm.value)) * Y) +
              rmax * (m1.error * Y * logY + (m1.error + d1.error) * Y + (mp.error + mm.error) * Y);
  out.consistent = out.imag_residual < 1e-8 && res.t == t;
  return out;
}

PerronTable perron_discrepancy(const PrimeTable& primes, const Rep& rep, double t,
                               std::span<const double> Ys, const SmoothWeight& psi,
                               const ResidueData& res) {
  require(!Ys.empty(), ErrorKind::Argument, "Y list is empty");
  const IsobaricSum sum = build_auxiliary_pi(rep, t);
  PerronTable table;
  for (double Y : Ys) {
    PerronRow row;
    row.Y = Y;
    row.F_direct = F_direct(primes, sum, Y, psi).value;
    row.predicted = F_predicted(res, Y, t, psi);
    row.abs_diff = std::abs(row.F_direct - row.predicted.value);
    row.diff_over_Y = row.abs_diff / Y;
    row.relative_gap = row.F_direct > 0.0 ? row.abs_diff / row.F_direct : HUGE_VAL;
    table.rows.push_back(row);
  }
  table.has_trend = table.rows.size() >= 2;
  table.decreasing = table.has_trend;
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    if (!(table.rows[i].diff_over_Y < table.rows[i - 1].diff_over_Y)) table.decreasing = false;
  return table;
}

PerronTable perron_discrepancy(const PrimeTable& primes, const Rep& rep, double t,
                               std::span<const double> Ys, const SmoothWeight& psi,
                               const EdgeEvaluator& evaluator) {
  return perron_discrepancy(primes, rep, t, Ys, psi, residues(rep, t, evaluator));
}

}  // namespace rslab
