#include "rslab/zerofree.hpp"

#include "rslab/error.hpp"

#include <cmath>
#include <limits>

namespace rslab {

namespace {

void require_finite(double x, const char* name) {
  require(std::isfinite(x), ErrorKind::Argument, std::string(name) + " must be finite");
}

void require_positive(double x, const char* name) {
  require(std::isfinite(x) && x > 0.0, ErrorKind::Argument, std::string(name) + " must be positive");
}

}  // namespace

double upper_template(double sigma, double beta, double A, double logQ) {
  require(sigma > 1.0, ErrorKind::Domain, "upper template needs sigma > 1");
  require(beta < sigma, ErrorKind::Domain, "upper template needs beta < sigma");
  return -2.0 / (sigma - beta) + 2.0 / (sigma - 1.0) + A * logQ;
}

double lower_template(double sigma, double c, double t) {
  require(sigma > 1.0, ErrorKind::Domain, "lower template needs sigma > 1");
  return c * std::pow(std::abs(t) + 3.0, 2.0 * (1.0 - sigma)) / (sigma - 1.0);
}

const char* to_string(WidthStatus status) {
  switch (status) {
    case WidthStatus::Bounded: return "bounded";
    case WidthStatus::Vacuous: return "no constraint";
    case WidthStatus::NoZeroPossible: return "no zero possible";
  }
  return "?";
}

double default_logQ(double gamma) { return 2.0 * std::log(std::abs(gamma) + 3.0); }

WidthResult width_solver(double c, double A, double logQ, double gamma, double c0) {
  require(std::isfinite(c) && c >= 0.0, ErrorKind::Argument, "c must be nonnegative");
  require_positive(A, "A");
  require_positive(logQ, "logQ");
  require_positive(c0, "c0");
  require_finite(gamma, "gamma");
  WidthResult r;
  const double L = std::log(std::abs(gamma) + 3.0);
  r.sigma = 1.0 + c0 / L;
  r.lower = lower_template(r.sigma, c, gamma);
  const double pole = 2.0 / (r.sigma - 1.0);
  r.denominator = pole + A * logQ - r.lower;
  if (r.denominator <= 0.0) {
    r.status = WidthStatus::NoZeroPossible;
    r.beta_max = -std::numeric_limits<double>::infinity();
    r.one_minus_beta = std::numeric_limits<double>::infinity();
    r.scaled_width = r.one_minus_beta;
    return r;
  }
  r.beta_max = r.sigma - 2.0 / r.denominator;
  r.one_minus_beta = 1.0 - r.beta_max;
  r.scaled_width = r.one_minus_beta * L;
  r.status = r.beta_max < 1.0 ? WidthStatus::Bounded : WidthStatus::Vacuous;
  const double upper = upper_template(r.sigma, r.beta_max, A, logQ);
  r.residual = std::abs(upper - r.lower) / std::max(std::abs(r.lower), pole);
  return r;
}

ScanTable lower_bound_scan(const PrimeTable& primes, const Rep& rep, std::span<const double> ts,
                           std::span<const double> offsets, std::uint64_t cutoff) {
  require(!ts.empty(), ErrorKind::Argument, "t grid is empty");
  require(!offsets.empty(), ErrorKind::Argument, "sigma offset grid is empty");
  const bool zeta_route = rep.is_trivial() && rep.field().is_rational();
  ScanTable out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    require_finite(t, "t");
    const double L = std::log(std::abs(t) + 3.0);
    for (double offset : offsets) {
      require(std::isfinite(offset) && (offset >= 1.0 || (zeta_route && offset >= 0.0)),
              ErrorKind::Argument,
              zeta_route ? "sigma offset must be >= 0"
                         : "sigma offset must be >= 1 (sigma >= 1 + 1/log(|t|+3)) off the zeta line");
      ScanRow row;
      row.t = t;
      row.offset = offset;
      row.sigma = 1.0 + offset / L;
      row.comparator = 1.0 / L;
      if (zeta_route) {
        require(offset > 0.0 || t != 0.0, ErrorKind::Pole, "zeta has a pole at s = 1");
        const ZetaValue z = zeta_em_auto(Complex(row.sigma, t), 1e-10);
        row.value = std::abs(z.value);
        row.error = z.error;
        row.lower = std::max(0.0, row.value - row.error);
        row.zeta = true;
      } else {
        const ComplexSeriesValue lg = truncated_log_L(primes, rep, Complex(row.sigma, t), cutoff);
        row.value = std::exp(lg.value.real());
        row.lower = std::exp(lg.value.real() - lg.tail_bound);
        row.error = row.value - row.lower;
      }
      row.ratio = row.lower / row.comparator;
      if (row.ratio < out.min_ratio) {
        out.min_ratio = row.ratio;
        out.argmin_t = t;
        out.argmin_offset = offset;
      }
      out.rows.push_back(row);
    }
  }
  return out;
}

LowerBoundChain lower_bound_chain(const PrimeTable& primes, const Rep& rep, double t,
                             std::span<const double> Ys, const SmoothWeight& psi,
                             const EdgeEvaluator& evaluator) {
  require(!Ys.empty(), ErrorKind::Argument, "Y grid is empty");
  require_finite(t, "t");
  require(evaluator.supports(rep), ErrorKind::Argument,
          "edge evaluator does not cover " + rep.label());
  LowerBoundChain out;
  out.t = t;
  const EdgeValues ev = evaluator.at(t);
  out.L_abs = std::abs(ev.L);
  out.L_error = ev.error;
  require(out.L_abs > 0.0, ErrorKind::Numeric, "|L(1+it)| evaluated to zero");
  const double Lt = std::log(std::abs(t) + 3.0);
  out.comparator = 1.0 / (Lt * Lt * Lt);
  const IsobaricSum sum = build_auxiliary_pi(rep, t);
  for (double Y : Ys) {
    require(std::isfinite(Y) && Y > 1.0, ErrorKind::Argument, "Y must exceed 1");
    ChainRow row;
    row.Y = Y;
    row.F = F_direct(primes, sum, Y, psi).value;
    const double shape = Y * std::log(Y) * std::log(Y);
    row.upper_shape = out.L_abs * shape;
    row.informative = row.F > 0.0;
    out.K = std::max(out.K, row.F / row.upper_shape);
    out.rows.push_back(row);
  }
  for (ChainRow& row : out.rows) {
    row.implied = out.K > 0.0 ? row.F / (row.Y * std::log(row.Y) * std::log(row.Y) * out.K) : 0.0;
    out.best_implied = std::max(out.best_implied, row.implied);
  }
  return out;
}

}  // namespace rslab
