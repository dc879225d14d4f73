#include "rslab/sieve.hpp"

#include "rslab/error.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace rslab {

namespace {

struct NormRange {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool empty = true;
};

NormRange dyadic_range(double Y) {
  require(std::isfinite(Y) && Y > 0.0, ErrorKind::Argument, "Y must be finite and positive");
  NormRange r;
  const double lo = std::max(2.0, std::ceil(Y));
  const double hi = std::floor(2.0 * Y);
  if (lo > hi) return r;
  r.lo = static_cast<std::uint64_t>(lo);
  r.hi = static_cast<std::uint64_t>(hi);
  r.empty = false;
  return r;
}

std::vector<PrimeIdeal> ideals_in(const PrimeTable& primes, const Rep& rep, const NormRange& r) {
  if (r.empty) return {};
  rep.require_coefficients(r.hi);
  return primes.primes_in_norm_range(rep.field(), r.lo, r.hi);
}

double angle_factor(const PrimeIdeal& P, double t) {
  // |1 + N^{it}| = 2 |cos(t log N / 2)|
  return 2.0 * std::abs(std::cos(0.5 * t * std::log(static_cast<double>(P.norm))));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

TauberianSum tauberian_sum(const PrimeTable& primes, const Rep& rep, double Y) {
  TauberianSum out;
  for (const PrimeIdeal& P : ideals_in(primes, rep, dyadic_range(Y))) {
    if (rep.ramified_at(P.p)) continue;
    out.sum += std::norm(rep.lambda(P)) * std::log(static_cast<double>(P.norm));
    ++out.ideals;
  }
  out.ratio_to_Y = out.sum / Y;
  return out;
}

DensityCount density_large_lambda(const PrimeTable& primes, const Rep& rep, double Y, double C) {
  require(std::isfinite(C) && C > 0.0 && C < 1.0, ErrorKind::Argument,
          "density floor needs 0 < C < 1 (C = " + fmt(C) + ")");
  DensityCount out;
  for (const PrimeIdeal& P : ideals_in(primes, rep, dyadic_range(Y))) {
    if (rep.ramified_at(P.p)) continue;
    ++out.total;
    if (std::abs(rep.lambda(P)) >= C) ++out.count;
  }
  const double n = rep.rank();
  out.paper_floor = Y > 1.0 ? (1.0 - C * C) / (n * n) * Y / std::log(Y) : 0.0;
  out.ratio = out.paper_floor > 0.0 ? static_cast<double>(out.count) / out.paper_floor : 0.0;
  out.meets_floor = static_cast<double>(out.count) >= out.paper_floor;
  return out;
}

SmallAngleCount small_angle_count(const PrimeTable& primes, const NumberField& field, double Y,
                                  double t, double C) {
  require(std::isfinite(t) && std::isfinite(C), ErrorKind::Argument, "t and C must be finite");
  require(std::isfinite(Y) && Y > 0.0, ErrorKind::Argument, "Y must be finite and positive");
  const double at = std::abs(t);
  require(C >= 1.0 / (2.0 * std::sqrt(Y)), ErrorKind::Argument,
          "hypothesis C >= 1/(2 sqrt Y) fails (C = " + fmt(C) + ", 1/(2 sqrt Y) = " +
              fmt(1.0 / (2.0 * std::sqrt(Y))) + ")");
  require(C <= at * std::numbers::ln2 / 2.0, ErrorKind::Argument,
          "hypothesis C <= |t| log 2 / 2 fails (C = " + fmt(C) + ", |t| log 2 / 2 = " +
              fmt(at * std::numbers::ln2 / 2.0) + ")");
  require(Y > 4.0 * t * t, ErrorKind::Argument,
          "hypothesis Y > 4 t^2 fails (Y = " + fmt(Y) + ", 4 t^2 = " + fmt(4.0 * t * t) + ")");

  SmallAngleCount out;
  const NormRange r = dyadic_range(Y);
  if (!r.empty)
    for (const PrimeIdeal& P : primes.primes_in_norm_range(field, r.lo, r.hi))
      if (angle_factor(P, t) < C) ++out.count;
  out.paper_bound = 64.0 * C * field.degree() * std::numbers::ln2 / std::numbers::pi * Y /
                    std::log(Y / (4.0 * t * t));
  out.satisfied = static_cast<double>(out.count) <= out.paper_bound;
  return out;
}

SieveLemmaValue sieve_lemma_lhs(const PrimeTable& primes, const Rep& rep, double Y, double t,
                                double threshold) {
  require(std::isfinite(t), ErrorKind::Argument, "t must be finite");
  require(std::isfinite(threshold) && threshold > 0.0, ErrorKind::Argument,
          "sieve threshold must be positive");
  const double floor_Y = threshold * (std::abs(t) + 3.0) * (std::abs(t) + 3.0);
  require(Y >= floor_Y, ErrorKind::Argument,
          "Y = " + fmt(Y) + " below the sieve floor A (|t| + 3)^2 = " + fmt(floor_Y));
  SieveLemmaValue out;
  for (const PrimeIdeal& P : ideals_in(primes, rep, dyadic_range(Y))) {
    if (rep.ramified_at(P.p)) continue;
    const double a = angle_factor(P, t);
    out.lhs += std::norm(rep.lambda(P)) * a * a;
  }
  out.y_over_log_y = Y / std::log(Y);
  out.ratio = out.lhs / out.y_over_log_y;
  return out;
}

CombinedCount combined_count(const PrimeTable& primes, const Rep& rep, double Y, double t,
                             double C) {
  require(std::isfinite(C) && C > 0.0, ErrorKind::Argument, "C must be positive");
  require(std::isfinite(t), ErrorKind::Argument, "t must be finite");
  CombinedCount out;
  for (const PrimeIdeal& P : ideals_in(primes, rep, dyadic_range(Y))) {
    if (rep.ramified_at(P.p)) continue;
    const double a = angle_factor(P, t);
    const double l = std::abs(rep.lambda(P));
    out.lhs += l * l * a * a;
    if (l * a >= C * C) ++out.count;
  }
  out.minorant = C * C * C * C * static_cast<double>(out.count);
  out.satisfied = out.lhs >= out.minorant;
  return out;
}

AnglePartition angle_partition(const PrimeTable& primes, const Rep& rep, double Y, double t,
                               double C) {
  require(std::isfinite(C) && std::isfinite(t), ErrorKind::Argument, "t and C must be finite");
  AnglePartition out;
  for (const PrimeIdeal& P : ideals_in(primes, rep, dyadic_range(Y))) {
    ++out.total;
    if (rep.ramified_at(P.p)) {
      ++out.excluded;
      continue;
    }
    if (angle_factor(P, t) < C) ++out.below;
    else ++out.at_or_above;
  }
  return out;
}

SieveReport sieve_report(const PrimeTable& primes, const Rep& rep, double Y, double t, double C,
                         double threshold) {
  SieveReport r;
  r.Y = Y;
  r.t = t;
  r.C = C;
  r.tauberian = tauberian_sum(primes, rep, Y);
  if (C > 0.0 && C < 1.0) r.density = density_large_lambda(primes, rep, Y, C);
  try {
    r.small_angle = small_angle_count(primes, rep.field(), Y, t, C);
    r.small_angle_applicable = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Argument) throw;
  }
  try {
    r.lemma = sieve_lemma_lhs(primes, rep, Y, t, threshold);
    r.lemma_applicable = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Argument) throw;
  }
  r.combined = combined_count(primes, rep, Y, t, C);
  return r;
}

}  // namespace rslab
