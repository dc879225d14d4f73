#pragma once

#include "rslab/fields.hpp"
#include "rslab/reps.hpp"

#include <cstdint>

namespace rslab {

inline constexpr double kDefaultSieveThreshold = 10.0;

/// sum_{Y <= N(p) <= 2Y, p not in S} |lambda(p)|^2 log N(p).
struct TauberianSum {
  double sum = 0.0;
  double ratio_to_Y = 0.0;
  std::int64_t ideals = 0;
};

TauberianSum tauberian_sum(const PrimeTable& primes, const Rep& rep, double Y);

/// #{Y <= N(p) <= 2Y : p not in S, |lambda(p)| >= C} against (1 - C^2)/n^2 * Y/log Y.
struct DensityCount {
  std::int64_t count = 0;
  std::int64_t total = 0;  // unramified ideals in range
  double paper_floor = 0.0;
  double ratio = 0.0;      // count / paper_floor
  bool meets_floor = false;
};

DensityCount density_large_lambda(const PrimeTable& primes, const Rep& rep, double Y, double C);

/// #{Y <= N(p) <= 2Y : |1 + N(p)^{it}| < C} against 64 C [F:Q] log 2 / pi * Y / log(Y / 4t^2).
struct SmallAngleCount {
  std::int64_t count = 0;
  double paper_bound = 0.0;
  bool satisfied = false;
};

/// Requires 1/(2 sqrt Y) <= C, C <= |t| log 2 / 2 and Y > 4 t^2.
SmallAngleCount small_angle_count(const PrimeTable& primes, const NumberField& field, double Y,
                                  double t, double C);

/// sum_{Y <= N(p) <= 2Y, p not in S} |lambda(p)|^2 |1 + N(p)^{it}|^2 with Y/log Y for scale.
struct SieveLemmaValue {
  double lhs = 0.0;
  double y_over_log_y = 0.0;
  double ratio = 0.0;  // lhs * log Y / Y
};

/// Requires Y >= A (|t| + 3)^2.
SieveLemmaValue sieve_lemma_lhs(const PrimeTable& primes, const Rep& rep, double Y, double t,
                                double threshold = kDefaultSieveThreshold);

/// #{p : |lambda(p)| |1 + N(p)^{it}| >= C^2} and the inequality lhs >= C^4 * count.
struct CombinedCount {
  std::int64_t count = 0;
  double lhs = 0.0;
  double minorant = 0.0;  // C^4 * count
  bool satisfied = false;
};

CombinedCount combined_count(const PrimeTable& primes, const Rep& rep, double Y, double t,
                             double C);

/// Split of the range into |1 + N(p)^{it}| < C and >= C.
struct AnglePartition {
  std::int64_t below = 0;
  std::int64_t at_or_above = 0;
  std::int64_t excluded = 0;  // ideals above S
  std::int64_t total = 0;     // pi_F(2Y) - pi_F(Y^-)
};

AnglePartition angle_partition(const PrimeTable& primes, const Rep& rep, double Y, double t,
                               double C);

struct SieveReport {
  double Y = 0.0;
  double t = 0.0;
  double C = 0.0;
  TauberianSum tauberian;
  DensityCount density;
  bool small_angle_applicable = false;
  SmallAngleCount small_angle;
  bool lemma_applicable = false;
  SieveLemmaValue lemma;
  CombinedCount combined;
};

/// All estimates for one (Y, t, C) cell; estimates whose hypotheses fail are marked inapplicable.
SieveReport sieve_report(const PrimeTable& primes, const Rep& rep, double Y, double t, double C,
                         double threshold = kDefaultSieveThreshold);

}  // namespace rslab
