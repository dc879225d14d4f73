#pragma once

#include "rslab/lseries.hpp"
#include "rslab/perron.hpp"

#include <span>
#include <vector>

namespace rslab {

/// -2/(sigma - beta) + 2/(sigma - 1) + A logQ, for beta < sigma and sigma > 1.
double upper_template(double sigma, double beta, double A, double logQ);
/// c (|t| + 3)^{2(1 - sigma)} / (sigma - 1), for sigma > 1.
double lower_template(double sigma, double c, double t);

enum class WidthStatus {
  Bounded,         // beta <= beta_max < 1
  Vacuous,         // beta_max >= 1: no constraint
  NoZeroPossible,  // lower exceeds upper for every beta < sigma
};

const char* to_string(WidthStatus status);

struct WidthResult {
  WidthStatus status = WidthStatus::Vacuous;
  double sigma = 0.0;            // 1 + c0 / log(|gamma| + 3)
  double lower = 0.0;
  double denominator = 0.0;      // 2/(sigma-1) + A logQ - lower
  double beta_max = 0.0;         // sigma - 2 / denominator (when denominator > 0)
  double one_minus_beta = 0.0;
  double scaled_width = 0.0;     // one_minus_beta * log(|gamma| + 3)
  double residual = 0.0;         // |upper(beta_max) - lower| / max(|lower|, 2/(sigma-1))
};

/// Largest beta compatible with lower(sigma) <= upper(sigma, beta) at sigma = 1 + c0/log(|gamma|+3).
WidthResult width_solver(double c, double A, double logQ, double gamma, double c0);

/// logQ = 2 log(|gamma| + 3), the conductor growth of the auxiliary sum at height gamma.
double default_logQ(double gamma);

struct WidthDefaults {
  double c = 1.0;
  double A = 1.0;
  double c0 = 0.1;
};

struct ScanRow {
  double t = 0.0;
  double offset = 0.0;      // sigma = 1 + offset / log(|t| + 3)
  double sigma = 0.0;
  double value = 0.0;       // |L(sigma + it, pi x dual(pi))| (central estimate)
  double error = 0.0;       // bar on value
  double lower = 0.0;       // rigorous lower bound, never the bare estimate
  double comparator = 0.0;  // 1 / log(|t| + 3)
  double ratio = 0.0;       // lower / comparator
  bool zeta = false;        // evaluated by Euler-Maclaurin
};

struct ScanTable {
  std::vector<ScanRow> rows;
  double min_ratio = 0.0;
  double argmin_t = 0.0;
  double argmin_offset = 0.0;
};

/// offset >= 1 in general; the trivial rep over Q also allows offset 0 (sigma = 1) via zeta.
ScanTable lower_bound_scan(const PrimeTable& primes, const Rep& rep, std::span<const double> ts,
                           std::span<const double> offsets, std::uint64_t cutoff = 100'000);

struct ChainRow {
  double Y = 0.0;
  double F = 0.0;            // F_direct of the auxiliary sum
  double upper_shape = 0.0;  // |L(1+it)| Y (log Y)^2
  double implied = 0.0;      // F / (Y (log Y)^2 K)
  bool informative = false;  // F > 0
};

struct LowerBoundChain {
  double t = 0.0;
  double L_abs = 0.0;        // |L(1 + it, pi x dual(pi))|
  double L_error = 0.0;
  double K = 0.0;            // max over Y of F / (|L| Y (log Y)^2)
  double comparator = 0.0;   // 1 / log^3(|t| + 3)
  double best_implied = 0.0;
  std::vector<ChainRow> rows;
};

LowerBoundChain lower_bound_chain(const PrimeTable& primes, const Rep& rep, double t,
                             std::span<const double> Ys, const SmoothWeight& psi,
                             const EdgeEvaluator& evaluator);

}  // namespace rslab
