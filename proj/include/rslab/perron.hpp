#pragma once

#include "rslab/fields.hpp"
#include "rslab/lseries.hpp"
#include "rslab/reps.hpp"

#include <span>
#include <vector>

namespace rslab {

/// Bump equal to 1 on [1, 2], 0 outside (a, b), glued with the e^{-1/x} smooth step.
class SmoothWeight {
public:
  explicit SmoothWeight(double a = 0.5, double b = 2.5);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double operator()(double x) const;
  double derivative(double x) const;

private:
  double a_, b_;
};

/// 1 / (1 + exp(1/u - 1/(1-u))) on (0, 1), clamped to 0 and 1 outside.
double smooth_step(double u);
double smooth_step_derivative(double u);

struct MellinValue {
  Complex s;
  Complex value;
  double error = 0.0;
};

/// psi-hat(s) = int psi(x) x^{s-1} dx.
MellinValue mellin(const SmoothWeight& psi, Complex s, double tol = 1e-13);
/// psi-hat'(s) = int psi(x) x^{s-1} log x dx.
MellinValue mellin_derivative(const SmoothWeight& psi, Complex s, double tol = 1e-13);

struct FDirect {
  double value = 0.0;
  std::uint64_t terms = 0;  // norms with nonzero weight
};

/// sum over ideals a of lambda_{Pi x dual(Pi)}(a) psi(N(a)/Y).
FDirect F_direct(const PrimeTable& primes, const IsobaricSum& sum, double Y,
                 const SmoothWeight& psi);

/// sum_{Y <= N(p) <= 2Y, p not in S} lambda_{Pi x dual(Pi)}(p).
double plateau_minorant(const PrimeTable& primes, const IsobaricSum& sum, double Y);

/// sum over ideals a with Y <= N(a)^{2n} <= 2Y of lambda_{Pi x dual(Pi)}(a^{2n}), n = rank / 2.
struct BrumleyMinorant {
  double value = 0.0;
  std::uint64_t ideals = 0;
  double min_term = 0.0;  // over ideals prime to S; 0 when there are none
};

BrumleyMinorant brumley_minorant(const PrimeTable& primes, const IsobaricSum& sum, double Y);

struct PerronPrediction {
  double value = 0.0;
  double leading = 0.0;      // r_{-2} psi-hat(1) Y log Y
  double linear = 0.0;       // (r_{-1} psi-hat(1) + r_{-2} psi-hat'(1)) Y
  Complex plus;              // r^+ psi-hat(1+it) Y^{1+it}
  Complex minus;             // r^- psi-hat(1-it) Y^{1-it}
  double imag_residual = 0.0;  // |Im(sum)| / |sum|
  double error = 0.0;          // propagated from residues and quadrature
  bool consistent = false;     // real to 1e-8 and residues computed at this t
};

PerronPrediction F_predicted(const ResidueData& res, double Y, double t, const SmoothWeight& psi);

struct PerronRow {
  double Y = 0.0;
  double F_direct = 0.0;
  PerronPrediction predicted;
  double abs_diff = 0.0;
  double diff_over_Y = 0.0;
  double relative_gap = 0.0;  // abs_diff / F_direct
};

struct PerronTable {
  std::vector<PerronRow> rows;
  bool has_trend = false;       // at least two rows
  bool decreasing = false;      // diff_over_Y strictly decreasing
};

PerronTable perron_discrepancy(const PrimeTable& primes, const Rep& rep, double t,
                               std::span<const double> Ys, const SmoothWeight& psi,
                               const ResidueData& res);
PerronTable perron_discrepancy(const PrimeTable& primes, const Rep& rep, double t,
                               std::span<const double> Ys, const SmoothWeight& psi,
                               const EdgeEvaluator& evaluator);

}  // namespace rslab
