#include "rslab/conductor.hpp"

#include "rslab/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace rslab {

namespace {

void check_nu(Complex nu) {
  require(std::isfinite(nu.real()) && std::isfinite(nu.imag()), ErrorKind::Argument,
          "nu must be finite");
}

std::string fmt_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace

WeilParameter WeilParameter::complex_char(int k, Complex nu) {
  check_nu(nu);
  WeilParameter p;
  p.kind = Kind::ComplexChar;
  p.k = k;
  p.nu = nu;
  return p;
}

WeilParameter WeilParameter::real_one_dim(int epsilon, Complex nu) {
  check_nu(nu);
  require(epsilon == 1 || epsilon == -1, ErrorKind::Argument, "epsilon must be +1 or -1");
  WeilParameter p;
  p.kind = Kind::RealOneDim;
  p.epsilon = epsilon;
  p.k = 1 - epsilon;
  p.nu = nu;
  return p;
}

WeilParameter WeilParameter::real_two_dim(int k, Complex nu) {
  check_nu(nu);
  require(k >= 1, ErrorKind::Argument, "two-dimensional parameter needs k >= 1");
  WeilParameter p;
  p.kind = Kind::RealTwoDim;
  p.k = k;
  p.nu = nu;
  return p;
}

Complex WeilParameter::mu() const {
  switch (kind) {
    case Kind::ComplexChar: return nu + std::abs(k) / 2.0;
    case Kind::RealOneDim: return nu + (1 - epsilon) / 2.0;
    case Kind::RealTwoDim: return nu + k / 2.0;
  }
  return nu;
}

WeilParameter WeilParameter::dual() const {
  WeilParameter d = *this;
  d.nu = std::conj(nu);
  if (kind == Kind::ComplexChar) d.k = -k;
  return d;
}

std::string WeilParameter::label() const {
  switch (kind) {
    case Kind::ComplexChar: return "C(k=" + std::to_string(k) + ",nu=" + fmt_complex(nu) + ")";
    case Kind::RealOneDim:
      return std::string("R1(eps=") + (epsilon > 0 ? "+1" : "-1") + ",nu=" + fmt_complex(nu) + ")";
    case Kind::RealTwoDim: return "R2(k=" + std::to_string(k) + ",nu=" + fmt_complex(nu) + ")";
  }
  return "?";
}

void check_jacquet_shalika(const WeilParameter& phi) {
  require(std::abs(phi.nu.real()) <= 0.5, ErrorKind::Argument,
          "parameter " + phi.label() + " violates |Re nu| <= 1/2");
}

void canonicalize(std::vector<GammaFactor>& gammas) {
  std::sort(gammas.begin(), gammas.end(), [](const GammaFactor& a, const GammaFactor& b) {
    if (a.kind != b.kind) return a.kind == GammaFactor::Kind::R;
    if (a.shift.real() != b.shift.real()) return a.shift.real() < b.shift.real();
    return a.shift.imag() < b.shift.imag();
  });
}

std::vector<GammaFactor> gamma_factors(const WeilParameter& phi) {
  const auto kind = phi.kind == WeilParameter::Kind::RealOneDim ? GammaFactor::Kind::R
                                                                 : GammaFactor::Kind::C;
  return {GammaFactor{kind, phi.mu()}};
}

double conductor_v(double t, const std::vector<GammaFactor>& gammas) {
  require(std::isfinite(t), ErrorKind::Argument, "t must be finite");
  double q = 1.0;
  for (const GammaFactor& g : gammas) {
    const double f = 1.0 + std::abs(Complex(0.0, t) + g.shift);
    q *= g.kind == GammaFactor::Kind::R ? f : f * f;
  }
  return q;
}

double conductor_v(double t, const WeilParameter& phi) {
  return conductor_v(t, gamma_factors(phi));
}

TensorProduct tensor(const WeilParameter& phi, const WeilParameter& phi_prime) {
  require(phi.place() == phi_prime.place(), ErrorKind::Argument,
          "tensor needs parameters of the same local field (" + phi.label() + ", " +
              phi_prime.label() + ")");
  using K = WeilParameter::Kind;
  TensorProduct out;
  out.dimension = phi.dimension() * phi_prime.dimension();
  const Complex nu = phi.nu + phi_prime.nu;

  if (phi.kind == K::ComplexChar) {
    out.pieces = {WeilParameter::complex_char(phi.k + phi_prime.k, nu)};
  } else if (phi.kind == K::RealOneDim && phi_prime.kind == K::RealOneDim) {
    out.pieces = {WeilParameter::real_one_dim(phi.epsilon * phi_prime.epsilon, nu)};
  } else if (phi.kind == K::RealOneDim || phi_prime.kind == K::RealOneDim) {
    const WeilParameter& two = phi.kind == K::RealTwoDim ? phi : phi_prime;
    out.pieces = {WeilParameter::real_two_dim(two.k, nu)};
  } else {
    // Ind chi_{k,nu} (x) Ind chi_{k',nu'} = Ind chi_{k+k',nu+nu'} + Ind chi_{k-k',nu+nu'}
    out.pieces.push_back(WeilParameter::real_two_dim(phi.k + phi_prime.k, nu));
    const int diff = std::abs(phi.k - phi_prime.k);
    if (diff > 0) {
      out.pieces.push_back(WeilParameter::real_two_dim(diff, nu));
    } else {
      out.pieces.push_back(WeilParameter::real_one_dim(1, nu));
      out.pieces.push_back(WeilParameter::real_one_dim(-1, nu));
    }
  }

  for (const WeilParameter& p : out.pieces) {
    const auto g = gamma_factors(p);
    out.gammas.insert(out.gammas.end(), g.begin(), g.end());
  }
  // Gamma_R(s + mu) Gamma_R(s + mu + 1) is Gamma_C(s + mu) up to a constant.
  const bool degenerate = out.pieces.size() == 3;
  if (degenerate) {
    out.gammas.resize(1);
    out.gammas.push_back(GammaFactor{GammaFactor::Kind::C, nu});
  }
  canonicalize(out.gammas);
  return out;
}

ReductionCheck check_reduction_inequality(double t, const WeilParameter& phi,
                                          const WeilParameter& phi_prime, double C) {
  require(std::isfinite(C) && C > 0.0, ErrorKind::Argument, "C must be positive");
  check_jacquet_shalika(phi);
  check_jacquet_shalika(phi_prime);
  const TensorProduct tp = tensor(phi, phi_prime);
  const int d = phi.dimension(), dp = phi_prime.dimension();
  const int fv = phi.place() == Place::Complex ? 2 : 1;
  ReductionCheck out;
  out.lhs = conductor_v(t, tp.gammas);
  const double base = std::pow(conductor_v(0.0, phi), dp) * std::pow(conductor_v(0.0, phi_prime), d) *
                      std::pow(1.0 + std::abs(t), d * dp * fv);
  out.rhs = C * base;
  out.ratio = out.lhs / base;
  out.satisfied = out.lhs <= out.rhs;
  return out;
}

Sqrt3Claim sqrt3_claim(int k, Complex nu) {
  const double ak = std::abs(k) / 2.0;
  const double anu = std::abs(nu);
  const double mu = std::abs(nu + ak);
  Sqrt3Claim c;
  c.first_lhs = (ak + anu) * (ak + anu);
  c.first_rhs = 3.0 * (ak * ak + anu * anu);
  c.second_lhs = ak * ak + anu * anu;
  c.second_rhs = 3.0 * mu * mu;
  c.first_holds = c.first_lhs <= c.first_rhs;
  c.second_holds = c.second_lhs <= c.second_rhs;
  return c;
}

BoringCheck boring_inequality(double t, Complex mu, Complex mu_prime) {
  BoringCheck b;
  const double at = std::abs(t), am = std::abs(mu), amp = std::abs(mu_prime);
  b.lhs = 1.0 + at + am + amp;
  b.rhs = (1.0 + am) * (1.0 + amp) * (1.0 + at);
  b.holds = b.lhs <= b.rhs;
  return b;
}

int ConductorDescriptor::rank() const {
  require(!places.empty(), ErrorKind::Data, "descriptor '" + label + "' has no archimedean data");
  int n = -1;
  for (const auto& list : places) {
    require(!list.empty(), ErrorKind::Data,
            "descriptor '" + label + "' has an empty parameter list");
    int d = 0;
    for (const auto& p : list) d += p.dimension();
    require(n < 0 || n == d, ErrorKind::Data,
            "descriptor '" + label + "' has inconsistent dimensions across places");
    n = d;
  }
  return n;
}

double ConductorDescriptor::arch_conductor(double t) const {
  rank();
  double q = 1.0;
  for (const auto& list : places)
    for (const auto& p : list) q *= conductor_v(t, p);
  return q;
}

ConductorDescriptor ConductorDescriptor::dual() const {
  ConductorDescriptor d = *this;
  d.label = "dual(" + label + ")";
  for (auto& list : d.places)
    for (auto& p : list) p = p.dual();
  return d;
}

std::uint64_t dirichlet_conductor(const DirichletSource& chi) {
  const std::uint64_t q = chi.modulus;
  for (std::uint64_t d = 1; d <= q; ++d) {
    if (q % d != 0) continue;
    bool induced = true;
    for (std::uint64_t a = 1; a < q && induced; ++a)
      if (std::gcd(a, q) == 1 && a % d == 1 % d && std::abs(chi.values[a] - 1.0) > 1e-9)
        induced = false;
    if (induced) return d;
  }
  return q;
}

ConductorDescriptor descriptor_of(const Rep& rep) {
  ConductorDescriptor d;
  d.label = rep.label();
  const NumberField& F = rep.field();
  d.field_degree = F.degree();
  if (rep.is_trivial()) {
    if (F.is_rational()) {
      d.places = {{WeilParameter::real_one_dim(1, 0.0)}};
    } else if (F.is_imaginary()) {
      d.places = {{WeilParameter::complex_char(0, 0.0)}};
    } else {
      d.places = {{WeilParameter::real_one_dim(1, 0.0)}, {WeilParameter::real_one_dim(1, 0.0)}};
    }
    return d;
  }
  if (const auto* chi = std::get_if<DirichletSource>(&rep.source())) {
    const Complex minus_one = chi->values[chi->modulus - 1];
    const int eps = minus_one.real() > 0.0 ? 1 : -1;
    d.places = {{WeilParameter::real_one_dim(eps, 0.0)}};
    d.finite_conductor = dirichlet_conductor(*chi);
    return d;
  }
  const auto& nf = std::get<NewformSource>(rep.source());
  d.places = {{WeilParameter::real_two_dim(nf.weight - 1, 0.0)}};
  d.finite_conductor = nf.level;
  return d;
}

std::vector<GammaFactor> rs_gammas(const std::vector<WeilParameter>& a,
                                   const std::vector<WeilParameter>& b) {
  std::vector<GammaFactor> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const auto g = tensor(x, y.dual()).gammas;
      out.insert(out.end(), g.begin(), g.end());
    }
  canonicalize(out);
  return out;
}

namespace {

// log q_inf(it; pi x dual(pi')), summed over places.
double log_arch_rs(const ConductorDescriptor& a, const ConductorDescriptor& b, double t) {
  require(a.places.size() == b.places.size(), ErrorKind::Data,
          "descriptors '" + a.label + "' and '" + b.label + "' live over different fields");
  double acc = 0.0;
  for (std::size_t v = 0; v < a.places.size(); ++v)
    acc += std::log(conductor_v(t, rs_gammas(a.places[v], b.places[v])));
  return acc;
}

// Bushnell-Henniart: q_f(pi x pi') <= q_f(pi)^{n'} q_f(pi')^n.
double log_bh_finite(const ConductorDescriptor& a, const ConductorDescriptor& b) {
  return b.rank() * std::log(static_cast<double>(a.finite_conductor)) +
         a.rank() * std::log(static_cast<double>(b.finite_conductor));
}

}  // namespace

double log_rs_conductor(const ConductorDescriptor& pi, const ConductorDescriptor& pi_prime,
                        double t) {
  return log_bh_finite(pi, pi_prime) + log_arch_rs(pi, pi_prime, t);
}

GlobalBounds global_conductor_bounds(const ConductorDescriptor& pi,
                                     const ConductorDescriptor& pi_prime, double t) {
  require(std::isfinite(t), ErrorKind::Argument, "t must be finite");
  require(pi.finite_conductor >= 1 && pi_prime.finite_conductor >= 1, ErrorKind::Data,
          "finite conductors must be positive integers");
  GlobalBounds g;
  g.n = pi.rank();
  g.n_prime = pi_prime.rank();
  g.degree = pi.field_degree;
  const int n = g.n, np = g.n_prime;

  // Components of the three-term Pi with their shifts.
  const ConductorDescriptor pid = pi.dual();
  const std::vector<std::pair<const ConductorDescriptor*, double>> comps = {
      {&pi, t}, {&pid, -t}, {&pi_prime, 0.0}};
  double log_finite = 0.0, log_arch = 0.0;
  for (const auto& [a, ta] : comps)
    for (const auto& [b, tb] : comps) {
      log_finite += log_bh_finite(*a, *b);
      log_arch += log_arch_rs(*a, *b, ta - tb);
    }
  const double qf = static_cast<double>(pi.finite_conductor);
  const double qfp = static_cast<double>(pi_prime.finite_conductor);
  const double log_finite_rhs = (4.0 * n + 2.0 * np) * (2.0 * std::log(qf) + std::log(qfp));
  g.finite_lhs = std::exp(log_finite);
  g.finite_rhs = std::exp(log_finite_rhs);
  g.finite_holds = log_finite <= log_finite_rhs * (1.0 + 1e-12) + 1e-12;

  const double log_base = (4.0 * n + 2.0 * np) *
                              (2.0 * std::log(pi.arch_conductor(0.0)) +
                               std::log(pi_prime.arch_conductor(0.0))) +
                          (4.0 * n * np + 2.0 * n * n) * g.degree * std::log1p(std::abs(t));
  g.arch_lhs = std::exp(log_arch);
  g.arch_base = std::exp(log_base);
  g.implied_C1 = std::exp((log_arch - log_base) / (n + np));

  // Auxiliary Pi: q(pi x dual pi)^2 q(it, pi x dual pi) q(-it, pi x dual pi).
  const double log_rs0 = log_rs_conductor(pi, pi, 0.0);
  g.log_aux_lhs = 2.0 * log_rs0 + log_rs_conductor(pi, pi, t) + log_rs_conductor(pi, pi, -t);
  g.log_aux_rhs = 8.0 * n * std::log(pi.analytic_conductor(0.0)) +
                  2.0 * n * n * g.degree * std::log(std::abs(t) + 3.0);
  g.aux_lhs = std::exp(g.log_aux_lhs);
  g.aux_rhs = std::exp(g.log_aux_rhs);
  g.aux_holds = g.log_aux_lhs <= g.log_aux_rhs;
  return g;
}

double unit_uniform(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ParameterSampler::ParameterSampler(Place place, std::uint64_t seed) : place_(place), rng_(seed) {}

double ParameterSampler::uniform(double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(rng_());
}

int ParameterSampler::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(static_cast<std::uint64_t>(unit_uniform(rng_()) * span));
}

WeilParameter ParameterSampler::parameter() {
  const double re = uniform(-0.5, 0.5);
  const double im = uniform(-10.0, 10.0);
  const Complex nu(re, im);
  if (place_ == Place::Complex) return WeilParameter::complex_char(integer(-8, 8), nu);
  if (integer(0, 1) == 0) return WeilParameter::real_one_dim(integer(0, 1) == 0 ? 1 : -1, nu);
  return WeilParameter::real_two_dim(integer(1, 8), nu);
}

SweepSample ParameterSampler::next(double C) {
  SweepSample s;
  s.phi = parameter();
  s.phi_prime = parameter();
  s.t = uniform(0.0, 20.0);
  s.check = check_reduction_inequality(s.t, s.phi, s.phi_prime, C);
  const TensorProduct a = tensor(s.phi, s.phi_prime);
  const TensorProduct b = tensor(s.phi_prime, s.phi);
  int dim = 0;
  for (const auto& p : a.pieces) dim += p.dimension();
  int gdim = 0;
  for (const auto& g : a.gammas) gdim += place_ == Place::Complex ? 1 : g.degree();
  s.tensor_dimension_ok = dim == a.dimension && gdim == a.dimension &&
                          a.dimension == s.phi.dimension() * s.phi_prime.dimension();
  const double qa = conductor_v(s.t, a.gammas), qb = conductor_v(s.t, b.gammas);
  s.symmetric = std::abs(qa - qb) <= 1e-12 * std::max(qa, qb);
  s.sqrt3_applicable = place_ == Place::Complex;
  if (s.sqrt3_applicable) {
    s.sqrt3_phi = sqrt3_claim(s.phi.k, s.phi.nu);
    s.sqrt3_phi_prime = sqrt3_claim(s.phi_prime.k, s.phi_prime.nu);
  }
  return s;
}

SweepSummary reduction_sweep(Place place, std::uint64_t count, std::uint64_t seed, double C,
                             const std::function<void(const SweepSample&)>& each) {
  ParameterSampler sampler(place, seed);
  SweepSummary sum;
  bool have_counterexample = false;
  for (std::uint64_t i = 0; i < count; ++i) {
    const SweepSample s = sampler.next(C);
    ++sum.samples;
    if (s.check.ratio > sum.max_ratio) {
      sum.max_ratio = s.check.ratio;
      sum.argmax = s;
    }
    if (!s.check.satisfied) ++sum.reduction_failures;
    if (!s.tensor_dimension_ok) ++sum.dimension_failures;
    if (!s.symmetric) ++sum.symmetry_failures;
    if (s.sqrt3_applicable) {
      const std::pair<int, const Sqrt3Claim*> claims[] = {{s.phi.k, &s.sqrt3_phi},
                                                           {s.phi_prime.k, &s.sqrt3_phi_prime}};
      for (const auto& [k, c] : claims) {
        if (k == 0) continue;
        ++sum.sqrt3_checked;
        if (!c->first_holds) ++sum.sqrt3_first_failures;
        if (!c->second_holds) {
          ++sum.sqrt3_second_failures;
          if (!have_counterexample) {
            sum.sqrt3_counterexample = s;
            have_counterexample = true;
          }
        }
      }
    }
    if (each) each(s);
  }
  return sum;
}

}  // namespace rslab
