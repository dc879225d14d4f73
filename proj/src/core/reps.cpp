#include "rslab/reps.hpp"

#include "rslab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rslab {

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (std::uint64_t p : prime_divisors(n)) phi = phi / p * (p - 1);
  return phi;
}

bool has_cyclic_units(std::uint64_t q) {
  if (q == 2 || q == 4) return true;
  if (q % 4 == 0) return false;
  const std::uint64_t odd = q % 2 == 0 ? q / 2 : q;
  return prime_divisors(odd).size() == 1;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t primitive_root(std::uint64_t q, std::uint64_t phi) {
  if (q == 2) return 1;
  const auto factors = prime_divisors(phi);
  for (std::uint64_t g = 2; g < q; ++g) {
    if (gcd(g, q) != 1) continue;
    bool ok = true;
    for (std::uint64_t r : factors)
      if (powmod(g, phi / r, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  fail(ErrorKind::Argument, "no primitive root modulo " + std::to_string(q));
}

}  // namespace

Rep Rep::trivial(const NumberField& field) {
  Rep r;
  r.rank_ = 1;
  r.field_ = field;
  r.source_ = TrivialSource{};
  r.self_dual_ = true;
  r.label_ = "trivial";
  return r;
}

Rep Rep::dirichlet(std::uint64_t q, std::uint64_t index) {
  require(q >= 2, ErrorKind::Argument, "Dirichlet modulus must be >= 2");
  require(q <= 10'000'000, ErrorKind::Resource, "Dirichlet modulus above 1e7");
  require(has_cyclic_units(q), ErrorKind::Argument,
          "modulus " + std::to_string(q) + " has non-cyclic unit group; unsupported");
  DirichletSource src;
  src.modulus = q;
  src.group_order = euler_phi(q);
  require(index < src.group_order, ErrorKind::Argument,
          "character index must be < phi(q) = " + std::to_string(src.group_order));
  src.index = index;
  src.values.assign(q, Complex(0.0, 0.0));
  const std::uint64_t g = primitive_root(q, src.group_order);
  std::uint64_t x = 1 % q;
  for (std::uint64_t a = 0; a < src.group_order; ++a) {
    // Reduce the exponent exactly before converting to an angle.
    const std::uint64_t num = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(index) * a % src.group_order);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) /
                         static_cast<double>(src.group_order);
    if (num == 0)
      src.values[x] = Complex(1.0, 0.0);
    else if (2 * num == src.group_order)
      src.values[x] = Complex(-1.0, 0.0);
    else
      src.values[x] = std::polar(1.0, angle);
    x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * g % q);
  }

  Rep r;
  r.rank_ = 1;
  r.field_ = NumberField::rationals();
  r.ramified_ = prime_divisors(q);
  r.self_dual_ = (2 * index) % src.group_order == 0;
  r.label_ = "chi[" + std::to_string(q) + "," + std::to_string(index) + "]";
  r.source_ = std::move(src);
  return r;
}

Rep Rep::newform(ApTable table) {
  require(table.weight >= 2 && table.weight % 2 == 0, ErrorKind::Data,
          "newform weight must be even and >= 2");
  require(!table.entries.empty(), ErrorKind::Data, "newform table has no entries");
  auto normalized = std::make_shared<std::vector<double>>();
  normalized->reserve(table.entries.size());
  const long double half = (table.weight - 1) / 2.0L;
  for (const auto& [p, a] : table.entries) {
    const long double lam = static_cast<long double>(a) / std::pow(static_cast<long double>(p), half);
    if (table.level % p != 0 && std::fabs(lam) > 2.0L * (1.0L + 1e-12L))
      fail(ErrorKind::Data, "Deligne bound violated at p=" + std::to_string(p) + " in '" +
                                table.label + "': |a_p|/p^((k-1)/2) = " +
                                std::to_string(static_cast<double>(std::fabs(lam))));
    normalized->push_back(static_cast<double>(lam));
  }

  Rep r;
  r.rank_ = 2;
  r.field_ = NumberField::rationals();
  r.ramified_ = prime_divisors(table.level);
  r.self_dual_ = true;
  r.label_ = table.label;
  NewformSource src;
  src.weight = table.weight;
  src.level = table.level;
  src.table = std::make_shared<const ApTable>(std::move(table));
  src.normalized = std::move(normalized);
  r.source_ = std::move(src);
  return r;
}

Rep Rep::delta(std::uint64_t cutoff) { return newform(delta_ap_table(cutoff)); }

bool Rep::ramified_at(std::uint64_t p) const {
  return std::find(ramified_.begin(), ramified_.end(), p) != ramified_.end();
}

std::uint64_t Rep::coefficient_cutoff() const noexcept {
  if (const auto* nf = std::get_if<NewformSource>(&source_)) return nf->table->cutoff();
  return std::numeric_limits<std::uint64_t>::max();
}

void Rep::require_coefficients(std::uint64_t norm) const {
  if (norm > coefficient_cutoff())
    fail(ErrorKind::Resource, "eigenvalue table '" + label_ + "' covers p <= " +
                                  std::to_string(coefficient_cutoff()) + ", needed " +
                                  std::to_string(norm));
}

std::string Rep::key() const {
  return std::visit(
      [&](const auto& src) -> std::string {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, TrivialSource>) {
          return "trivial@" + field_.label();
        } else if constexpr (std::is_same_v<T, DirichletSource>) {
          return "chi(" + std::to_string(src.modulus) + "," + std::to_string(src.index) + ")";
        } else {
          return "newform(" + label_ + ",k=" + std::to_string(src.weight) +
                 ",N=" + std::to_string(src.level) + ")";
        }
      },
      source_);
}

Rep Rep::dual() const {
  if (self_dual_) return *this;
  const auto& src = std::get<DirichletSource>(source_);
  return dirichlet(src.modulus, (src.group_order - src.index) % src.group_order);
}

void Rep::check_unramified(const PrimeIdeal& P) const {
  if (ramified_at(P.p))
    fail(ErrorKind::Domain, "prime " + std::to_string(P.p) + " excluded by S_pi of '" +
                                label_ + "'");
  if (!is_trivial())
    require(P.f == 1 && field_.is_rational(), ErrorKind::Argument,
            "non-trivial coefficient sources are defined over Q only");
}

Complex Rep::lambda(const PrimeIdeal& P) const {
  check_unramified(P);
  return std::visit(
      [&](const auto& src) -> Complex {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, TrivialSource>) {
          return {1.0, 0.0};
        } else if constexpr (std::is_same_v<T, DirichletSource>) {
          return src.values[P.p % src.modulus];
        } else {
          require_coefficients(P.p);
          const auto& e = src.table->entries;
          auto it = std::lower_bound(e.begin(), e.end(), P.p,
                                     [](const auto& x, std::uint64_t q) { return x.first < q; });
          if (it == e.end() || it->first != P.p)
            fail(ErrorKind::Data, "no a_p entry for p=" + std::to_string(P.p) + " in '" +
                                      label_ + "'");
          return {(*src.normalized)[static_cast<std::size_t>(it - e.begin())], 0.0};
        }
      },
      source_);
}

std::vector<Complex> Rep::satake(const PrimeIdeal& P) const {
  const Complex lam = lambda(P);
  if (rank_ == 1) return {lam};
  // X^2 - lambda X + 1 with real |lambda| <= 2: roots e^{+-i theta}.
  const double c = std::clamp(lam.real() / 2.0, -1.0, 1.0);
  const double theta = std::acos(c);
  return {std::polar(1.0, theta), std::polar(1.0, -theta)};
}

IsobaricSum::IsobaricSum(std::vector<IsobaricComponent> components)
    : components_(std::move(components)) {
  require(!components_.empty(), ErrorKind::Argument, "isobaric sum needs a component");
  for (const auto& c : components_) {
    require(std::isfinite(c.shift), ErrorKind::Argument, "isobaric shifts must be finite");
    require(c.rep.field() == components_.front().rep.field(), ErrorKind::Argument,
            "isobaric components must share a base field");
    total_rank_ += c.rep.rank();
  }
}

bool IsobaricSum::ramified_at(std::uint64_t p) const {
  return std::any_of(components_.begin(), components_.end(),
                     [p](const IsobaricComponent& c) { return c.rep.ramified_at(p); });
}

void IsobaricSum::require_coefficients(std::uint64_t norm) const {
  for (const auto& c : components_) c.rep.require_coefficients(norm);
}

IsobaricSum build_auxiliary_pi(const Rep& rep, double t) {
  require(std::isfinite(t), ErrorKind::Argument, "auxiliary shift t must be finite");
  return IsobaricSum({{rep, t / 2.0}, {rep, -t / 2.0}});
}

IsobaricSum build_appendix_pi(const Rep& pi, const Rep& pi_prime, double t) {
  require(std::isfinite(t), ErrorKind::Argument, "shift t must be finite");
  require(pi_prime.self_dual(), ErrorKind::Argument,
          "the second representation must be self-dual (got '" + pi_prime.label() + "')");
  return IsobaricSum({{pi, t}, {pi.dual(), -t}, {pi_prime, 0.0}});
}

RSFactorization rs_factorize(const IsobaricSum& sum) {
  RSFactorization out;
  const auto& comps = sum.components();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string dual_left = comps[i].rep.dual().key();
    for (std::size_t j = 0; j < comps.size(); ++j) {
      RSFactor f;
      f.i = i;
      f.j = j;
      f.left_key = comps[i].rep.key();
      f.right_key = comps[j].rep.dual().key();
      f.net_shift = comps[i].shift - comps[j].shift;
      f.contributes_pole = f.right_key == dual_left && f.net_shift == 0.0;
      out.pole_order += f.contributes_pole ? 1 : 0;
      out.factors.push_back(std::move(f));
    }
  }
  return out;
}

ZeroCountRange zero_count_range(const RSFactorization& fact, int n, int n_prime,
                                double log_conductor, double kappa) {
  require(n >= 1 && n_prime >= 1, ErrorKind::Argument, "ranks must be positive");
  require(log_conductor > 0.0 && std::isfinite(log_conductor), ErrorKind::Argument,
          "log conductor must be positive");
  require(kappa > 0.0 && std::isfinite(kappa), ErrorKind::Argument, "kappa must be positive");
  const int m = fact.pole_order;
  const double width = static_cast<double>(n + n_prime) * (n + n_prime) * (m + 1) * log_conductor;
  return {1.0 - kappa / width, m};
}

}  // namespace rslab
