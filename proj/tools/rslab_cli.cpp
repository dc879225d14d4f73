#include "rslab/rslab.h"

#include "CLI11.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kData = 3, kResource = 4, kNumeric = 5 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LibraryError : std::runtime_error {
  LibraryError(int status, const std::string& what) : std::runtime_error(what), status(status) {}
  int status;
};

void check(int status) {
  if (status != RSLAB_OK) throw LibraryError(status, rslab_last_error());
}

int exit_code(int status) {
  switch (status) {
    case RSLAB_ARGUMENT:
    case RSLAB_DOMAIN:
    case RSLAB_POLE: return kConfig;
    case RSLAB_DATA: return kData;
    case RSLAB_RESOURCE: return kResource;
    case RSLAB_NUMERIC: return kNumeric;
  }
  return kInternal;
}

// ---- configuration -------------------------------------------------------------------------

struct RunConfig {
  std::string command;
  std::string mode;  // lfun sub-mode
  std::string rep = "trivial";
  std::string pi = "delta";
  std::string pi_prime;
  long long field = 0;
  std::string t = "1";
  std::string Y = "1e3,1e4,1e5";
  std::string C = "0.1";
  std::string sigma = "1";
  std::string gamma = "10,100,1000,10000";
  std::string profile = "0.5,2.5";
  std::string residues;
  std::string place = "complex";
  std::string out;
  std::uint64_t capacity = 0;
  std::uint64_t cutoff = 100000;
  std::uint64_t seed = 1;
  std::uint64_t sweep = 100000;
  double threshold = 10.0;
  double c = 1.0;
  double A = 1.0;
  double logQ = 0.0;
  double c0 = 0.1;

  std::string canonical() const {
    std::ostringstream s;
    s.precision(17);
    s << "command=" << command << "\nmode=" << mode << "\nrep=" << rep << "\npi=" << pi
      << "\npi_prime=" << pi_prime << "\nfield=" << field << "\nt=" << t << "\nY=" << Y
      << "\nC=" << C << "\nsigma=" << sigma << "\ngamma=" << gamma << "\nprofile=" << profile
      << "\nresidues=" << residues << "\nplace=" << place << "\ncapacity=" << capacity
      << "\ncutoff=" << cutoff << "\nseed=" << seed << "\nsweep=" << sweep
      << "\nthreshold=" << threshold << "\nc=" << c << "\nA=" << A << "\nlogQ=" << logQ
      << "\nc0=" << c0 << "\n";
    return s.str();
  }
};

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  if (used != text.size() || !std::isfinite(v))
    throw ConfigError(what + ": '" + text + "' is not a finite number");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// "a,b,c" or "a:b:step" (inclusive).
std::vector<double> parse_grid(const std::string& text, const std::string& what) {
  if (text.empty()) throw ConfigError(what + " grid is empty");
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto p = split(text, ':');
    if (p.size() != 3) throw ConfigError(what + ": range grids are a:b:step");
    const double a = parse_number(p[0], what), b = parse_number(p[1], what);
    const double step = parse_number(p[2], what);
    if (step <= 0.0) throw ConfigError(what + ": step must be positive");
    if (b < a) throw ConfigError(what + " grid is empty (" + text + ")");
    const auto n = static_cast<long long>(std::floor((b - a) / step + 1e-9));
    if (n > 10'000'000) throw ConfigError(what + ": grid has more than 10^7 points");
    for (long long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  } else {
    for (const auto& part : split(text, ',')) {
      if (part.empty()) throw ConfigError(what + ": empty entry in '" + text + "'");
      out.push_back(parse_number(part, what));
    }
  }
  if (out.empty()) throw ConfigError(what + " grid is empty");
  return out;
}

double grid_max(const std::vector<double>& g) {
  double m = 0.0;
  for (double x : g) m = std::max(m, std::abs(x));
  return m;
}

rslab_profile parse_profile(const std::string& text) {
  const auto p = split(text, ',');
  if (p.size() != 2) throw ConfigError("--profile expects a,b (support [a, b] of the weight)");
  return {parse_number(p[0], "--profile"), parse_number(p[1], "--profile")};
}

// ---- handles -------------------------------------------------------------------------------

struct Primes {
  rslab_primes* h = nullptr;
  explicit Primes(std::uint64_t capacity) { check(rslab_primes_new(capacity, &h)); }
  ~Primes() { rslab_primes_free(h); }
  Primes(const Primes&) = delete;
  Primes& operator=(const Primes&) = delete;
};

struct Rep {
  rslab_rep* h = nullptr;
  Rep() = default;
  ~Rep() { rslab_rep_free(h); }
  Rep(const Rep&) = delete;
  Rep& operator=(const Rep&) = delete;
};

struct Edge {
  rslab_edge* h = nullptr;
  ~Edge() { rslab_edge_free(h); }
};

// trivial | trivial:d | dirichlet:q:index | delta | delta:cutoff | file:path
std::unique_ptr<Rep> make_rep(const std::string& spec, long long field, std::uint64_t cutoff) {
  auto rep = std::make_unique<Rep>();
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "trivial") {
    const long long d = tail.empty() ? field : std::stoll(tail);
    check(rslab_rep_trivial(d, &rep->h));
  } else if (head == "dirichlet") {
    const auto p = split(tail, ':');
    if (p.size() != 2) throw ConfigError("--rep dirichlet:q:index expects two integers");
    check(rslab_rep_dirichlet(static_cast<std::uint64_t>(parse_number(p[0], "modulus")),
                              static_cast<std::uint64_t>(parse_number(p[1], "index")), &rep->h));
  } else if (head == "delta") {
    const auto n = tail.empty() ? cutoff : static_cast<std::uint64_t>(parse_number(tail, "cutoff"));
    check(rslab_rep_delta(n, &rep->h));
  } else if (head == "file") {
    if (tail.empty()) throw ConfigError("--rep file:path needs a path");
    check(rslab_rep_newform_file(tail.c_str(), &rep->h));
  } else {
    throw ConfigError("unknown representation '" + spec +
                      "' (trivial | dirichlet:q:index | delta | file:path)");
  }
  return rep;
}

// key=value lines (gamma_m1, gamma_0, L1_ad, L1_ad_prime, error), then t,L_re,L_im,Lp_re,Lp_im rows.
void load_residues(const std::string& path, const Rep& rep, Edge& edge) {
  std::ifstream in(path);
  if (!in) throw LibraryError(RSLAB_DATA, "cannot open residue file '" + path + "'");
  double g1 = 1.0, g0 = 0.57721566490153286, ad = 1.0, adp = 0.0, err = 0.0;
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& why) {
    return LibraryError(RSLAB_DATA, path + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      const std::string key = line.substr(0, eq);
      double v = 0.0;
      try {
        v = parse_number(line.substr(eq + 1), key);
      } catch (const ConfigError& e) {
        throw bad(e.what());
      }
      if (key == "gamma_m1") g1 = v;
      else if (key == "gamma_0") g0 = v;
      else if (key == "L1_ad") ad = v;
      else if (key == "L1_ad_prime") adp = v;
      else if (key == "error") err = v;
      else throw bad("unknown key '" + key + "'");
      continue;
    }
    if (line.rfind("t,", 0) == 0) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 5) throw bad("expected t,L_re,L_im,Lp_re,Lp_im");
    std::vector<double> row;
    try {
      for (const auto& c : cells) row.push_back(parse_number(c, "value"));
    } catch (const ConfigError& e) {
      throw bad(e.what());
    }
    rows.push_back(row);
  }
  check(rslab_edge_table(rep.h, g1, g0, ad, adp, err, &edge.h));
  for (const auto& r : rows) check(rslab_edge_add(edge.h, r[0], r[1], r[2], r[3], r[4]));
}

// ---- CSV -----------------------------------------------------------------------------------

class Csv {
public:
  explicit Csv(std::ostream& out) : out_(out) {}

  void comment(const std::string& text) { out_ << "# " << text << "\n"; }

  void header(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* n : names) {
      out_ << (first ? "" : ",") << n;
      first = false;
    }
    out_ << "\n";
  }

  Csv& num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return cell(buf);
  }
  Csv& integer(long long v) { return cell(std::to_string(v)); }
  Csv& flag(bool v) { return cell(v ? "true" : "false"); }
  Csv& text(const std::string& v) {
    if (v.find_first_of(",\"\r\n") == std::string::npos) return cell(v);
    std::string q = "\"";
    for (char ch : v) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return cell(q + "\"");
  }
  void end() {
    out_ << "\n";
    first_ = true;
  }

private:
  Csv& cell(const std::string& v) {
    out_ << (first_ ? "" : ",") << v;
    first_ = false;
    return *this;
  }

  std::ostream& out_;
  bool first_ = true;
};

void require_capacity(const RunConfig& cfg, double demand, std::uint64_t& capacity) {
  const auto need = static_cast<std::uint64_t>(std::ceil(demand)) + 1;
  if (cfg.capacity == 0) {
    capacity = std::max<std::uint64_t>(need, 1000);
    return;
  }
  if (cfg.capacity < need)
    throw ConfigError("--capacity " + std::to_string(cfg.capacity) + " is below the grid demand " +
                      std::to_string(need));
  capacity = cfg.capacity;
}

const char* kind_name(int kind) {
  switch (kind) {
    case RSLAB_COMPLEX_CHAR: return "C";
    case RSLAB_REAL_ONE_DIM: return "R1";
    case RSLAB_REAL_TWO_DIM: return "R2";
  }
  return "?";
}

// ---- subcommands ---------------------------------------------------------------------------

void run_sieve(const RunConfig& cfg, Csv& csv) {
  const auto Ys = parse_grid(cfg.Y, "--Y");
  const auto ts = parse_grid(cfg.t, "--t");
  const auto Cs = parse_grid(cfg.C, "--C");
  std::uint64_t capacity = 0;
  require_capacity(cfg, 2.0 * grid_max(Ys), capacity);
  const auto rep = make_rep(cfg.rep, cfg.field, cfg.cutoff);
  const Primes primes(capacity);
  csv.comment("prime ideals p with Y <= N(p) <= 2Y; counts are ideals, sums are dimensionless");
  csv.comment("tauberian = sum |lambda(p)|^2 log N(p); density = #{|lambda(p)| >= C} vs (1-C^2)/n^2 Y/log Y; "
              "small_angle = #{|1+N(p)^it| < C} vs 64 C [F:Q] log2/pi Y/log(Y/4t^2); "
              "lemma = sum |lambda(p)|^2 |1+N(p)^it|^2 and lemma*log Y/Y; "
              "combined = #{|lambda(p)||1+N(p)^it| >= C^2} with lhs >= C^4 count");
  csv.header({"Y", "t", "C", "tauberian_sum", "tauberian_over_Y", "ideals", "density_count",
              "density_floor", "density_ratio", "density_ok", "small_angle_applicable",
              "small_angle_count", "small_angle_bound", "small_angle_ok", "lemma_applicable",
              "lemma_lhs", "lemma_ratio", "combined_count", "combined_lhs", "combined_minorant",
              "combined_ok"});
  for (double Y : Ys)
    for (double t : ts)
      for (double C : Cs) {
        rslab_sieve_row r{};
        check(rslab_sieve_report(primes.h, rep->h, Y, t, C, cfg.threshold, &r));
        csv.num(r.Y).num(r.t).num(r.C).num(r.tauberian_sum).num(r.tauberian_ratio)
            .integer(r.tauberian_ideals).integer(r.density_count).num(r.density_floor)
            .num(r.density_ratio).flag(r.density_ok).flag(r.small_angle_applicable)
            .integer(r.small_angle_count).num(r.small_angle_bound).flag(r.small_angle_ok)
            .flag(r.lemma_applicable).num(r.lemma_lhs).num(r.lemma_ratio).integer(r.combined_count)
            .num(r.combined_lhs).num(r.combined_minorant).flag(r.combined_ok);
        csv.end();
      }
}

void run_perron(const RunConfig& cfg, Csv& csv) {
  const auto Ys = parse_grid(cfg.Y, "--Y");
  const auto ts = parse_grid(cfg.t, "--t");
  const rslab_profile profile = parse_profile(cfg.profile);
  std::uint64_t capacity = 0;
  require_capacity(cfg, profile.b * grid_max(Ys), capacity);
  const auto rep = make_rep(cfg.rep, cfg.field, cfg.cutoff);
  const Primes primes(capacity);
  Edge edge;
  if (!cfg.residues.empty()) load_residues(cfg.residues, *rep, edge);
  csv.comment("F_direct = sum over ideals of lambda(a) psi(N(a)/Y) for the auxiliary sum at t; "
              "F_predicted = leading + linear + plus + minus (residue terms at s = 1, 1 +- it)");
  csv.comment("leading = r_{-2} psihat(1) Y log Y; linear = (r_{-1} psihat(1) + r_{-2} psihat'(1)) Y; "
              "plus/minus = Re r^{+-} psihat(1 +- it) Y^{1 +- it}; diff_over_Y = |F_direct - F_predicted|/Y");
  csv.header({"t", "Y", "F_direct", "F_predicted", "leading", "linear", "plus", "minus", "abs_diff",
              "diff_over_Y", "relative_gap", "error", "consistent"});
  for (double t : ts) {
    std::vector<rslab_perron_row> rows(Ys.size());
    rslab_perron_summary sum{};
    check(rslab_perron(primes.h, rep->h, t, Ys.data(), Ys.size(), profile, edge.h, rows.data(), &sum));
    for (const auto& r : rows) {
      csv.num(t).num(r.Y).num(r.F_direct).num(r.F_predicted).num(r.leading).num(r.linear)
          .num(r.plus_re).num(r.minus_re).num(r.abs_diff).num(r.diff_over_Y).num(r.relative_gap)
          .num(r.error).flag(r.consistent);
      csv.end();
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "t=%.17g decreasing=%s r_-2=%.17g r_-1=%.17g residue_error=%.3g", t,
                  sum.decreasing ? "true" : "false", sum.r_m2, sum.r_m1, sum.residue_error);
    csv.comment(buf);
  }
}

struct SweepSink {
  Csv* csv;
};

void emit_sample(const rslab_sweep_sample* s, void* user) {
  Csv& csv = *static_cast<SweepSink*>(user)->csv;
  const std::string kase = std::string(kind_name(s->phi.kind)) + "x" + kind_name(s->phi_prime.kind);
  auto kval = [](const rslab_weil& w) { return w.kind == RSLAB_REAL_ONE_DIM ? w.epsilon : w.k; };
  csv.text(kase).integer(kval(s->phi)).num(s->phi.nu_re).num(s->phi.nu_im).integer(kval(s->phi_prime))
      .num(s->phi_prime.nu_re).num(s->phi_prime.nu_im).num(s->t).num(s->check.lhs).num(s->check.rhs)
      .num(s->check.ratio).flag(s->check.satisfied);
  csv.end();
}

void run_conductor(const RunConfig& cfg, Csv& csv) {
  if (!cfg.pi_prime.empty()) {
    const auto ts = parse_grid(cfg.t, "--t");
    const auto pi = make_rep(cfg.pi, cfg.field, cfg.cutoff);
    const auto pp = make_rep(cfg.pi_prime, cfg.field, cfg.cutoff);
    csv.comment("three-term sum pi|it + dual(pi)|-it + pi'; finite = product of pairwise "
                "Bushnell-Henniart bounds vs (q_f(pi)^2 q_f(pi'))^(4n+2n'); arch_base = "
                "(q_inf(pi)^2 q_inf(pi'))^(4n+2n') (1+|t|)^((4nn'+2n^2)[F:Q]); "
                "aux = log q(pi x dual pi)^2 q(+-it) vs log q(pi)^(8n) (|t|+3)^(2n^2[F:Q])");
    csv.header({"t", "n", "n_prime", "degree", "finite_lhs", "finite_rhs", "finite_holds", "arch_lhs",
                "arch_base", "implied_C1", "log_aux_lhs", "log_aux_rhs", "aux_holds"});
    for (double t : ts) {
      rslab_global_bounds g{};
      check(rslab_global_bounds_eval(pi->h, pp->h, t, &g));
      csv.num(t).integer(g.n).integer(g.n_prime).integer(g.degree).num(g.finite_lhs).num(g.finite_rhs)
          .flag(g.finite_holds).num(g.arch_lhs).num(g.arch_base).num(g.implied_C1).num(g.log_aux_lhs)
          .num(g.log_aux_rhs).flag(g.aux_holds);
      csv.end();
    }
    return;
  }
  if (cfg.place != "real" && cfg.place != "complex")
    throw ConfigError("--place must be real or complex");
  if (cfg.sweep == 0) throw ConfigError("--sweep must be positive");
  const double C = parse_grid(cfg.C, "--C").front();
  csv.comment("k is the epsilon sign for R1; lhs = q_v(it; phi x phi'); rhs = C q_v(phi)^d' "
              "q_v(phi')^d (1+|t|)^(d d' [F_v:R]); ratio = lhs/(rhs/C)");
  csv.header({"case", "k", "nu_re", "nu_im", "k_prime", "nu_prime_re", "nu_prime_im", "t", "lhs",
              "rhs", "ratio", "satisfied"});
  SweepSink sink{&csv};
  rslab_sweep_summary s{};
  check(rslab_reduction_sweep(cfg.place == "complex", cfg.sweep, cfg.seed, C, emit_sample, &sink, &s));
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "samples=%" PRIu64 " max_ratio=%.17g failures=%" PRIu64 " dimension_failures=%" PRIu64
                " symmetry_failures=%" PRIu64 " sqrt3_checked=%" PRIu64 " sqrt3_first_failures=%" PRIu64
                " sqrt3_second_failures=%" PRIu64,
                s.samples, s.max_ratio, s.reduction_failures, s.dimension_failures, s.symmetry_failures,
                s.sqrt3_checked, s.sqrt3_first_failures, s.sqrt3_second_failures);
  csv.comment(buf);
}

void run_poles(const RunConfig& cfg, Csv& csv) {
  const auto ts = parse_grid(cfg.t, "--t");
  const auto pi = make_rep(cfg.pi, cfg.field, cfg.cutoff);
  const auto pp = make_rep(cfg.pi_prime.empty() ? cfg.pi : cfg.pi_prime, cfg.field, cfg.cutoff);
  csv.comment("factors L(s + i net_shift, pi_i x dual(pi_j)) of L(s, Pi x dual Pi) for Pi = pi|it + "
              "dual(pi)|-it + pi'; m = pole order at s = 1; m_aux for pi|it/2 + pi|-it/2");
  csv.header({"t", "pi_self_dual", "same_rep", "m", "m_aux", "i", "j", "left", "right", "net_shift",
              "pole"});
  for (double t : ts) {
    rslab_pole_info info{};
    check(rslab_pole_order(pi->h, pp->h, t, nullptr, 0, &info));
    std::vector<rslab_rs_factor> f(info.factors);
    check(rslab_pole_order(pi->h, pp->h, t, f.data(), f.size(), &info));
    for (const auto& x : f) {
      csv.num(t).flag(info.pi_self_dual).flag(info.same_rep).integer(info.m).integer(info.m_aux)
          .integer(x.i).integer(x.j).text(x.left).text(x.right).num(x.net_shift).flag(x.contributes_pole);
      csv.end();
    }
  }
}

void run_zerofree(const RunConfig& cfg, Csv& csv) {
  const auto gammas = parse_grid(cfg.gamma, "--gamma");
  csv.comment("sigma = 1 + c0/log(|gamma|+3); lower = c (|gamma|+3)^(2(1-sigma))/(sigma-1); "
              "beta_max = sigma - 2/(2/(sigma-1) + A logQ - lower); logQ defaults to 2 log(|gamma|+3)");
  csv.header({"gamma", "c", "A", "logQ", "c0", "status", "sigma", "lower", "denominator", "beta_max",
              "one_minus_beta", "scaled_width", "residual"});
  for (double g : gammas) {
    rslab_width w{};
    check(rslab_width_solve(cfg.c, cfg.A, cfg.logQ, g, cfg.c0, &w));
    const double logQ = cfg.logQ > 0.0 ? cfg.logQ : 2.0 * std::log(std::abs(g) + 3.0);
    csv.num(g).num(cfg.c).num(cfg.A).num(logQ).num(cfg.c0).text(rslab_width_status_name(w.status))
        .num(w.sigma).num(w.lower).num(w.denominator).num(w.beta_max).num(w.one_minus_beta)
        .num(w.scaled_width).num(w.residual);
    csv.end();
  }
}

void run_lfun(const RunConfig& cfg, Csv& csv) {
  const auto rep = make_rep(cfg.rep, cfg.field, cfg.cutoff);
  if (cfg.mode == "scan") {
    const auto ts = parse_grid(cfg.t, "--t");
    const auto offs = parse_grid(cfg.sigma, "--sigma");
    std::uint64_t capacity = 0;
    require_capacity(cfg, static_cast<double>(cfg.cutoff), capacity);
    const Primes primes(capacity);
    std::vector<rslab_scan_row> rows(ts.size() * offs.size());
    double min_ratio = 0.0;
    check(rslab_lower_scan(primes.h, rep->h, ts.data(), ts.size(), offs.data(), offs.size(), cfg.cutoff,
                           rows.data(), &min_ratio));
    csv.comment("sigma = 1 + offset/log(|t|+3); value = |L(sigma+it, pi x dual pi)|; lower = value minus "
                "its bar; ratio = lower * log(|t|+3)");
    csv.header({"t", "offset", "sigma", "value", "error", "lower", "comparator", "ratio", "method"});
    for (const auto& r : rows) {
      csv.num(r.t).num(r.offset).num(r.sigma).num(r.value).num(r.error).num(r.lower).num(r.comparator)
          .num(r.ratio).text(r.zeta ? "euler-maclaurin" : "series");
      csv.end();
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "min_ratio=%.17g", min_ratio);
    csv.comment(buf);
  } else if (cfg.mode == "goli") {
    const auto ts = parse_grid(cfg.t, "--t");
    Edge edge;
    if (!cfg.residues.empty()) load_residues(cfg.residues, *rep, edge);
    std::vector<rslab_goli_row> rows(ts.size());
    std::size_t n = 0;
    check(rslab_goli(rep->h, ts.data(), ts.size(), edge.h, rows.data(), &n));
    csv.comment("ratios of |L(1+it)|, |L'(1+it)| and the residues to powers of log(|t|+3)");
    csv.header({"t", "L_abs", "L_prime_abs", "ratio_L", "ratio_L_prime", "ratio_r2", "ratio_r1",
                "ratio_rpm"});
    for (std::size_t i = 0; i < n; ++i) {
      const auto& r = rows[i];
      csv.num(r.t).num(r.L_abs).num(r.L_prime_abs).num(r.ratio_L).num(r.ratio_L_prime).num(r.ratio_r2)
          .num(r.ratio_r1).num(r.ratio_rpm);
      csv.end();
    }
  } else if (cfg.mode == "terms") {
    const double t = parse_grid(cfg.t, "--t").front();
    const double sigma = parse_grid(cfg.sigma, "--sigma").front();
    std::uint64_t capacity = 0;
    require_capacity(cfg, static_cast<double>(cfg.cutoff), capacity);
    const Primes primes(capacity);
    std::size_t n = 0;
    check(rslab_logderiv_terms(primes.h, rep->h, t, sigma, cfg.cutoff, nullptr, 0, &n));
    std::vector<rslab_term_row> rows(n);
    check(rslab_logderiv_terms(primes.h, rep->h, t, sigma, cfg.cutoff, rows.data(), n, &n));
    csv.comment("terms Lambda(p^k)/N(p^k)^sigma of -L'/L(sigma, Pi x dual Pi), Pi the auxiliary sum at t; "
                "tail_bound covers all norms beyond the row");
    csv.header({"norm", "p", "k", "term", "partial_sum", "tail_bound"});
    for (const auto& r : rows) {
      csv.integer(static_cast<long long>(r.norm)).integer(static_cast<long long>(r.p)).integer(r.k)
          .num(r.term).num(r.partial_sum).num(r.tail_bound);
      csv.end();
    }
  } else if (cfg.mode == "chain") {
    const double t = parse_grid(cfg.t, "--t").front();
    const auto Ys = parse_grid(cfg.Y, "--Y");
    const rslab_profile profile = parse_profile(cfg.profile);
    std::uint64_t capacity = 0;
    require_capacity(cfg, profile.b * grid_max(Ys), capacity);
    const Primes primes(capacity);
    Edge edge;
    if (!cfg.residues.empty()) load_residues(cfg.residues, *rep, edge);
    std::vector<rslab_chain_row> rows(Ys.size());
    rslab_chain_summary sum{};
    check(rslab_lower_chain(primes.h, rep->h, t, Ys.data(), Ys.size(), profile, edge.h, rows.data(), &sum));
    csv.comment("upper_shape = |L(1+it)| Y (log Y)^2; implied = F/(Y (log Y)^2 K) with K = max F/upper_shape");
    csv.header({"t", "Y", "F", "upper_shape", "implied", "informative", "L_abs", "K", "comparator"});
    for (const auto& r : rows) {
      csv.num(t).num(r.Y).num(r.F).num(r.upper_shape).num(r.implied).flag(r.informative).num(sum.L_abs)
          .num(sum.K).num(sum.comparator);
      csv.end();
    }
  } else {
    throw ConfigError("lfun mode must be scan, goli, terms or chain");
  }
}

void run_gen_delta(const RunConfig& cfg) {
  if (cfg.out.empty()) throw ConfigError("gen-delta needs --out");
  check(rslab_write_delta_table(cfg.cutoff, cfg.out.c_str()));
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "Output path (stdout when omitted)");
  sub->add_option("--seed", cfg.seed, "Seed for randomized sweeps");
  sub->add_option("--capacity", cfg.capacity, "Prime table capacity (0 derives it from the grids)");
  sub->add_option("--field", cfg.field, "Squarefree d for Q(sqrt d); 0 is Q");
  sub->add_option("--cutoff", cfg.cutoff, "Coefficient cutoff for generated tables and series");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Rankin-Selberg lower-bound laboratory"};
  app.set_config("--config", "", "TOML configuration; command-line flags take precedence");
  app.set_version_flag("--version", std::string(rslab_version()));
  app.require_subcommand(1);

  auto* sieve = app.add_subcommand("sieve", "Prime-ideal sieve estimates per (Y, t, C)");
  auto* perron = app.add_subcommand("perron", "Smoothed sum against its residue prediction");
  auto* conductor = app.add_subcommand("conductor", "Archimedean conductor sweep or global bounds");
  auto* poles = app.add_subcommand("poles", "Pole order of the Rankin-Selberg square at s = 1");
  auto* zerofree = app.add_subcommand("zerofree", "Zero-free width from the two templates");
  auto* lfun = app.add_subcommand("lfun", "L-value scans: scan | goli | terms | chain");
  auto* gen = app.add_subcommand("gen-delta", "Write the ap-table of Delta");

  for (auto* sub : {sieve, perron, conductor, poles, zerofree, lfun, gen}) add_common(sub, cfg);
  for (auto* sub : {sieve, perron, lfun})
    sub->add_option("--rep", cfg.rep, "trivial | dirichlet:q:index | delta | file:path");
  for (auto* sub : {sieve, perron, conductor, poles, lfun})
    sub->add_option("--t", cfg.t, "t grid: a,b,c or a:b:step");
  for (auto* sub : {sieve, perron, lfun}) sub->add_option("--Y", cfg.Y, "Y grid");
  for (auto* sub : {sieve, conductor}) sub->add_option("--C", cfg.C, "C grid");
  sieve->add_option("--threshold", cfg.threshold, "A in the hypothesis Y >= A (|t|+3)^2");
  for (auto* sub : {perron, lfun}) {
    sub->add_option("--profile", cfg.profile, "Weight support a,b");
    sub->add_option("--residues", cfg.residues, "Edge-value file for non-trivial reps");
  }
  for (auto* sub : {conductor, poles}) {
    sub->add_option("--pi", cfg.pi, "Representation pi");
    sub->add_option("--pi-prime", cfg.pi_prime, "Representation pi'");
  }
  conductor->add_option("--place", cfg.place, "real | complex");
  conductor->add_option("--sweep", cfg.sweep, "Number of random parameter pairs");
  zerofree->add_option("--gamma", cfg.gamma, "Height grid");
  zerofree->add_option("--c", cfg.c, "Lower-template constant");
  zerofree->add_option("--A", cfg.A, "Upper-template constant");
  zerofree->add_option("--logQ", cfg.logQ, "log conductor (0 selects 2 log(|gamma|+3))");
  zerofree->add_option("--c0", cfg.c0, "sigma = 1 + c0/log(|gamma|+3)");
  lfun->add_option("mode", cfg.mode, "scan | goli | terms | chain")->required();
  lfun->add_option("--sigma", cfg.sigma, "sigma offsets (scan) or sigma (terms)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "gen-delta") {
      run_gen_delta(cfg);
      return kOk;
    }
    std::ostringstream buffer;
    Csv csv(buffer);
    char manifest[128];
    std::snprintf(manifest, sizeof manifest, "rslab %s config=%016" PRIx64 " seed=%" PRIu64,
                  rslab_version(), fnv1a(cfg.canonical()), cfg.seed);
    csv.comment(manifest);
    if (cfg.command == "sieve") run_sieve(cfg, csv);
    else if (cfg.command == "perron") run_perron(cfg, csv);
    else if (cfg.command == "conductor") run_conductor(cfg, csv);
    else if (cfg.command == "poles") run_poles(cfg, csv);
    else if (cfg.command == "zerofree") run_zerofree(cfg, csv);
    else if (cfg.command == "lfun") run_lfun(cfg, csv);
    if (cfg.out.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!(out << buffer.str())) {
        std::cerr << "error: cannot write '" << cfg.out << "'\n";
        return kResource;
      }
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const LibraryError& e) {
    std::cerr << "error (" << rslab_status_name(e.status) << "): " << e.what() << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
}
