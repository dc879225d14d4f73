#include "rslab/modular.hpp"

#include "rslab/error.hpp"
#include "rslab/fields.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace rslab {

std::string to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work in the negative range so INT128_MIN is representable.
  std::string digits;
  Int128 x = neg ? v : -v;
  while (x != 0) {
    const int d = static_cast<int>(-(x % 10));
    digits.push_back(static_cast<char>('0' + d));
    x /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int128 parse_int128(std::string_view text) {
  require(!text.empty(), ErrorKind::Data, "empty integer field");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  require(i < text.size(), ErrorKind::Data, "sign without digits");
  constexpr Int128 kMax = static_cast<Int128>(~static_cast<unsigned __int128>(0) >> 1);
  Int128 v = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    require(c >= '0' && c <= '9', ErrorKind::Data,
            "invalid integer '" + std::string(text) + "'");
    require(v <= (kMax - (c - '0')) / 10, ErrorKind::Data,
            "integer overflow in '" + std::string(text) + "'");
    v = v * 10 + (c - '0');
  }
  return neg ? -v : v;
}

Int128 ApTable::ap(std::uint64_t p) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), p,
                             [](const auto& e, std::uint64_t q) { return e.first < q; });
  if (it == entries.end() || it->first != p)
    fail(ErrorKind::Data, "no a_p entry for p=" + std::to_string(p) + " in table '" + label + "'");
  return it->second;
}

namespace {

std::uint64_t parse_u64(std::string_view s, const std::string& what) {
  const Int128 v = parse_int128(s);
  require(v >= 0 && v <= static_cast<Int128>(std::numeric_limits<std::uint64_t>::max()),
          ErrorKind::Data, what + " out of range");
  return static_cast<std::uint64_t>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

ApTable parse_ap_table(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::Data, "ap-table: empty input");
  std::string_view header = trim(line);
  constexpr std::string_view kMagic = "#ap-table v1 ";
  require(header.substr(0, kMagic.size()) == kMagic, ErrorKind::Data,
          "ap-table: first line must start with '#ap-table v1'");
  header.remove_prefix(kMagic.size());

  ApTable table;
  bool have_weight = false, have_level = false, have_label = false;
  while (!header.empty()) {
    header = trim(header);
    if (header.substr(0, 6) == "label=") {
      // label runs to end of line and may contain spaces
      table.label = std::string(header.substr(6));
      have_label = true;
      break;
    }
    const auto sp = header.find(' ');
    const std::string_view tok = header.substr(0, sp);
    if (tok.substr(0, 7) == "weight=") {
      table.weight = static_cast<int>(parse_u64(tok.substr(7), "weight"));
      have_weight = true;
    } else if (tok.substr(0, 6) == "level=") {
      table.level = parse_u64(tok.substr(6), "level");
      have_level = true;
    } else {
      fail(ErrorKind::Data, "ap-table: unknown header field '" + std::string(tok) + "'");
    }
    header = sp == std::string_view::npos ? std::string_view{} : header.substr(sp + 1);
  }
  require(have_weight && have_level && have_label, ErrorKind::Data,
          "ap-table: header needs weight=, level= and label=");
  require(table.weight >= 2 && table.weight % 2 == 0, ErrorKind::Data,
          "ap-table: weight must be an even integer >= 2");
  require(table.level >= 1, ErrorKind::Data, "ap-table: level must be >= 1");

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto comma = body.find(',');
    require(comma != std::string_view::npos, ErrorKind::Data,
            "ap-table line " + std::to_string(lineno) + ": expected 'p,a_p'");
    const std::uint64_t p = parse_u64(trim(body.substr(0, comma)), "p");
    const Int128 a = parse_int128(trim(body.substr(comma + 1)));
    require(p <= std::numeric_limits<std::uint32_t>::max(), ErrorKind::Data,
            "ap-table line " + std::to_string(lineno) + ": p too large");
    if (!table.entries.empty()) {
      const auto prev = table.entries.back().first;
      require(p != prev, ErrorKind::Data,
              "ap-table line " + std::to_string(lineno) + ": duplicate p=" + std::to_string(p));
      require(p > prev, ErrorKind::Data,
              "ap-table line " + std::to_string(lineno) + ": p=" + std::to_string(p) +
                  " out of order");
    }
    table.entries.emplace_back(static_cast<std::uint32_t>(p), a);
  }
  require(!table.entries.empty(), ErrorKind::Data, "ap-table: no entries");

  const auto expected = small_primes(static_cast<std::uint32_t>(table.cutoff()));
  std::size_t i = 0;
  for (; i < expected.size() && i < table.entries.size(); ++i) {
    if (table.entries[i].first != expected[i]) {
      require(table.entries[i].first > expected[i], ErrorKind::Data,
              "ap-table: entry p=" + std::to_string(table.entries[i].first) + " is not prime");
      fail(ErrorKind::Data, "ap-table: gap, missing p=" + std::to_string(expected[i]));
    }
  }
  require(i == table.entries.size() && i == expected.size(), ErrorKind::Data,
          "ap-table: entry list does not match the primes up to the cutoff");
  return table;
}

ApTable read_ap_table(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::Data, "cannot open ap-table '" + path + "'");
  return parse_ap_table(in);
}

void write_ap_table(std::ostream& out, const ApTable& table) {
  out << "#ap-table v1 weight=" << table.weight << " level=" << table.level
      << " label=" << table.label << '\n';
  for (const auto& [p, a] : table.entries) out << p << ',' << to_string(a) << '\n';
}

void write_ap_table(const std::string& path, const ApTable& table) {
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorKind::Resource, "cannot write '" + path + "'");
  write_ap_table(out, table);
  require(static_cast<bool>(out), ErrorKind::Resource, "write failed for '" + path + "'");
}

std::vector<Int128> ramanujan_tau(std::uint64_t cutoff) {
  require(cutoff >= 1, ErrorKind::Argument, "tau cutoff must be >= 1");
  require(cutoff <= 2'000'000, ErrorKind::Resource, "tau cutoff above 2e6 overflows 128-bit");
  // (eta^3)^8 / q-shift: tau(n) is the coefficient of q^{n-1}.
  const std::size_t len = cutoff;
  std::vector<std::pair<std::size_t, std::int64_t>> eta3;
  for (std::int64_t k = 0;; ++k) {
    const auto e = static_cast<std::size_t>(k * (k + 1) / 2);
    if (e >= len) break;
    eta3.emplace_back(e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
  }

  std::vector<Int128> acc(len, 0), next(len);
  for (const auto& [e, c] : eta3) acc[e] = c;
  for (int round = 1; round < 8; ++round) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t n = 0; n < len; ++n) {
      const Int128 a = acc[n];
      if (a == 0) continue;
      for (const auto& [e, c] : eta3) {
        if (n + e >= len) break;
        next[n + e] += a * c;
      }
    }
    acc.swap(next);
  }

  std::vector<Int128> tau(cutoff + 1, 0);
  for (std::size_t n = 1; n <= cutoff; ++n) tau[n] = acc[n - 1];
  return tau;
}

ApTable delta_ap_table(std::uint64_t cutoff) {
  const auto tau = ramanujan_tau(cutoff);
  ApTable table;
  table.weight = 12;
  table.level = 1;
  table.label = "Delta";
  table.covered = cutoff;
  for (std::uint32_t p : small_primes(static_cast<std::uint32_t>(cutoff)))
    table.entries.emplace_back(p, tau[p]);
  return table;
}

}  // namespace rslab
