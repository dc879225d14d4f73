#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rslab {

using Int128 = __int128;

std::string to_string(Int128 v);
/// Parses an optionally signed decimal integer; throws ErrorKind::Data on junk or overflow.
Int128 parse_int128(std::string_view text);

/// Hecke eigenvalues a_p of a holomorphic newform, one per prime p <= cutoff.
struct ApTable {
  int weight = 0;
  std::uint64_t level = 1;
  std::string label;
  std::vector<std::pair<std::uint32_t, Int128>> entries;  // p ascending, no gaps
  std::uint64_t covered = 0;  // every prime <= covered is listed (generated tables)

  std::uint64_t cutoff() const noexcept {
    return std::max<std::uint64_t>(covered, entries.empty() ? 0 : entries.back().first);
  }
  /// Throws ErrorKind::Data when p is not tabulated.
  Int128 ap(std::uint64_t p) const;
};

// "ap-table v1": header `#ap-table v1 weight=<k> level=<N> label=<text>`,
// then one `p,a_p` line per prime, p ascending with no gaps.
ApTable parse_ap_table(std::istream& in);
ApTable read_ap_table(const std::string& path);
void write_ap_table(std::ostream& out, const ApTable& table);
void write_ap_table(const std::string& path, const ApTable& table);

/// tau(n) for 0 <= n <= cutoff (tau(0) = 0), from Delta = q * (eta^3)^8 with
/// eta^3 = sum_k (-1)^k (2k+1) q^{k(k+1)/2}.
std::vector<Int128> ramanujan_tau(std::uint64_t cutoff);

/// The ap-table of Delta (weight 12, level 1) for primes up to cutoff.
ApTable delta_ap_table(std::uint64_t cutoff);

}  // namespace rslab
