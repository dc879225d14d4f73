#include "doctest.h"

#include "rslab/error.hpp"
#include "rslab/modular.hpp"

#include <cmath>
#include <sstream>
#include <vector>

using namespace rslab;

namespace {

// q * prod_{n>=1} (1 - q^n)^24, one linear factor at a time.
std::vector<Int128> tau_by_product(std::size_t n_max) {
  std::vector<Int128> c(n_max, 0);  // coefficients of prod (1 - q^n)^24 up to q^{n_max - 1}
  c[0] = 1;
  for (std::size_t n = 1; n < n_max; ++n)
    for (int r = 0; r < 24; ++r)
      for (std::size_t i = n_max - 1; i >= n; --i) c[i] -= c[i - n];
  std::vector<Int128> tau(n_max + 1, 0);
  for (std::size_t i = 0; i < n_max; ++i) tau[i + 1] = c[i];
  return tau;
}

}  // namespace

TEST_CASE("tau agrees with the direct product expansion") {
  const auto fast = ramanujan_tau(400);
  const auto slow = tau_by_product(400);
  for (std::size_t n = 1; n <= 400; ++n) CHECK(fast[n] == slow[n]);
  CHECK(fast[2] == -24);
  CHECK(fast[3] == 252);
  CHECK(fast[5] == 4830);
  CHECK(fast[7] == -16744);
}

TEST_CASE("tau is multiplicative and satisfies the Hecke recursion") {
  const auto tau = ramanujan_tau(5000);
  CHECK(tau[6] == tau[2] * tau[3]);
  CHECK(tau[35] == tau[5] * tau[7]);
  CHECK(tau[4] == tau[2] * tau[2] - 2048);
  const Int128 p11 = 177147;  // 3^11
  CHECK(tau[9] == tau[3] * tau[3] - p11);
}

TEST_CASE("int128 text round trip") {
  CHECK(to_string(parse_int128("-123456789012345678901234")) == "-123456789012345678901234");
  CHECK(to_string(static_cast<Int128>(0)) == "0");
  CHECK_THROWS_AS(parse_int128("12x"), Error);
  CHECK_THROWS_AS(parse_int128(""), Error);
  CHECK_THROWS_AS(parse_int128("999999999999999999999999999999999999999999"), Error);
}

TEST_CASE("ap-table round trip") {
  const auto t = delta_ap_table(1000);
  CHECK(t.weight == 12);
  CHECK(t.level == 1);
  CHECK(t.ap(2) == -24);
  std::stringstream ss;
  write_ap_table(ss, t);
  const auto back = parse_ap_table(ss);
  CHECK(back.entries == t.entries);
  CHECK(back.label == t.label);
  CHECK_THROWS_AS(t.ap(1009), Error);
}

TEST_CASE("ap-table rejects malformed input") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_ap_table(in);
  };
  const std::string header = "#ap-table v1 weight=12 level=1 label=x\n";
  CHECK_NOTHROW(parse(header + "2,-24\n3,252\n"));
  CHECK_THROWS_AS(parse("#ap-table v2 weight=12 level=1 label=x\n2,-24\n"), Error);
  CHECK_THROWS_AS(parse(header + "2,-24\n5,4830\n"), Error);   // gap at 3
  CHECK_THROWS_AS(parse(header + "3,252\n2,-24\n"), Error);    // out of order
  CHECK_THROWS_AS(parse(header + "2,-24\n2,-24\n"), Error);    // duplicate
  CHECK_THROWS_AS(parse(header + "2,-24\n4,1\n"), Error);      // not prime
  CHECK_THROWS_AS(parse(header + "2,abc\n"), Error);
  CHECK_THROWS_AS(parse("#ap-table v1 weight=11 level=1 label=x\n2,1\n"), Error);
  CHECK_THROWS_AS(parse("#ap-table v1 weight=12 level=1 colour=x\n2,1\n"), Error);
  try {
    parse(header + "2,-24\n4,1\n");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
  }
}
