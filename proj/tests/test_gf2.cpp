#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "invdiam/gf2.hpp"

using namespace invdiam;

namespace {

Gf2Vector v(const char* s) { return Gf2Vector::parse(s); }

// All members of span(vs), by XOR over every subset.
std::set<std::uint32_t> span_of(const std::vector<Gf2Vector>& vs) {
  std::set<std::uint32_t> out;
  for (std::uint32_t mask = 0; mask < (1u << vs.size()); ++mask) {
    std::uint32_t x = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if ((mask >> i) & 1u) x ^= vs[i].bits();
    }
    out.insert(x);
  }
  return out;
}

int log2_size(std::size_t s) {
  int r = 0;
  while ((std::size_t{1} << r) < s) ++r;
  return r;
}

}  // namespace

TEST_CASE("dot examples") {
  CHECK_FALSE(dot(v("101"), v("111")));
  CHECK(dot(v("1"), v("1")));
  CHECK(dot(v("110"), v("011")));
  CHECK_THROWS_AS(dot(v("10"), v("100")), std::invalid_argument);
}

TEST_CASE("parity examples") {
  CHECK(parity(v("000")) == Parity::even);
  CHECK(parity(v("111")) == Parity::odd);
  CHECK(parity(v("110")) == Parity::even);
}

TEST_CASE("text form puts coordinate 0 first") {
  const auto a = v("110");
  CHECK(a.dim() == 3);
  CHECK(a[0]);
  CHECK(a[1]);
  CHECK_FALSE(a[2]);
  CHECK(a.bits() == 0b011u);
  CHECK(a.to_string() == "110");
  CHECK(Gf2Vector::parse("").dim() == 0);
  CHECK_THROWS_AS(Gf2Vector::parse("102"), std::invalid_argument);
  CHECK_THROWS_AS(Gf2Vector(2, 0b100), std::invalid_argument);
  CHECK(a.padded().to_string() == "1100");
}

TEST_CASE("rank examples") {
  CHECK(rank(Gf2Matrix::from_strings(3, {"100", "010", "001"})) == 3);
  CHECK(rank(Gf2Matrix::from_strings(3, {"110", "011", "101"})) == 2);
  CHECK(rank(Gf2Matrix(3)) == 0);
}

TEST_CASE("solve_linear examples") {
  SECTION("identity") {
    const auto s = solve_linear(Gf2Matrix::from_strings(3, {"100", "010", "001"}), {true, false, true});
    REQUIRE(s);
    CHECK(s->particular.to_string() == "101");
    CHECK(s->nullspace.empty());
  }
  SECTION("single row 11") {
    const auto s = solve_linear(Gf2Matrix::from_strings(2, {"11"}), {false});
    REQUIRE(s);
    std::set<std::string> members;
    for (std::uint64_t i = 0; i < s->size(); ++i) members.insert(s->member(i).to_string());
    CHECK(members == std::set<std::string>{"00", "11"});
  }
  SECTION("contradictory rows") {
    CHECK_FALSE(solve_linear(Gf2Matrix::from_strings(2, {"10", "10"}), {false, true}));
  }
  SECTION("rhs length mismatch") {
    CHECK_THROWS_AS(solve_linear(Gf2Matrix::from_strings(2, {"10"}), {}), std::invalid_argument);
  }
}

TEST_CASE("is_independent examples") {
  const std::vector<Gf2Vector> a{v("100"), v("010")};
  const std::vector<Gf2Vector> b{v("110"), v("011"), v("101")};
  CHECK(is_independent(a));
  CHECK_FALSE(is_independent(b));
  CHECK(is_independent(std::vector<Gf2Vector>{}));
}

TEST_CASE("dot is symmetric and bilinear, exhaustively for dim <= 4") {
  for (int d = 0; d <= 4; ++d) {
    const std::uint32_t n = 1u << d;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < n; ++b) {
        const Gf2Vector x(d, a), y(d, b);
        REQUIRE(dot(x, y) == dot(y, x));
        for (std::uint32_t c = 0; c < n; ++c) {
          const Gf2Vector z(d, c);
          REQUIRE(dot(x + y, z) == (dot(x, z) != dot(y, z)));
        }
      }
    }
  }
}

TEST_CASE("rank bounds and span stability, randomized") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 10);
    const std::size_t rows = rng() % 12;
    std::vector<Gf2Vector> rs;
    for (std::size_t i = 0; i < rows; ++i) rs.emplace_back(d, static_cast<std::uint32_t>(rng() & ((1u << d) - 1)));
    const int r = rank(Gf2Matrix(d, rs));
    REQUIRE(r <= std::min<int>(static_cast<int>(rows), d));
    // Independent oracle: |span| = 2^rank.
    if (rows <= 12) REQUIRE(log2_size(span_of(rs).size()) == r);
    if (!rs.empty()) {
      Gf2Vector combo = Gf2Vector::zero(d);
      for (const auto& x : rs) {
        if (rng() & 1u) combo += x;
      }
      auto more = rs;
      more.push_back(combo);
      REQUIRE(rank(Gf2Matrix(d, more)) == r);
    }
  }
}

TEST_CASE("solve_linear matches exhaustive enumeration on random systems") {
  std::mt19937_64 rng(7);
  int consistent = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 8);
    const std::size_t rows = rng() % 10;
    std::vector<Gf2Vector> rs;
    std::vector<bool> rhs;
    for (std::size_t i = 0; i < rows; ++i) {
      rs.emplace_back(d, static_cast<std::uint32_t>(rng() & ((1u << d) - 1)));
      rhs.push_back((rng() & 1u) != 0);
    }
    std::set<std::uint32_t> truth;
    for (std::uint32_t x = 0; x < (1u << d); ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < rows && ok; ++i) ok = dot(rs[i], Gf2Vector(d, x)) == rhs[i];
      if (ok) truth.insert(x);
    }
    const auto s = solve_linear(Gf2Matrix(d, rs), rhs);
    if (truth.empty()) {
      REQUIRE_FALSE(s);
      continue;
    }
    ++consistent;
    REQUIRE(s);
    std::set<std::uint32_t> got;
    for (std::uint64_t i = 0; i < s->size(); ++i) got.insert(s->member(i).bits());
    REQUIRE(got.size() == s->size());
    REQUIRE(got == truth);
  }
  CHECK(consistent > 100);
}

TEST_CASE("radical dimension agrees with a span-based oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 6);
    const std::size_t count = rng() % 6;
    std::vector<Gf2Vector> vs;
    for (std::size_t i = 0; i < count; ++i) vs.emplace_back(d, static_cast<std::uint32_t>(rng() & ((1u << d) - 1)));
    const auto sp = span_of(vs);
    std::size_t radical = 0;
    for (std::uint32_t x : sp) {
      bool orth = true;
      for (std::uint32_t y : sp) orth = orth && !dot_bits(x, y);
      if (orth) ++radical;
    }
    REQUIRE(radical_dimension(vs) == log2_size(radical));
  }
}
