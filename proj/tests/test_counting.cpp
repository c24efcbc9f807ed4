#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "favlab/counting.hpp"
#include "favlab/error.hpp"
#include "favlab/ifs.hpp"
#include "oracles.hpp"

using namespace favlab;

namespace {

std::uint64_t brute_avoid(std::size_t m, std::size_t s, std::size_t blocks) {
  const std::size_t len = s * blocks;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= m;
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t x = code;
    std::vector<std::size_t> w(len);
    for (std::size_t i = 0; i < len; ++i) {
      w[i] = x % m;
      x /= m;
    }
    bool hit = false;
    for (std::size_t b = 0; b < blocks; ++b) {
      bool same = true;
      for (std::size_t j = 0; j < s; ++j) same = same && w[b * s + j] == (b + j) % m;
      hit = hit || same;
    }
    if (!hit) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("avoidance count small case") {
  const auto c = avoidance_count(2, 2, 2);
  CHECK(c.exact == 9);
  CHECK(c.bound == 9);
  REQUIRE(c.brute.has_value());
  CHECK(*c.brute == 9);
}

TEST_CASE("avoidance DP against an independent enumeration") {
  for (auto [m, s, b] : std::vector<std::array<std::size_t, 3>>{{2, 2, 8}, {3, 2, 4}, {2, 3, 5}, {4, 1, 6}, {2, 1, 12}}) {
    const auto c = avoidance_count(m, s, b);
    CHECK(c.exact == brute_avoid(m, s, b));
    REQUIRE(c.brute.has_value());
    CHECK(*c.brute == c.exact);
    CHECK(c.exact <= c.bound);
  }
  CHECK(avoidance_count(2, 2, 8).exact == 6561);
  // beyond the enumeration cap only the DP runs
  const auto big = avoidance_count(3, 5, 40);
  CHECK_FALSE(big.brute.has_value());
  CHECK(big.exact == pow(BigInt(242), 40));
}

TEST_CASE("relaxation m^L (1 - m^-s)^(m^s s) <= m^L e^-s") {
  for (std::size_t m = 2; m <= 5; ++m) {
    for (std::size_t s = 1; s <= 4; ++s) {
      std::size_t ms = 1;
      for (std::size_t i = 0; i < s; ++i) ms *= m;
      const auto c = avoidance_count(m, s, std::min<std::size_t>(ms, 4096 / s));
      CHECK(c.relaxation_holds);
      CHECK(c.log_relaxed <= c.log_e_bound);
    }
  }
}

TEST_CASE("avoidance range errors") {
  CHECK_THROWS_AS(avoidance_count(1, 2, 2), Error);
  CHECK_THROWS_AS(avoidance_count(2, 0, 2), Error);
  CHECK_THROWS_AS(avoidance_count(2, 2, 0), Error);
  CHECK_THROWS_AS(avoidance_count(2, 100, 41), Error);
}

TEST_CASE("h2 length bound along the coupling blocks = m^s s") {
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t s = 1; s <= 4; ++s) {
      std::size_t ms = 1;
      for (std::size_t i = 0; i < s; ++i) ms *= m;
      const auto h = h2_length_bound(m, s, ms * s, 1.0 / static_cast<double>(m));
      CHECK(h.within);
      CHECK(h.value == doctest::Approx(3 * std::pow(1 - 1.0 / static_cast<double>(ms), double(ms * s))));
      CHECK(h.limit == doctest::Approx(3 * std::exp(-double(s))));
    }
  }
  CHECK_THROWS_AS(h2_length_bound(3, 2, 4, 0.5), Error);
}

TEST_CASE("removal recursion on a two-map toy matches per-sequence simulation") {
  const Ifs ifs = oracle::golden_toy();
  const double phi = 0.0, eps = 2.5;
  const std::size_t steps = 4;
  const auto trace = removal_recursion(ifs, Word{1}, phi, eps, steps);
  REQUIRE(trace.masses.size() == steps + 1);
  CHECK(trace.steering == Word{0});
  CHECK(trace.c > 0.0);
  REQUIRE(trace.depth <= 22);

  for (std::size_t i = 0; i < steps; ++i) {
    CHECK(trace.masses[i + 1] == doctest::Approx(trace.masses[i] - trace.removed[i]).epsilon(1e-12));
    CHECK(trace.masses[i + 1] < (1 - trace.c) * trace.masses[i]);
  }
  CHECK(prefix_free(trace.survivors));

  // every sequence of length depth, weight 2^-depth
  const std::size_t depth = trace.depth;
  std::vector<double> alive(steps + 1, 0.0);
  const double weight = std::ldexp(1.0, -static_cast<int>(depth));
  std::vector<int> x(depth + 1);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << depth); ++code) {
    for (std::size_t i = 0; i < depth; ++i) x[i] = static_cast<int>((code >> i) & 1);
    const std::size_t dead = oracle::golden_removal_step(x, phi, eps, steps);
    for (std::size_t i = 0; i <= std::min(dead, steps); ++i) alive[i] += weight;
  }
  for (std::size_t i = 0; i <= steps; ++i) CHECK(alive[i] == doctest::Approx(trace.masses[i]).epsilon(1e-12));
}

TEST_CASE("removal recursion reports the enumeration cap") {
  try {
    removal_recursion(oracle::golden_toy(), Word{1}, 0.0, 2.5, 6, 4);
    FAIL("expected EnumerationCap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::enumeration_cap);
  }
}
