#include "doctest.h"
#include "fixtures.hpp"

using namespace fixtures;

namespace {

BoundaryPoint bp(std::string_view s) { return BoundaryPoint::parse(s); }

}  // namespace

TEST_CASE("normal form") {
  const auto p = BoundaryPoint::make(w("ab"), w("ab"));
  CHECK(p.prefix().empty());
  CHECK(p.period() == w("ab"));
  const auto q = BoundaryPoint::make(w("ba"), w("abab"));
  CHECK(q.prefix() == w("ba"));
  CHECK(q.period() == w("ab"));
  // b · (ab)^∞ = (ba)^∞.
  const auto q2 = BoundaryPoint::make(w("b"), w("abab"));
  CHECK(q2.prefix().empty());
  CHECK(q2.period() == w("ba"));
  // Seam cancellation: aB · (ba)^∞ = a (ab)^∞.
  const auto r = BoundaryPoint::make(w("aB"), w("ba"));
  CHECK(r.prefix() == w("a"));
  CHECK(r.period() == w("ab"));
  CHECK(to_string(r.expand(5)) == expansion_oracle("aB", "ba", 5));
  CHECK_THROWS_AS(BoundaryPoint::make(Word{}, Word{}), Error);
  CHECK_THROWS_AS(BoundaryPoint::make(Word{}, w("abA")), Error);
}

TEST_CASE("normal forms are unique and idempotent on random inputs") {
  SeededRng rng(21);
  for (int k = 0; k < 2000; ++k) {
    const Word prefix = random_reduced_word(rng, 2, 5);
    Word period;
    while (period.empty() || !period.cyclically_reduced()) period = random_reduced_word(rng, 2, 4);
    const auto p = BoundaryPoint::make(prefix, period);
    CHECK(BoundaryPoint::make(p.prefix(), p.period()) == p);
    CHECK(to_string(p.expand(20)) == expansion_oracle(to_string(prefix), to_string(period), 20));
    // A rotated and unrolled presentation of the same point normalizes identically.
    const Word unrolled = multiply(prefix, period);
    const auto q = BoundaryPoint::make(unrolled, power(period, 2));
    CHECK(q == p);
  }
}

TEST_CASE("act_free examples") {
  CHECK(act_free(Word{}, bp("|b")) == bp("|b"));
  const auto ab = act_free(w("a"), bp("|b"));
  CHECK(ab.prefix() == w("a"));
  CHECK(ab.period() == w("b"));
  CHECK(act_free(w("A"), bp("a|b")) == bp("|b"));
  CHECK(act_free(w("AAA"), bp("|a")) == bp("|a"));
}

TEST_CASE("act_free is an action and matches the expansion oracle") {
  SeededRng rng(4);
  for (int k = 0; k < 2000; ++k) {
    const auto xi = random_boundary_point(rng, 2, 6);
    const Word g = random_reduced_word(rng, 2, 8);
    const Word h = random_reduced_word(rng, 2, 8);
    CHECK(act_free(multiply(g, h), xi) == act_free(g, act_free(h, xi)));
    const std::string expected =
        naive_reduce(to_string(g) + to_string(xi.expand(60))).substr(0, 10);
    CHECK(to_string(act_free(g, xi).expand(10)) == expected);
  }
}

TEST_CASE("common_prefix_depth examples") {
  CHECK_FALSE(common_prefix_depth(bp("|a"), bp("|a")).has_value());
  CHECK(common_prefix_depth(bp("|a"), bp("aa|b")) == 2u);
  CHECK(common_prefix_depth(bp("|b"), bp("|a")) == 0u);
  CHECK(common_prefix_depth(bp("ab|ab"), bp("|ab")) == std::nullopt);
  CHECK(common_prefix_depth(bp("|ab"), bp("|abaB")) == 3u);
}

TEST_CASE("common_prefix_depth agrees with expansions") {
  SeededRng rng(8);
  for (int k = 0; k < 2000; ++k) {
    const auto x = random_boundary_point(rng, 2, 4);
    const auto y = random_boundary_point(rng, 2, 4);
    const auto d = common_prefix_depth(x, y);
    const Word ex = x.expand(80);
    const Word ey = y.expand(80);
    std::size_t n = 0;
    while (n < 80 && ex[n] == ey[n]) ++n;
    if (x == y) {
      CHECK_FALSE(d.has_value());
      CHECK(n == 80);
    } else {
      REQUIRE(d.has_value());
      CHECK(*d == n);
    }
  }
}

TEST_CASE("serialization") {
  CHECK(bp("ab|ba").to_string() == BoundaryPoint::make(w("ab"), w("ba")).to_string());
  CHECK(bp("|a").to_string() == "|a");
  CHECK(BoundaryPoint::parse(bp("aB|bab").to_string()) == bp("aB|bab"));
  CHECK_THROWS_AS(BoundaryPoint::parse("ab"), Error);
}

TEST_CASE("cylinder counts") {
  CHECK(cylinder_count(2, 0) == 1);
  CHECK(cylinder_count(2, 1) == 4);
  CHECK(cylinder_count(3, 1) == 6);
  CHECK(cylinder_count(2, 3) == 36);
}
