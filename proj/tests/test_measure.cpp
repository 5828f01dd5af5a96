#include "doctest.h"
#include "fixtures.hpp"

using namespace fixtures;

namespace {

BoundaryPoint bp(std::string_view s) { return BoundaryPoint::parse(s); }
Rational q(int p, int d) { return Rational(p, d); }

}  // namespace

TEST_CASE("construction validates mass and merges atoms") {
  const auto m = BoundaryMeasure::from_atoms({{bp("|a"), q(1, 4)}, {bp("|b"), q(1, 2)}, {bp("|a"), q(1, 4)}});
  CHECK(m.size() == 2);
  CHECK(m.total_mass() == 1);
  CHECK(m.atoms().front().second == q(1, 2));
  CHECK_THROWS_AS(BoundaryMeasure::from_atoms({{bp("|a"), q(1, 2)}}), Error);
  CHECK_THROWS_AS(BoundaryMeasure::from_atoms({}), Error);
  CHECK_THROWS_AS(BoundaryMeasure::from_atoms({{bp("|a"), q(3, 2)}, {bp("|b"), q(-1, 2)}}), Error);
}

TEST_CASE("double weights use the mass tolerance") {
  using M = AtomicMeasure<std::uint32_t, double>;
  CHECK_NOTHROW(M::from_atoms({{1, 0.1}, {2, 0.2}, {3, 0.7}}));
  CHECK_NOTHROW(M::from_atoms({{1, 0.5 + 5e-13}, {2, 0.5}}));
  CHECK_THROWS_AS(M::from_atoms({{1, 0.5 + 1e-9}, {2, 0.5}}), Error);
}

TEST_CASE("dirac and support") {
  const auto d = dirac(bp("|a"));
  CHECK(d.is_dirac());
  CHECK(d.support() == std::vector<BoundaryPoint>{bp("|a")});
  const auto y = BoundarySpace::free(2);
  CHECK(pushforward_group(y, w("b"), d) == dirac(act_free(w("b"), bp("|a"))));
}

TEST_CASE("pushforward examples") {
  const auto y = BoundarySpace::free(2);
  const auto nu = BoundaryMeasure::from_atoms({{bp("|b"), q(1, 2)}, {bp("|a"), q(1, 2)}});
  CHECK(pushforward_group(y, Word{}, nu) == nu);
  const auto moved = pushforward_group(y, w("a"), nu);
  CHECK(moved == BoundaryMeasure::from_atoms({{bp("a|b"), q(1, 2)}, {bp("|a"), q(1, 2)}}));
  CHECK(moved.total_mass() == 1);
}

TEST_CASE("pushforward is an action on measures") {
  const auto y = InducedSpace::with_boundary_fiber(index3());
  SamplerParams p;
  p.seed = 31;
  SeededRng rng(1);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto nu = sample_induced_measure(y, p, k);
    const Word g1 = random_reduced_word(rng, 2, 5);
    const Word g2 = random_reduced_word(rng, 2, 5);
    CHECK(pushforward_group(y, multiply(g1, g2), nu) ==
          pushforward_group(y, g1, pushforward_group(y, g2, nu)));
    CHECK(pushforward_group(y, g1, nu).weight_multiset() == nu.weight_multiset());
  }
}

TEST_CASE("pushforward_map and fiber support") {
  const auto y = InducedSpace::with_boundary_fiber(index2());
  const InducedProjection phi(y);
  const auto fiber2 = InducedMeasure::from_atoms({{{2, bp("|a")}, q(1, 3)}, {{2, bp("|b")}, q(2, 3)}});
  CHECK(pushforward_map(phi, fiber2) == dirac<FiniteSpace::Point>(2));
  CHECK(is_fiber_supported(phi, fiber2) == 2u);
  const auto split = InducedMeasure::from_atoms({{{1, bp("|a")}, q(1, 2)}, {{2, bp("|b")}, q(1, 2)}});
  CHECK(pushforward_map(phi, split) == FiniteMeasure::from_atoms({{1, q(1, 2)}, {2, q(1, 2)}}));
  CHECK_FALSE(is_fiber_supported(phi, split).has_value());
  CHECK(is_fiber_supported(phi, dirac(InducedPoint{1, bp("|c")})) == 1u);
}

TEST_CASE("equivariance square commutes on sampled measures") {
  const auto y = InducedSpace::with_boundary_fiber(index3());
  const InducedProjection phi(y);
  SamplerParams p;
  p.seed = 8;
  SeededRng rng(77);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto nu = sample_induced_measure(y, p, k);
    const Word g = random_reduced_word(rng, 2, 6);
    CHECK(pushforward_map(phi, pushforward_group(y, g, nu)) ==
          pushforward_group(phi.target(), g, pushforward_map(phi, nu)));
  }
}

TEST_CASE("rational serialization") {
  CHECK(to_string(q(2, 4)) == "1/2");
  CHECK(to_string(Rational(1)) == "1/1");
  CHECK(parse_rational("3/9") == q(1, 3));
  CHECK(parse_rational("2") == 2);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x/2"), Error);
}

TEST_CASE("measure JSON round-trip") {
  const auto nu = BoundaryMeasure::from_atoms({{bp("ab|ba"), q(1, 3)}, {bp("|a"), q(2, 3)}});
  CHECK(boundary_measure_from_json(measure_to_json(nu)) == nu);
  const auto mu = InducedMeasure::from_atoms({{{2, bp("|c")}, q(1, 2)}, {{1, bp("A|b")}, q(1, 2)}});
  CHECK(induced_measure_from_json(measure_to_json(mu)) == mu);
  const auto f = FiniteMeasure::from_atoms({{1, q(1, 5)}, {3, q(4, 5)}});
  CHECK(finite_measure_from_json(measure_to_json(f)) == f);
  CHECK(measure_to_json(f)[0]["weight"] == "1/5");
}
