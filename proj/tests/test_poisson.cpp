#include "doctest.h"
#include "fixtures.hpp"

using namespace fixtures;

namespace {

BoundaryPoint bp(std::string_view s) { return BoundaryPoint::parse(s); }
Rational q(int p, int d) { return Rational(p, d); }

/// Indicator of the depth-d cylinder with the given prefix on ∂F2.
CylinderFunction indicator(std::string_view prefix) {
  CylinderFunction f(static_cast<unsigned>(prefix.size()), 1, 2, 0.0);
  f.set({1, w(prefix)}, 1.0);
  return f;
}

}  // namespace

TEST_CASE("cylinder function norms and maximizers") {
  CylinderFunction f(2, 1, 2, 0.25);
  f.set({1, w("ab")}, -0.5);
  CHECK(f.norm() == 0.5);
  CHECK(f.maximizing_cylinder() == CylinderKey{1, w("ab")});
  CylinderFunction g(1, 1, 2, -0.75);
  g.set({1, w("a")}, 0.5);
  CHECK(g.norm() == 0.75);
  // The fallback is attained on the first unlisted cylinder in shortlex order.
  CHECK(g.maximizing_cylinder() == CylinderKey{1, w("A")});
  CHECK(f(bp("ab|a")) == -0.5);
  CHECK(f(bp("|b")) == 0.25);
  CHECK_THROWS_AS(f.set({1, w("a")}, 1.0), Error);
  CHECK_THROWS_AS(f.set({2, w("ab")}, 1.0), Error);
}

TEST_CASE("a fully listed function ignores its fallback") {
  CylinderFunction f(1, 1, 2, 9.0);
  for (const char* s : {"a", "A", "b", "B"}) f.set({1, w(s)}, 0.5);
  CHECK(f.norm() == 0.5);
}

TEST_CASE("cylinder function JSON round-trip") {
  CylinderFunction f(2, 2, 3, 0.1);
  f.set({2, w("cb")}, 0.7);
  const auto g = CylinderFunction::from_json(f.to_json());
  CHECK(g.entries() == f.entries());
  CHECK(g.fallback() == f.fallback());
  CHECK(g.depth() == 2);
}

TEST_CASE("poisson transform of a Dirac is evaluation") {
  const auto y = BoundarySpace::free(2);
  const auto f = indicator("ab");
  const auto nu = dirac(bp("b|a"));
  const auto pf = poisson_transform(y, nu, f, 2);
  CHECK(pf.entries.size() == 17);
  for (const auto& [s, v] : pf.entries) CHECK(v == f(act_free(s, bp("b|a"))));
  CHECK(pf.at(w("a")) == 1.0);
}

TEST_CASE("unitality, positivity and the value set of a two-atom indicator") {
  const auto y = BoundarySpace::free(2);
  const auto nu = BoundaryMeasure::from_atoms({{bp("|a"), q(1, 2)}, {bp("|b"), q(1, 2)}});
  const auto one = CylinderFunction::constant(1.0, 1, 1, 2);
  for (const auto& [s, v] : poisson_transform(y, nu, one, 3).entries) CHECK(v == doctest::Approx(1.0));
  const auto f = indicator("a");
  for (const auto& [s, v] : poisson_transform(y, nu, f, 2).entries) {
    CHECK((v == 0.0 || v == 0.5 || v == 1.0));
    CHECK(std::abs(v) <= f.norm());
  }
}

TEST_CASE("poisson transform is linear in f and affine in ν") {
  const auto y = InducedSpace::with_boundary_fiber(index2());
  SamplerParams p;
  p.seed = 3;
  SeededRng rng(12);
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto nu = sample_induced_measure(y, p, k);
    const auto mu = sample_induced_measure(y, p, k + 100);
    const auto f = random_cylinder_function(rng, 2, 2, 3);
    const auto g = random_cylinder_function(rng, 2, 2, 3);
    CylinderFunction sum(2, 2, 3, f.fallback() + g.fallback());
    std::set<CylinderKey> keys;
    for (const auto& [key, v] : f.entries()) keys.insert(key);
    for (const auto& [key, v] : g.entries()) keys.insert(key);
    for (const auto& key : keys) sum.set(key, f.value(key) + g.value(key));
    const PoissonEvaluator<InducedSpace> ev(y, nu, 2);
    const auto pf = ev.transform(f, 2);
    const auto pg = ev.transform(g, 2);
    const auto ps = ev.transform(sum, 2);
    for (std::size_t i = 0; i < ps.entries.size(); ++i) {
      CHECK(ps.entries[i].second == doctest::Approx(pf.entries[i].second + pg.entries[i].second));
    }
    // Mixture ½ν + ½μ.
    std::vector<std::pair<InducedPoint, Rational>> atoms;
    for (const auto& [pt, wt] : nu.atoms()) atoms.emplace_back(pt, wt / 2);
    for (const auto& [pt, wt] : mu.atoms()) atoms.emplace_back(pt, wt / 2);
    const auto mix = InducedMeasure::from_atoms(std::move(atoms));
    const auto pm = poisson_transform(y, mix, f, 2);
    const auto pmu = poisson_transform(y, mu, f, 2);
    for (std::size_t i = 0; i < pm.entries.size(); ++i) {
      CHECK(pm.entries[i].second ==
            doctest::Approx(0.5 * pf.entries[i].second + 0.5 * pmu.entries[i].second));
    }
  }
}

TEST_CASE("isometry defect examples and monotonicity") {
  const auto y = BoundarySpace::free(2);
  const auto xi = bp("ab|a");
  CHECK(isometry_defect(y, dirac(xi), indicator("ab"), 0) == 0.0);
  const auto c = CylinderFunction::constant(0.3, 2, 1, 2);
  CHECK(isometry_defect(y, BoundaryMeasure::from_atoms({{bp("|a"), q(1, 2)}, {bp("|b"), q(1, 2)}}), c, 3) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(isometry_defect(y, dirac(xi), CylinderFunction::constant(0.0, 1, 1, 2), 1), Error);

  const auto yi = InducedSpace::with_boundary_fiber(index2());
  SamplerParams p;
  p.seed = 99;
  SeededRng rng(4);
  for (std::uint64_t k = 0; k < 5; ++k) {
    const auto nu = sample_fiber_measure(yi, 1 + k % 2, p, k);
    const PoissonEvaluator<InducedSpace> ev(yi, nu, 6);
    for (int j = 0; j < 5; ++j) {
      const auto f = random_cylinder_function(rng, 3, 2, 3);
      double previous = 2.0;
      for (unsigned r = 0; r <= 6; ++r) {
        const double d = ev.defect(f, r);
        CHECK(d >= 0.0);
        CHECK(d <= previous + 1e-15);
        previous = d;
      }
    }
  }
}

TEST_CASE("two-atom measure steered by a certificate has small defect") {
  const auto y = InducedSpace::with_boundary_fiber(index2());
  const auto nu = InducedMeasure::from_atoms({{{1, bp("|a")}, q(1, 2)}, {{1, bp("|b")}, q(1, 2)}});
  ContractionOptions o;
  o.strategy = Strategy::PaperSequence;
  o.target_depth = 6;
  const auto out = contract_measure(y, nu, o);
  REQUIRE(out.certificate);
  CylinderFunction f(3, 2, 3, 0.0);
  f.set({2, w("cab")}, 1.0);
  const Word steer = steering_word(y, *out.certificate, f.maximizing_cylinder());
  const Word witness = multiply(steer, out.certificate->composite());
  const auto moved = pushforward_group(y, witness, nu);
  for (const auto& [pt, wt] : moved.atoms()) CHECK(f(pt) == 1.0);
  CHECK(isometry_defect_bound(y, nu, f, witness) == 0.0);
}

TEST_CASE("ball functions and acting balls") {
  const auto y = BoundarySpace::free(2);
  const auto pf = poisson_transform(y, dirac(bp("|a")), indicator("a"), 1);
  CHECK(pf.at(Word{}) == 1.0);
  CHECK(pf.at(w("A")) == 1.0);  // A·a^∞ = a^∞
  CHECK(pf.at(w("b")) == 0.0);
  CHECK_THROWS_AS(pf.at(w("ab")), Error);
  CHECK(pf.max_abs() == 1.0);
  const auto j = pf.to_json();
  CHECK(j.at("radius") == 1);
  CHECK(j.at("entries").size() == 5);
  CHECK(j.at("entries")[0].at("word") == "");
  const auto yi = InducedSpace::with_boundary_fiber(index2());
  CHECK(acting_ball(yi, 2).size() == 17);
}
