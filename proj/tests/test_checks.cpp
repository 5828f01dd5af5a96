#include "doctest.h"
#include "fixtures.hpp"

using namespace fixtures;

namespace {

BoundaryPoint bp(std::string_view s) { return BoundaryPoint::parse(s); }
Rational q(int p, int d) { return Rational(p, d); }

ProximalityParams small_params(std::size_t samples, std::uint64_t seed) {
  ProximalityParams p;
  p.sampler.samples = samples;
  p.sampler.seed = seed;
  return p;
}

/// Brute-force contractibility oracle: closes the set of measures (as sorted
/// point/weight vectors) under the generators until a Dirac shows up.
bool brute_contractible(const FiniteSpace& x, const std::vector<std::pair<std::uint32_t, Rational>>& atoms) {
  using Key = std::vector<std::pair<std::uint32_t, Rational>>;
  auto normalize = [](Key k) {
    std::sort(k.begin(), k.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    return k;
  };
  std::set<Key> seen{normalize(atoms)};
  std::vector<Key> frontier{normalize(atoms)};
  const auto& g = x.acting_group();
  while (!frontier.empty()) {
    Key cur = frontier.back();
    frontier.pop_back();
    if (cur.size() == 1) return true;
    for (std::uint16_t k = 1; k <= g.rank(); ++k) {
      Key next;
      for (const auto& [p, wt] : cur) next.emplace_back(x.act(Word::generator(k), p), wt);
      next = normalize(next);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return false;
}

}  // namespace

TEST_CASE("verdict combination") {
  CHECK(combine(Verdict::Pass, Verdict::Pass) == Verdict::Pass);
  CHECK(combine(Verdict::Pass, Verdict::Inconclusive) == Verdict::Inconclusive);
  CHECK(combine(Verdict::Fail, Verdict::Inconclusive) == Verdict::Fail);
  CHECK(combine(Verdict::Inconclusive, Verdict::Fail) == Verdict::Fail);
  for (auto v : {Verdict::Pass, Verdict::Fail, Verdict::Inconclusive}) CHECK(parse_verdict(to_string(v)) == v);
  CHECK(to_string(Verdict::Inconclusive) == "INCONCLUSIVE");
}

TEST_CASE("check report JSON round-trip") {
  CheckReport r;
  r.check = "demo";
  r.verdict = Verdict::Fail;
  r.seed = 42;
  r.evidence.push_back({{"x", 1}});
  r.message = "m";
  const auto back = CheckReport::from_json(r.to_json());
  CHECK(back.to_json() == r.to_json());
  CHECK(back.seed == 42u);
}

TEST_CASE("finite minimality") {
  const auto x = FiniteSpace::from_cosets(enumerate_cosets(index3(), 100));
  CHECK(check_minimal_finite(x).verdict == Verdict::Pass);
  const auto u = FiniteSpace::disjoint_union(x, x);
  const auto r = check_minimal_finite(u);
  CHECK(r.verdict == Verdict::Fail);
  CHECK(r.evidence[0].at("invariant_subset").size() == 3);
}

TEST_CASE("symbolic minimality on the boundary and the induced space") {
  MinimalityParams p;
  p.depth = 1;
  p.radius = 4;
  p.samples = 5;
  p.seed = 3;
  CHECK(check_minimal_symbolic(BoundarySpace::free(2), p).verdict == Verdict::Pass);
  const auto y = InducedSpace::with_boundary_fiber(index2());
  const auto r = check_minimal_symbolic(y, p);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.evidence.size() == 5);
  // Too small a radius leaves cylinders uncovered: INCONCLUSIVE, never FAIL.
  p.radius = 0;
  p.depth = 2;
  CHECK(check_minimal_symbolic(y, p).verdict == Verdict::Inconclusive);
}

TEST_CASE("minimality starts rotate through cosets") {
  const auto y = InducedSpace::with_boundary_fiber(index3());
  MinimalityParams p;
  p.seed = 11;
  for (std::uint64_t k = 0; k < 6; ++k) CHECK(minimality_start(y, p, k).coset == 1 + k % 3);
  CHECK(minimality_start(y, p, 4) == minimality_start(y, p, 4));
}

TEST_CASE("finite contractibility matches a brute-force oracle") {
  const auto x = FiniteSpace::natural(s3());
  CHECK(finite_contractible(x, dirac<FiniteSpace::Point>(2)).verdict == Verdict::Pass);
  const auto uniform = FiniteMeasure::uniform({1, 2, 3});
  CHECK(finite_contractible(x, uniform).verdict == Verdict::Fail);
  const auto orbit = enumerate_measure_orbit(x, FiniteMeasure::from_atoms({{1, q(1, 3)}, {2, q(2, 3)}}));
  CHECK_FALSE(orbit.contractible);
  CHECK(orbit.orbit.size() == 6);

  SeededRng rng(19);
  const auto u = FiniteSpace::disjoint_union(FiniteSpace::natural(z4()), FiniteSpace::natural(z4()));
  for (int k = 0; k < 50; ++k) {
    const auto n = static_cast<std::uint32_t>(u.size());
    const std::size_t count = rng.between(1, 3);
    std::set<std::uint32_t> points;
    while (points.size() < count) points.insert(static_cast<std::uint32_t>(rng.between(1, n)));
    const auto weights = random_weights(rng, count, 8);
    std::vector<std::pair<std::uint32_t, Rational>> atoms;
    std::size_t i = 0;
    for (auto p : points) atoms.emplace_back(p, weights[i++]);
    const auto nu = FiniteMeasure::from_atoms(atoms);
    CHECK(enumerate_measure_orbit(u, nu).contractible == brute_contractible(u, atoms));
  }
}

TEST_CASE("strong proximality on induced boundary spaces") {
  for (const auto& h : {index2(), index3()}) {
    const auto y = InducedSpace::with_boundary_fiber(h);
    const auto r = check_sp_extension(InducedProjection(y), small_params(12, 4));
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.evidence.size() == 12);
    for (const auto& e : r.evidence) {
      const auto nu = induced_measure_from_json(e.at("measure"));
      const auto cert = ContractionCertificate::from_json(e.at("certificate"));
      CHECK(verify_certificate(y, nu, cert));
    }
  }
}

TEST_CASE("strong proximality results do not depend on worker count") {
  const auto y = InducedSpace::with_boundary_fiber(index3());
  auto p = small_params(9, 17);
  const auto one = check_sp_extension(InducedProjection(y), p).to_json();
  p.workers = 4;
  CHECK(check_sp_extension(InducedProjection(y), p).to_json() == one);
}

TEST_CASE("finite extensions: only singleton fibers are strongly proximal") {
  const auto x = FiniteSpace::from_cosets(enumerate_cosets(s3_transposition(), 100));
  const auto p = small_params(10, 1);
  CHECK(check_sp_extension(FiniteExtension::identity(x), p).verdict == Verdict::Pass);
  CHECK(check_sp_extension(FiniteExtension::product(x, 2), p).verdict == Verdict::Fail);
  CHECK(check_sp_extension(FiniteExtension::regular(x), p).verdict == Verdict::Fail);
}

TEST_CASE("amenable size check for S3 and Z/4") {
  const auto p = small_params(10, 2);
  const auto x3 = FiniteSpace::from_cosets(enumerate_cosets(s3_transposition(), 100));
  const auto r3 = amenable_size_check(
      x3, {FiniteExtension::identity(x3), FiniteExtension::product(x3, 2), FiniteExtension::regular(x3)}, p);
  CHECK(r3.verdict == Verdict::Pass);
  CHECK(r3.evidence[0].at("verdict") == "PASS");
  CHECK(r3.evidence[1].at("verdict") == "FAIL");
  CHECK(r3.evidence[1].contains("counterexample"));
  const auto x4 = FiniteSpace::natural(z4());
  const auto r4 = amenable_size_check(
      x4, {FiniteExtension::identity(x4), FiniteExtension::product(x4, 3)}, p);
  CHECK(r4.verdict == Verdict::Pass);
  CHECK_THROWS_AS(amenable_size_check(FiniteSpace::from_cosets(enumerate_cosets(index2(), 100)), {}, p), Error);
}

TEST_CASE("pushforward criterion check") {
  const auto y = InducedSpace::with_boundary_fiber(index2());
  MinimalityParams m;
  m.samples = 3;
  const auto r = check_theorem_a_34(InducedProjection(y), small_params(10, 6), m);
  CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("fiber decomposition") {
  const auto y = InducedSpace::with_boundary_fiber(index3());
  MinimalityParams m;
  m.radius = 3;
  m.samples = 2;
  const auto d = decompose_fibers(InducedProjection(y), m);
  CHECK(d.report.verdict == Verdict::Pass);
  REQUIRE(d.fibers.size() == 3);
  const auto x = FiniteSpace::from_cosets(y.table());
  for (const auto& f : d.fibers) CHECK(x.act(f.transport, 1) == f.base);

  const auto base = FiniteSpace::from_cosets(enumerate_cosets(s3_transposition(), 100));
  const auto fd = decompose_fibers(FiniteExtension::regular(base));
  CHECK(fd.report.verdict == Verdict::Pass);
  CHECK(fd.fibers.size() == 3);
}

TEST_CASE("isometry proxy") {
  const auto y = InducedSpace::with_boundary_fiber(index2());
  IsometryParams p;
  p.sampler.samples = 4;
  p.sampler.seed = 9;
  p.functions = 5;
  const auto r = check_isometry_proxy(y, p);
  CHECK(r.verdict == Verdict::Pass);
  for (const auto& e : r.evidence) {
    for (const auto& f : e.at("functions")) {
      CHECK(f.at("defect_bound").get<double>() <= 0.05 * f.at("norm").get<double>());
      CHECK(f.at("monotone").get<bool>());
    }
  }
}

TEST_CASE("random cylinder functions are nonzero and respect the depth") {
  SeededRng rng(2);
  for (int k = 0; k < 100; ++k) {
    const auto depth = static_cast<unsigned>(rng.between(1, 6));
    const auto f = random_cylinder_function(rng, depth, 2, 3);
    CHECK(f.depth() == depth);
    CHECK(f.norm() > 0.0);
    for (const auto& [key, v] : f.entries()) CHECK(key.prefix.size() == depth);
  }
}

TEST_CASE("measure JSON rejects malformed input") {
  CHECK_THROWS_AS(boundary_measure_from_json(nlohmann::json::parse(R"([{"point": "|a"}])")), std::exception);
  CHECK_THROWS_AS(boundary_measure_from_json(nlohmann::json::parse(R"([{"point": "|a", "weight": "1/2"}])")),
                  Error);
  CHECK(boundary_measure_from_json(nlohmann::json::parse(R"([{"point": "|a", "weight": "1/1"}])")) ==
        dirac(bp("|a")));
}
