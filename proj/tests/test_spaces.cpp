#include "doctest.h"
#include "fixtures.hpp"

using namespace fixtures;

namespace {

BoundaryPoint bp(std::string_view s) { return BoundaryPoint::parse(s); }

}  // namespace

TEST_CASE("finite coset space action") {
  const auto x = FiniteSpace::from_cosets(enumerate_cosets(index2(), 100));
  CHECK(act_finite(x, Word{}, 1) == 1);
  CHECK(act_finite(x, w("a"), 1) == 2);
  CHECK(act_finite(x, w("aa"), 1) == 1);
  CHECK(act_finite(x, w("b"), 2) == 2);
}

TEST_CASE("natural action and disjoint unions") {
  const auto n = FiniteSpace::natural(s3());
  CHECK(n.size() == 3);
  CHECK(n.act(w("a"), 1) == 2);
  CHECK(n.act(w("b"), 3) == 1);
  const auto u = FiniteSpace::disjoint_union(n, n);
  CHECK(u.size() == 6);
  CHECK(u.act(w("a"), 4) == 5);
  CHECK(u.orbit(1).size() == 3);
}

TEST_CASE("finite space validation") {
  CHECK_THROWS_AS(FiniteSpace(s3(), {{1, 2, 3}}), Error);
  CHECK_THROWS_AS(FiniteSpace(s3(), {{1, 1, 3}, {2, 3, 1}}), Error);
}

TEST_CASE("boundary space acting through the subgroup") {
  const auto table = std::make_shared<const CosetTable>(enumerate_cosets(index2(), 100));
  const auto basis = std::make_shared<const SchreierBasis>(schreier_basis(*table));
  const auto y = BoundarySpace::subgroup(table, basis);
  CHECK(y.rank() == 3);
  CHECK(y.acts_through_subgroup());
  // aa is the second basis letter.
  CHECK(y.to_fiber_word(w("aa")) == w("b"));
  CHECK(y.act(w("aa"), bp("|a")) == act_free(w("b"), bp("|a")));
  CHECK_THROWS_AS(y.act(w("a"), bp("|a")), NotInSubgroup);
  CHECK(y.act(Word{}, bp("ab|c")) == bp("ab|c"));
}

TEST_CASE("induced action examples on the index-2 fixture") {
  const auto y = InducedSpace::with_boundary_fiber(index2());
  const InducedPoint p1{1, bp("|c")};
  const InducedPoint p2{2, bp("|c")};
  CHECK(act_induced(y, Word{}, p1) == p1);
  CHECK(act_induced(y, w("a"), p1) == p2);
  // α(a, 2) = a^{-2}, so the fiber moves by a^2, the basis letter b.
  const InducedPoint moved = act_induced(y, w("a"), p2);
  CHECK(moved.coset == 1);
  CHECK(std::get<BoundaryPoint>(moved.fiber) == act_free(w("b"), bp("|c")));
}

TEST_CASE("induced action axioms on 1000 sampled triples") {
  for (const auto& h : {index2(), index3(), index1()}) {
    const auto y = InducedSpace::with_boundary_fiber(h);
    InducedProjection phi(y);
    SeededRng rng(13);
    for (int k = 0; k < 1000; ++k) {
      const Word g1 = random_reduced_word(rng, 2, 6);
      const Word g2 = random_reduced_word(rng, 2, 6);
      const InducedPoint p{static_cast<Coset>(rng.between(1, y.index())),
                           random_boundary_point(rng, y.fiber_rank(), 6)};
      CHECK(y.act(Word{}, p) == p);
      CHECK(y.act(multiply(g1, g2), p) == y.act(g1, y.act(g2, p)));
      CHECK(phi.apply(y.act(g1, p)) == phi.target().act(g1, phi.apply(p)));
    }
  }
}

TEST_CASE("fiber transport and Λ_i-invariance") {
  const auto h = index3();
  const auto y = InducedSpace::with_boundary_fiber(h);
  const auto& t = y.table();
  SeededRng rng(17);
  for (int k = 0; k < 50; ++k) {
    const InducedPoint p{1, random_boundary_point(rng, y.fiber_rank(), 6)};
    for (Coset i = 1; i <= t.index(); ++i) {
      CHECK(y.act(t.representative(i), p).coset == i);
      const auto lambda_i = conjugate_subgroup(h, t.representative(i));
      const InducedPoint pi = y.act(t.representative(i), p);
      for (const auto& g : lambda_i.generators) CHECK(y.act(g, pi).coset == i);
    }
  }
}

TEST_CASE("finite-fiber induced spaces flatten to equivariant extensions") {
  // Λ = <(12)> in S3 acting on a 2-point fiber through its natural sign action.
  const auto g = s3();
  const FiniteSpace fiber(g, {{2, 1}, {1, 2}});
  const auto y = InducedSpace::with_finite_fiber(s3_transposition(), fiber);
  CHECK(y.index() == 3);
  const auto flat = y.flatten();
  CHECK(flat.size() == 6);
  const auto ext = FiniteExtension::from_induced(y);
  CHECK(ext.fiber(1).size() == 2);
  for (const auto& gamma : g.ball(3)) {
    for (std::uint32_t p = 1; p <= 6; ++p) {
      CHECK(ext.apply(flat.act(gamma, p)) == ext.target().act(gamma, ext.apply(p)));
    }
  }
}

TEST_CASE("disabled fiber action keeps fibers fixed") {
  const auto y = InducedSpace::with_boundary_fiber(index2()).with_fiber_action_disabled();
  const InducedPoint p{2, bp("|c")};
  const InducedPoint q = y.act(w("a"), p);
  CHECK(q.coset == 1);
  CHECK(std::get<BoundaryPoint>(q.fiber) == bp("|c"));
}

TEST_CASE("finite extensions") {
  const auto x = FiniteSpace::from_cosets(enumerate_cosets(s3_transposition(), 100));
  const auto id = FiniteExtension::identity(x);
  CHECK(id.source().size() == 3);
  const auto prod = FiniteExtension::product(x, 2);
  CHECK(prod.source().size() == 6);
  CHECK(prod.fiber(2).size() == 2);
  const auto reg = FiniteExtension::regular(x);
  CHECK(reg.source().size() == 6);
  for (std::uint32_t b = 1; b <= 3; ++b) CHECK(reg.fiber(b).size() == 2);
  // A non-equivariant map is rejected.
  CHECK_THROWS_AS(FiniteExtension(x, x, {1, 1, 2}), Error);
  CHECK_THROWS_AS(FiniteExtension(x, x, {2, 1, 3}), Error);
}

TEST_CASE("induced point serialization") {
  const InducedPoint p{2, bp("ab|ba")};
  CHECK(to_string(p) == "(2, " + bp("ab|ba").to_string() + ")");
  CHECK(parse_induced_point(to_string(p)) == p);
  const InducedPoint q{3, std::uint32_t{2}};
  CHECK(parse_induced_point(to_string(q)) == q);
  CHECK_THROWS_AS(parse_induced_point("2, |a"), Error);
}

TEST_CASE("stabilizer subgroups") {
  const auto table = enumerate_cosets(index3(), 100);
  const auto x = FiniteSpace::from_cosets(table);
  const auto s1 = stabilizer_subgroup(x, 1, 3);
  const auto t1 = enumerate_cosets(s1, 100);
  CHECK(t1.index() == 3);
  CHECK(same_subgroup(s1, t1, index3(), table));
  for (Coset i = 1; i <= 3; ++i) {
    const auto si = stabilizer_subgroup(x, i, 3);
    const auto ci = conjugate_subgroup(index3(), table.representative(i));
    CHECK(same_subgroup(si, enumerate_cosets(si, 100), ci, enumerate_cosets(ci, 100)));
    const Word tr = transporter(x, 1, i);
    CHECK(x.act(tr, 1) == i);
  }
  const auto trivial = FiniteSpace::from_cosets(enumerate_cosets(index1(), 100));
  const auto whole = stabilizer_subgroup(trivial, 1, 1);
  CHECK(enumerate_cosets(whole, 10).index() == 1);
  const auto two = FiniteSpace::disjoint_union(x, x);
  CHECK_THROWS_AS(stabilizer_subgroup(two, 1, 3), NotTransitive);
}
