#include "relbound/sampler.hpp"

#include <set>

namespace relbound {

nlohmann::json SamplerParams::to_json() const {
  return {{"max_atoms", max_atoms},
          {"samples", samples},
          {"seed", seed},
          {"walk_length", walk_length},
          {"max_denominator", max_denominator}};
}

Word random_reduced_word(SeededRng& rng, unsigned rank, unsigned max_length) {
  const std::size_t length = rng.below(max_length + 1);
  std::vector<Letter> letters;
  while (letters.size() < length) {
    const Letter x = Letter::from_slot(rng.below(2 * rank));
    if (!letters.empty() && letters.back().cancels(x)) continue;
    letters.push_back(x);
  }
  return Word::reduce(letters);
}

Word random_element(SeededRng& rng, const GroupContext& group, unsigned max_length) {
  const std::size_t length = rng.below(max_length + 1);
  std::vector<Letter> letters;
  for (std::size_t k = 0; k < length; ++k) letters.push_back(Letter::from_slot(rng.below(2 * group.rank())));
  return group.reduce(letters);
}

Word random_subgroup_element(SeededRng& rng, const SchreierBasis& basis, unsigned basis_length) {
  const unsigned rank = static_cast<unsigned>(basis.rank());
  Word w;
  while (w.empty()) w = random_reduced_word(rng, rank, basis_length);
  return basis.evaluate(w);
}

Word random_member(SeededRng& rng, const CosetTable& table, unsigned max_length) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Word w = random_element(rng, table.ambient(), max_length);
    if (table.contains(w)) return w;
  }
  return Word{};
}

std::vector<Rational> random_weights(SeededRng& rng, std::size_t count, unsigned max_denominator) {
  std::vector<Rational> w;
  Rational total = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t q = rng.between(1, max_denominator);
    const std::uint64_t p = rng.between(1, q);
    w.emplace_back(p, q);
    total += w.back();
  }
  for (auto& x : w) x /= total;
  return w;
}

BoundaryPoint random_boundary_point(SeededRng& rng, unsigned rank, unsigned walk_length) {
  const Letter base = Letter::from_slot(rng.below(2 * rank));
  const Word walk = random_reduced_word(rng, rank, walk_length);
  return act_free(walk, BoundaryPoint::ray(base));
}

namespace {

/// Draws `count` distinct points with `draw`, giving up after a bounded number of repeats.
template <class P, class Draw>
std::vector<P> distinct_points(std::size_t count, Draw&& draw) {
  std::set<P> seen;
  std::vector<P> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 64 * count; ++attempt) {
    P p = draw();
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

template <class P>
AtomicMeasure<P> weigh(SeededRng& rng, std::vector<P> points, unsigned max_denominator) {
  const auto weights = random_weights(rng, points.size(), max_denominator);
  std::vector<std::pair<P, Rational>> atoms;
  for (std::size_t k = 0; k < points.size(); ++k) atoms.emplace_back(std::move(points[k]), weights[k]);
  return AtomicMeasure<P>::from_atoms(std::move(atoms));
}

FiberPoint random_fiber_point(SeededRng& rng, const InducedSpace& space, unsigned walk_length) {
  if (space.has_boundary_fiber()) {
    return random_boundary_point(rng, space.fiber_rank(), walk_length);
  }
  return static_cast<std::uint32_t>(rng.between(1, space.finite_fiber().size()));
}

std::size_t atom_count(SeededRng& rng, const SamplerParams& params) {
  if (params.max_atoms < 1) throw Error("sampler needs max_atoms >= 1");
  return rng.between(1, params.max_atoms);
}

}  // namespace

InducedMeasure sample_fiber_measure(const InducedSpace& space, Coset coset,
                                    const SamplerParams& params, std::uint64_t index) {
  SeededRng rng = SeededRng::for_sample(params.seed, index);
  const std::size_t k = atom_count(rng, params);
  auto points = distinct_points<InducedPoint>(k, [&] {
    return InducedPoint{coset, random_fiber_point(rng, space, params.walk_length)};
  });
  return weigh(rng, std::move(points), params.max_denominator);
}

BoundaryMeasure sample_boundary_measure(unsigned rank, const SamplerParams& params,
                                        std::uint64_t index) {
  SeededRng rng = SeededRng::for_sample(params.seed, index);
  const std::size_t k = atom_count(rng, params);
  auto points = distinct_points<BoundaryPoint>(
      k, [&] { return random_boundary_point(rng, rank, params.walk_length); });
  return weigh(rng, std::move(points), params.max_denominator);
}

FiniteMeasure sample_measure_on(const std::vector<FiniteSpace::Point>& points,
                                const SamplerParams& params, std::uint64_t index) {
  if (points.empty()) throw Error("cannot sample a measure on an empty set");
  SeededRng rng = SeededRng::for_sample(params.seed, index);
  const std::size_t k = std::min(atom_count(rng, params), points.size());
  auto chosen = distinct_points<FiniteSpace::Point>(
      k, [&] { return points[rng.below(points.size())]; });
  return weigh(rng, std::move(chosen), params.max_denominator);
}

InducedMeasure sample_induced_measure(const InducedSpace& space, const SamplerParams& params,
                                      std::uint64_t index) {
  SeededRng rng = SeededRng::for_sample(params.seed, index);
  const std::size_t k = atom_count(rng, params);
  auto points = distinct_points<InducedPoint>(k, [&] {
    const auto c = static_cast<Coset>(rng.between(1, space.index()));
    return InducedPoint{c, random_fiber_point(rng, space, params.walk_length)};
  });
  return weigh(rng, std::move(points), params.max_denominator);
}

}  // namespace relbound
