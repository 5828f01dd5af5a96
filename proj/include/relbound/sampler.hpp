#ifndef RELBOUND_SAMPLER_HPP_
#define RELBOUND_SAMPLER_HPP_

#include <cstdint>
#include <random>

#include "json.hpp"
#include "relbound/contraction.hpp"

namespace relbound {

/// mt19937_64 with portable bounded draws (the standard distributions are
/// implementation-defined, so they are avoided to keep runs reproducible).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  /// Per-sample stream: master seed ⊕ sample index.
  static SeededRng for_sample(std::uint64_t seed, std::uint64_t index) {
    return SeededRng(seed ^ index);
  }

  /// Uniform in [0, n), n ≥ 1.
  std::uint64_t below(std::uint64_t n) {
    const unsigned __int128 x = static_cast<unsigned __int128>(engine_()) * n;
    return static_cast<std::uint64_t>(x >> 64);
  }
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

struct SamplerParams {
  std::size_t max_atoms = 5;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  unsigned walk_length = 8;
  unsigned max_denominator = 64;

  nlohmann::json to_json() const;
};

/// Reduced word of length uniform in [0, max_length] from a non-backtracking walk.
Word random_reduced_word(SeededRng& rng, unsigned rank, unsigned max_length);

/// Uniform random word of length ≤ max_length, reduced in the group (for
/// finite groups it may be shorter than the walk).
Word random_element(SeededRng& rng, const GroupContext& group, unsigned max_length);

/// Element of Λ: a random basis word (length in [1, basis_length]) evaluated in Γ.
Word random_subgroup_element(SeededRng& rng, const SchreierBasis& basis, unsigned basis_length);

/// Element of Λ for any ambient group: random words of length ≤ max_length
/// are drawn until one lies in Λ (the empty word is a fallback after 256 tries).
Word random_member(SeededRng& rng, const CosetTable& table, unsigned max_length);

/// Random positive rationals p/q (1 ≤ p ≤ q ≤ max_denominator), normalized to sum 1.
std::vector<Rational> random_weights(SeededRng& rng, std::size_t count, unsigned max_denominator);

/// w · x^∞ with x a random letter and w a random walk of length ≤ walk_length.
BoundaryPoint random_boundary_point(SeededRng& rng, unsigned rank, unsigned walk_length);

/// Measure supported in the fiber over `coset`, with 1..max_atoms distinct atoms.
InducedMeasure sample_fiber_measure(const InducedSpace& space, Coset coset,
                                    const SamplerParams& params, std::uint64_t index);

/// Measure on ∂F_r with 1..max_atoms distinct atoms.
BoundaryMeasure sample_boundary_measure(unsigned rank, const SamplerParams& params,
                                        std::uint64_t index);

/// Measure on the given points (1..min(max_atoms, |points|) distinct ones).
FiniteMeasure sample_measure_on(const std::vector<FiniteSpace::Point>& points,
                                const SamplerParams& params, std::uint64_t index);

/// Measure on the induced space with atoms over arbitrary cosets.
InducedMeasure sample_induced_measure(const InducedSpace& space, const SamplerParams& params,
                                      std::uint64_t index);

}  // namespace relbound

#endif  // RELBOUND_SAMPLER_HPP_
