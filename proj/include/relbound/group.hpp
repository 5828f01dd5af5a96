#ifndef RELBOUND_GROUP_HPP_
#define RELBOUND_GROUP_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "relbound/word.hpp"

namespace relbound {

/// Images of 0..m-1.
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(std::size_t degree);
/// (f ∘ g)(p) = f(g(p)).
Permutation compose(const Permutation& f, const Permutation& g);
Permutation invert(const Permutation& p);
bool is_bijection(const Permutation& p);

inline constexpr std::size_t kDefaultBallCap = 1'000'000;

class BallCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A concrete group: a free group of given rank, or a finite group generated by
/// permutations. Elements are always reduced words over the generators.
class GroupContext {
 public:
  static GroupContext free_group(unsigned rank);
  static GroupContext permutation_group(unsigned degree, std::vector<Permutation> generators);

  bool is_free() const { return free_; }
  /// Number of generators.
  unsigned rank() const { return rank_; }
  unsigned degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return perms_; }

  /// The doubled alphabet a, A, b, B, ... in shortlex order.
  std::vector<Letter> alphabet() const;

  /// Throws if a letter lies outside the alphabet.
  void validate(std::span<const Letter> letters) const;
  void validate(const Word& w) const { validate(w.letters()); }

  Word reduce(std::span<const Letter> letters) const;
  Word multiply(const Word& u, const Word& v) const;

  /// Group equality: structural for free groups, by permutation for finite ones.
  bool equal(const Word& u, const Word& v) const;

  /// Left-to-right composite x1 ∘ x2 ∘ ... ∘ xn; a homomorphism from words.
  Permutation permutation_of(const Word& w) const;

  /// All elements of length <= radius, one shortlex-minimal word per element,
  /// listed in shortlex order.
  std::vector<Word> ball(unsigned radius, std::size_t cap = kDefaultBallCap) const;

  bool operator==(const GroupContext&) const = default;

 private:
  bool free_ = true;
  unsigned rank_ = 1;
  unsigned degree_ = 0;
  std::vector<Permutation> perms_;
};

/// Size of the radius-R ball of the free group of rank k: 1 + Σ 2k(2k-1)^(l-1).
std::size_t free_ball_size(unsigned rank, unsigned radius);

}  // namespace relbound

#endif  // RELBOUND_GROUP_HPP_
