#ifndef RELBOUND_SCHREIER_HPP_
#define RELBOUND_SCHREIER_HPP_

#include <optional>
#include <vector>

#include "relbound/cosets.hpp"

namespace relbound {

/// Nontrivial Schreier generators s_{i,x} = t_{x·i}^{-1} · x · t_i of a
/// finite-index subgroup of a free group. Basis letter k (1-based) stands for
/// generators()[k-1]; together they freely generate Λ.
class SchreierBasis {
 public:
  std::size_t rank() const { return words_.size(); }
  const std::vector<Word>& generators() const { return words_; }

  /// Basis letter for the pair (coset i, positive generator x), if nontrivial.
  std::optional<Letter> letter_for(Coset i, std::uint16_t generator) const;

  /// Substitutes basis words for basis letters.
  Word evaluate(const Word& basis_word) const;

 private:
  friend SchreierBasis schreier_basis(const CosetTable& table);
  std::vector<Word> words_;
  std::vector<std::vector<std::optional<Letter>>> letter_;  // [coset-1][generator-1]
};

SchreierBasis schreier_basis(const CosetTable& table);

/// Reidemeister–Schreier rewriting of λ ∈ Λ as a reduced word over the basis.
/// Throws NotInSubgroup when λ ∉ Λ.
Word rewrite_in_basis(const CosetTable& table, const SchreierBasis& basis, const Word& lambda);

}  // namespace relbound

#endif  // RELBOUND_SCHREIER_HPP_
