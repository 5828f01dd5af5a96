#include "relbound/schreier.hpp"

#include <set>
#include <string>

namespace relbound {

std::optional<Letter> SchreierBasis::letter_for(Coset i, std::uint16_t generator) const {
  return letter_.at(i - 1).at(generator - 1u);
}

Word SchreierBasis::evaluate(const Word& basis_word) const {
  std::vector<Letter> out;
  for (Letter y : basis_word) {
    if (y.index < 1 || y.index > words_.size()) {
      throw Error("basis letter " + std::to_string(y.index) + " exceeds basis rank " +
                  std::to_string(words_.size()));
    }
    const Word piece = y.inverse ? inverse(words_[y.index - 1]) : words_[y.index - 1];
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return Word::reduce(out);
}

SchreierBasis schreier_basis(const CosetTable& table) {
  const GroupContext& ctx = table.ambient();
  if (!ctx.is_free()) throw Error("Schreier basis requires a free ambient group");
  SchreierBasis basis;
  basis.letter_.assign(table.index(), std::vector<std::optional<Letter>>(ctx.rank()));
  std::set<Word> seen;
  for (Coset i = 1; i <= table.index(); ++i) {
    for (std::uint16_t g = 1; g <= ctx.rank(); ++g) {
      const Word x = Word::generator(g);
      const Coset j = table.act(x.front(), i);
      Word s = product(inverse(table.representative(j)), x, table.representative(i));
      if (s.empty()) continue;
      if (!seen.insert(s).second) throw Error("Schreier generators are not distinct");
      basis.words_.push_back(std::move(s));
      basis.letter_[i - 1][g - 1] = Letter{static_cast<std::uint16_t>(basis.words_.size()), false};
    }
  }
  return basis;
}

Word rewrite_in_basis(const CosetTable& table, const SchreierBasis& basis, const Word& lambda) {
  table.ambient().validate(lambda);
  const std::size_t n = lambda.size();
  // after[k] = coset of the suffix x_{k+1} ... x_n.
  std::vector<Coset> after(n + 1);
  after[n] = 1;
  for (std::size_t k = n; k-- > 0;) after[k] = table.act(lambda[k], after[k + 1]);
  if (after[0] != 1) {
    throw NotInSubgroup("word " + to_string(lambda) + " does not lie in the subgroup");
  }
  // λ = Π t_{c_{k-1}}^{-1} x_k t_{c_k}; each factor is s_{c_k,x} or s_{c_{k-1},x}^{-1}.
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Letter x = lambda[k];
    if (!x.inverse) {
      if (auto y = basis.letter_for(after[k + 1], x.index)) out.push_back(*y);
    } else {
      if (auto y = basis.letter_for(after[k], x.index)) out.push_back(y->inv());
    }
  }
  return Word::reduce(out);
}

}  // namespace relbound
