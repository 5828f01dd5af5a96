#ifndef RELBOUND_COSETS_HPP_
#define RELBOUND_COSETS_HPP_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "relbound/group.hpp"

namespace relbound {

/// Coset (or finite-space point) index, 1-based. Coset 1 is Λ itself.
using Coset = std::uint32_t;

struct SubgroupHandle {
  GroupContext ambient;
  std::vector<Word> generators;
};

class CosetEnumerationError : public Error {
 public:
  using Error::Error;
};

class NotInSubgroup : public Error {
 public:
  using Error::Error;
};

/// Left cosets γΛ of a finite-index subgroup with the left Γ-action and a
/// shortlex-minimal transversal (t_1 = e). Immutable once built.
class CosetTable {
 public:
  CosetTable(GroupContext ambient, std::vector<Word> transversal,
             std::vector<std::vector<Coset>> action_by_slot);

  const GroupContext& ambient() const { return ambient_; }
  std::size_t index() const { return transversal_.size(); }
  const std::vector<Word>& transversal() const { return transversal_; }
  const Word& representative(Coset i) const { return transversal_.at(i - 1); }

  /// x · i for a single letter.
  Coset act(Letter x, Coset i) const { return action_[x.slot()][i - 1]; }
  /// w · i, letters applied right to left.
  Coset act(const Word& w, Coset i) const;
  /// The coset w·Λ.
  Coset coset_of(const Word& w) const { return act(w, 1); }
  bool contains(const Word& w) const { return coset_of(w) == 1; }

  /// The unique λ ∈ Λ with γ · t_i · λ ∈ T, i.e. (γ t_i)^{-1} t_j for j = γ·i.
  Word cocycle(const Word& gamma, Coset i) const;

  /// {index, transversal: [words], action: {letter: [cosets]}}.
  nlohmann::json to_json() const;

 private:
  GroupContext ambient_;
  std::vector<Word> transversal_;
  std::vector<std::vector<Coset>> action_;  // [slot][coset-1]
};

/// Todd–Coxeter enumeration of the left cosets of Λ. Free ambient groups use
/// the empty relator set (a complete table after scanning the subgroup
/// generators means finite index); finite ambient groups enumerate elements.
CosetTable enumerate_cosets(const SubgroupHandle& subgroup, std::size_t max_cosets);

inline Word cocycle_alpha(const CosetTable& table, const Word& gamma, Coset i) {
  return table.cocycle(gamma, i);
}

/// t Λ t^{-1}, generators mapped h ↦ t h t^{-1}.
SubgroupHandle conjugate_subgroup(const SubgroupHandle& subgroup, const Word& t);

/// {t_1 t^{-1}, ..., t_n t^{-1}}, a transversal for Γ / (tΛt^{-1}) when t ∈ T.
std::vector<Word> conjugate_transversal(const CosetTable& table, const Word& t);

/// Whether every generator of `a` lies in the subgroup tabulated by `b`, and vice versa.
bool same_subgroup(const SubgroupHandle& a, const CosetTable& a_table,
                   const SubgroupHandle& b, const CosetTable& b_table);

}  // namespace relbound

#endif  // RELBOUND_COSETS_HPP_
