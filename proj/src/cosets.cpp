#include "relbound/cosets.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace relbound {

CosetTable::CosetTable(GroupContext ambient, std::vector<Word> transversal,
                       std::vector<std::vector<Coset>> action_by_slot)
    : ambient_(std::move(ambient)),
      transversal_(std::move(transversal)),
      action_(std::move(action_by_slot)) {
  if (transversal_.empty() || !transversal_.front().empty()) {
    throw Error("transversal must start with the identity");
  }
  if (action_.size() != 2u * ambient_.rank()) throw Error("coset action has wrong arity");
  for (const auto& row : action_) {
    if (row.size() != transversal_.size()) throw Error("coset action has wrong size");
  }
}

Coset CosetTable::act(const Word& w, Coset i) const {
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) i = act(*it, i);
  return i;
}

Word CosetTable::cocycle(const Word& gamma, Coset i) const {
  const Word& ti = representative(i);
  const Coset j = act(gamma, i);
  return product(inverse(ti), inverse(gamma), representative(j));
}

nlohmann::json CosetTable::to_json() const {
  nlohmann::json j;
  j["index"] = index();
  auto& t = j["transversal"] = nlohmann::json::array();
  for (const auto& w : transversal_) t.push_back(to_string(w));
  auto& act_j = j["action"] = nlohmann::json::object();
  for (Letter x : ambient_.alphabet()) {
    act_j[std::string(1, letter_char(x))] = action_[x.slot()];
  }
  return j;
}

namespace {

constexpr std::int64_t kUndefined = -1;

/// Coset graph under construction for a free ambient group. Entry
/// table[c][s] = d means letter s maps coset c to d; inverse entries are kept
/// in sync. Coincidences merge the larger coset into the smaller.
class FreeEnumerator {
 public:
  FreeEnumerator(unsigned rank, std::size_t max_cosets)
      : slots_(2u * rank), max_cosets_(max_cosets) {
    new_coset();
  }

  void scan(const Word& h) {
    if (h.empty()) return;
    std::int64_t c = 0;
    // h · 1 = 1: apply letters right to left, closing with the first letter.
    for (std::size_t k = h.size(); k-- > 1;) {
      const std::size_t s = h[k].slot();
      if (table_[c][s] == kUndefined) {
        const std::int64_t d = new_coset();
        set_edge(c, s, d);
      }
      c = table_[c][s];
    }
    const std::size_t s = h[0].slot();
    if (table_[c][s] != kUndefined) {
      coincide(table_[c][s], 0);
    } else if (table_[0][s ^ 1u] != kUndefined) {
      coincide(table_[0][s ^ 1u], c);
    } else {
      set_edge(c, s, 0);
    }
  }

  bool complete() const {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(c)) continue;
      for (auto d : table_[c]) {
        if (d == kUndefined) return false;
      }
    }
    return true;
  }

  /// Live cosets renumbered 0..n-1 in creation order, with their action.
  std::vector<std::vector<std::int64_t>> compact() const {
    std::vector<std::int64_t> renumber(table_.size(), kUndefined);
    std::int64_t n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (alive(c)) renumber[c] = n++;
    }
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(c)) continue;
      std::vector<std::int64_t> row(slots_);
      for (std::size_t s = 0; s < slots_; ++s) row[s] = renumber[table_[c][s]];
      out.push_back(std::move(row));
    }
    return out;
  }

 private:
  bool alive(std::size_t c) const { return parent_[c] == static_cast<std::int64_t>(c); }

  std::int64_t find(std::int64_t c) const {
    while (parent_[c] != c) c = parent_[c];
    return c;
  }

  std::int64_t new_coset() {
    if (defined_ >= max_cosets_) {
      throw CosetEnumerationError("coset enumeration exceeded the budget of " +
                                  std::to_string(max_cosets_) + " cosets");
    }
    ++defined_;
    table_.emplace_back(slots_, kUndefined);
    parent_.push_back(static_cast<std::int64_t>(parent_.size()));
    return static_cast<std::int64_t>(table_.size() - 1);
  }

  void set_edge(std::int64_t c, std::size_t s, std::int64_t d) {
    table_[c][s] = d;
    table_[d][s ^ 1u] = c;
  }

  void coincide(std::int64_t a, std::int64_t b) {
    std::deque<std::pair<std::int64_t, std::int64_t>> queue{{a, b}};
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      const std::int64_t live = std::min(x, y);
      const std::int64_t dead = std::max(x, y);
      parent_[dead] = live;
      for (std::size_t s = 0; s < slots_; ++s) {
        const std::int64_t d = table_[dead][s];
        if (d == kUndefined) continue;
        table_[dead][s] = kUndefined;
        if (table_[d][s ^ 1u] == dead) table_[d][s ^ 1u] = kUndefined;
        const std::int64_t target = (d == dead) ? live : d;
        const std::int64_t existing = table_[live][s];
        if (existing != kUndefined) {
          queue.emplace_back(existing, target);
        } else {
          table_[live][s] = target;
        }
        const std::int64_t back = table_[target][s ^ 1u];
        if (back != kUndefined) {
          if (find(back) != live) queue.emplace_back(back, live);
        } else {
          table_[target][s ^ 1u] = live;
        }
      }
    }
  }

  std::size_t slots_;
  std::size_t max_cosets_;
  std::size_t defined_ = 0;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::int64_t> parent_;
};

/// Renumbers a complete coset graph so that cosets follow the shortlex order
/// of their minimal representatives.
CosetTable canonical_table(const GroupContext& ambient,
                           const std::vector<std::vector<std::int64_t>>& graph) {
  const std::size_t n = graph.size();
  const std::size_t slots = 2u * ambient.rank();

  std::vector<std::int64_t> dist(n, -1);
  std::vector<std::size_t> order{0};
  dist[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t c = order[head];
    for (std::size_t s = 0; s < slots; ++s) {
      const auto d = static_cast<std::size_t>(graph[c][s]);
      if (dist[d] < 0) {
        dist[d] = dist[c] + 1;
        order.push_back(d);
      }
    }
  }
  if (order.size() != n) throw CosetEnumerationError("coset graph is not connected");

  // t_c = x · t_p with p = x^{-1}·c one step closer; the smallest such x gives
  // the shortlex-minimal geodesic.
  std::vector<Word> rep(n);
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t c = order[k];
    bool found = false;
    for (std::size_t s = 0; s < slots && !found; ++s) {
      const Letter x = Letter::from_slot(s);
      const auto p = static_cast<std::size_t>(graph[c][x.inv().slot()]);
      if (dist[p] == dist[c] - 1) {
        std::vector<Letter> ls{x};
        ls.insert(ls.end(), rep[p].begin(), rep[p].end());
        rep[c] = Word::reduce(ls);
        found = true;
      }
    }
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return rep[a] < rep[b]; });
  std::vector<Coset> new_index(n);
  for (std::size_t k = 0; k < n; ++k) new_index[perm[k]] = static_cast<Coset>(k + 1);

  std::vector<Word> transversal(n);
  std::vector<std::vector<Coset>> action(slots, std::vector<Coset>(n));
  for (std::size_t c = 0; c < n; ++c) {
    transversal[new_index[c] - 1] = rep[c];
    for (std::size_t s = 0; s < slots; ++s) {
      action[s][new_index[c] - 1] = new_index[static_cast<std::size_t>(graph[c][s])];
    }
  }
  return CosetTable(ambient, std::move(transversal), std::move(action));
}

CosetTable enumerate_free(const SubgroupHandle& subgroup, std::size_t max_cosets) {
  if (subgroup.generators.empty()) {
    throw CosetEnumerationError("the trivial subgroup of a free group has infinite index");
  }
  FreeEnumerator enumerator(subgroup.ambient.rank(), max_cosets);
  for (const auto& h : subgroup.generators) enumerator.scan(h);
  if (!enumerator.complete()) {
    throw CosetEnumerationError("subgroup has infinite index (coset table does not close)");
  }
  return canonical_table(subgroup.ambient, enumerator.compact());
}

CosetTable enumerate_finite(const SubgroupHandle& subgroup, std::size_t max_cosets) {
  const GroupContext& ctx = subgroup.ambient;
  // Every element, each with its shortlex-minimal word.
  const std::vector<Word> elements = ctx.ball(std::numeric_limits<unsigned>::max());
  std::map<Permutation, std::size_t> element_of;
  std::vector<Permutation> perms;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    perms.push_back(ctx.permutation_of(elements[e]));
    element_of.emplace(perms.back(), e);
  }

  // Λ as a set of permutations: closure of the generators under products.
  std::vector<Permutation> sub{identity_permutation(ctx.degree())};
  std::map<Permutation, bool> in_sub{{sub.front(), true}};
  std::vector<Permutation> gens;
  for (const auto& h : subgroup.generators) gens.push_back(ctx.permutation_of(h));
  for (std::size_t head = 0; head < sub.size(); ++head) {
    for (const auto& g : gens) {
      for (const auto& p : {compose(sub[head], g), compose(sub[head], invert(g))}) {
        if (in_sub.emplace(p, true).second) sub.push_back(p);
      }
    }
  }

  // Left cosets gΛ, numbered by first appearance in shortlex order.
  std::vector<Coset> coset_of_element(elements.size(), 0);
  std::vector<Word> transversal;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (coset_of_element[e] != 0) continue;
    if (transversal.size() >= max_cosets) {
      throw CosetEnumerationError("coset enumeration exceeded the budget of " +
                                  std::to_string(max_cosets) + " cosets");
    }
    transversal.push_back(elements[e]);
    const auto id = static_cast<Coset>(transversal.size());
    for (const auto& lam : sub) coset_of_element[element_of.at(compose(perms[e], lam))] = id;
  }

  const std::size_t n = transversal.size();
  std::vector<std::vector<Coset>> action(2u * ctx.rank(), std::vector<Coset>(n));
  for (Letter x : ctx.alphabet()) {
    const Permutation gx = ctx.permutation_of(Word::generator(x.index, x.inverse));
    for (std::size_t i = 0; i < n; ++i) {
      const Permutation p = compose(gx, ctx.permutation_of(transversal[i]));
      action[x.slot()][i] = coset_of_element[element_of.at(p)];
    }
  }
  return CosetTable(ctx, std::move(transversal), std::move(action));
}

}  // namespace

CosetTable enumerate_cosets(const SubgroupHandle& subgroup, std::size_t max_cosets) {
  if (max_cosets < 1) throw Error("max_cosets must be >= 1");
  for (const auto& h : subgroup.generators) subgroup.ambient.validate(h);
  return subgroup.ambient.is_free() ? enumerate_free(subgroup, max_cosets)
                                    : enumerate_finite(subgroup, max_cosets);
}

SubgroupHandle conjugate_subgroup(const SubgroupHandle& subgroup, const Word& t) {
  SubgroupHandle out{subgroup.ambient, {}};
  const Word t_inv = inverse(t);
  for (const auto& h : subgroup.generators) {
    Word c = product(t, h, t_inv);
    if (!c.empty()) out.generators.push_back(std::move(c));
  }
  return out;
}

std::vector<Word> conjugate_transversal(const CosetTable& table, const Word& t) {
  std::vector<Word> out;
  const Word t_inv = inverse(t);
  for (const auto& ti : table.transversal()) out.push_back(multiply(ti, t_inv));
  return out;
}

bool same_subgroup(const SubgroupHandle& a, const CosetTable& a_table, const SubgroupHandle& b,
                   const CosetTable& b_table) {
  for (const auto& h : a.generators) {
    if (!b_table.contains(h)) return false;
  }
  for (const auto& h : b.generators) {
    if (!a_table.contains(h)) return false;
  }
  return true;
}

}  // namespace relbound
