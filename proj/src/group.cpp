#include "relbound/group.hpp"

#include <set>
#include <string>

namespace relbound {

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation compose(const Permutation& f, const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

Permutation invert(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint32_t>(i);
  return out;
}

bool is_bijection(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto image : p) {
    if (image >= p.size() || seen[image]) return false;
    seen[image] = true;
  }
  return true;
}

GroupContext GroupContext::free_group(unsigned rank) {
  if (rank < 1) throw Error("free group rank must be >= 1");
  GroupContext ctx;
  ctx.free_ = true;
  ctx.rank_ = rank;
  return ctx;
}

GroupContext GroupContext::permutation_group(unsigned degree,
                                             std::vector<Permutation> generators) {
  if (degree < 1) throw Error("permutation degree must be >= 1");
  if (generators.empty()) throw Error("permutation group needs at least one generator");
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].size() != degree || !is_bijection(generators[g])) {
      throw Error("generator " + std::to_string(g + 1) + " is not a permutation of {0.." +
                  std::to_string(degree - 1) + "}");
    }
  }
  GroupContext ctx;
  ctx.free_ = false;
  ctx.rank_ = static_cast<unsigned>(generators.size());
  ctx.degree_ = degree;
  ctx.perms_ = std::move(generators);
  return ctx;
}

std::vector<Letter> GroupContext::alphabet() const {
  std::vector<Letter> out;
  out.reserve(2u * rank_);
  for (std::size_t s = 0; s < 2u * rank_; ++s) out.push_back(Letter::from_slot(s));
  return out;
}

void GroupContext::validate(std::span<const Letter> letters) const {
  for (Letter x : letters) {
    if (x.index < 1 || x.index > rank_) {
      throw Error("letter index " + std::to_string(x.index) + " out of range for a group with " +
                  std::to_string(rank_) + " generators");
    }
  }
}

Word GroupContext::reduce(std::span<const Letter> letters) const {
  validate(letters);
  return Word::reduce(letters);
}

Word GroupContext::multiply(const Word& u, const Word& v) const {
  validate(u);
  validate(v);
  return relbound::multiply(u, v);
}

bool GroupContext::equal(const Word& u, const Word& v) const {
  if (free_) return u == v;
  return permutation_of(u) == permutation_of(v);
}

Permutation GroupContext::permutation_of(const Word& w) const {
  if (free_) throw Error("permutation_of requires a finite permutation group");
  validate(w);
  Permutation p = identity_permutation(degree_);
  // Right-to-left application realizes x1 ∘ x2 ∘ ... ∘ xn.
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    const Permutation g = it->inverse ? invert(perms_[it->index - 1]) : perms_[it->index - 1];
    for (auto& image : p) image = g[image];
  }
  return p;
}

std::vector<Word> GroupContext::ball(unsigned radius, std::size_t cap) const {
  std::vector<Word> out{Word{}};
  std::set<Permutation> seen;
  if (!free_) seen.insert(identity_permutation(degree_));
  std::vector<Permutation> inverses;
  for (const auto& g : perms_) inverses.push_back(invert(g));

  std::vector<std::size_t> layer{0};
  std::vector<Permutation> layer_perms;
  if (!free_) layer_perms.push_back(identity_permutation(degree_));
  const auto letters = alphabet();

  for (unsigned len = 1; len <= radius && !layer.empty(); ++len) {
    std::vector<std::size_t> next;
    std::vector<Permutation> next_perms;
    for (std::size_t k = 0; k < layer.size(); ++k) {
      // Copy: out may reallocate while this layer is extended.
      const Word base = out[layer[k]];
      for (Letter x : letters) {
        if (!base.empty() && base.back().cancels(x)) continue;
        std::vector<Letter> ls(base.begin(), base.end());
        ls.push_back(x);
        Word w = Word::reduce(ls);
        if (!free_) {
          const Permutation& g = x.inverse ? inverses[x.index - 1] : perms_[x.index - 1];
          Permutation p = compose(layer_perms[k], g);
          if (!seen.insert(p).second) continue;
          next_perms.push_back(std::move(p));
        }
        if (out.size() >= cap) {
          throw BallCapExceeded("ball of radius " + std::to_string(radius) +
                                " exceeds the cap of " + std::to_string(cap) + " elements");
        }
        next.push_back(out.size());
        out.push_back(std::move(w));
      }
    }
    layer = std::move(next);
    layer_perms = std::move(next_perms);
  }
  return out;
}

std::size_t free_ball_size(unsigned rank, unsigned radius) {
  std::size_t total = 1;
  std::size_t sphere = 2u * rank;
  for (unsigned l = 1; l <= radius; ++l) {
    total += sphere;
    sphere *= (2u * rank - 1u);
  }
  return total;
}

}  // namespace relbound
