// Shared fixtures and independent oracles for the test binaries.
#ifndef RELBOUND_TEST_FIXTURES_HPP_
#define RELBOUND_TEST_FIXTURES_HPP_

#include <memory>
#include <vector>

#include "relbound/checks.hpp"

namespace fixtures {

using namespace relbound;

inline Word w(std::string_view s) { return parse_word(s); }

inline GroupContext f2() { return GroupContext::free_group(2); }

/// Even a-exponent subgroup of F2.
inline SubgroupHandle index2() { return {f2(), {w("aa"), w("b"), w("abA")}}; }
/// Point stabilizer of F2 → S3, a ↦ (2 3), b ↦ (1 2 3); not normal.
inline SubgroupHandle index3() { return {f2(), {w("a"), w("bab"), w("bbb"), w("BaB")}}; }
inline SubgroupHandle index1() { return {f2(), {w("a"), w("b")}}; }

/// S3 = <(12), (123)> on {0, 1, 2}.
inline GroupContext s3() { return GroupContext::permutation_group(3, {{1, 0, 2}, {1, 2, 0}}); }
inline SubgroupHandle s3_transposition() { return {s3(), {w("a")}}; }
/// Z/4 acting cyclically on {0..3}.
inline GroupContext z4() { return GroupContext::permutation_group(4, {{1, 2, 3, 0}}); }

/// Independent membership oracle: a homomorphism of F_k to permutations of
/// {0..m-1} (letters applied right to left), with Λ the stabilizer of point 0.
struct PermutationOracle {
  std::vector<std::vector<int>> images;  // per positive generator

  int apply(const Word& g, int p) const {
    for (auto it = g.letters().rbegin(); it != g.letters().rend(); ++it) {
      const auto& img = images[it->index - 1];
      if (!it->inverse) {
        p = img[p];
      } else {
        for (int q = 0; q < static_cast<int>(img.size()); ++q) {
          if (img[q] == p) {
            p = q;
            break;
          }
        }
      }
    }
    return p;
  }
  bool member(const Word& g) const { return apply(g, 0) == 0; }
};

inline PermutationOracle index2_oracle() { return {{{1, 0}, {0, 1}}}; }
inline PermutationOracle index3_oracle() { return {{{0, 2, 1}, {1, 2, 0}}}; }
inline PermutationOracle index1_oracle() { return {{{0}, {0}}}; }

/// Naive stack reduction, independent of Word::reduce.
inline std::string naive_reduce(std::string s) {
  std::string out;
  for (char c : s) {
    if (!out.empty() && out.back() != c && std::tolower(out.back()) == std::tolower(c)) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

/// Random word string of the given length over rank-k letters (not reduced).
inline std::string random_letters(SeededRng& rng, unsigned rank, std::size_t length) {
  std::string s;
  for (std::size_t k = 0; k < length; ++k) {
    const auto slot = rng.below(2 * rank);
    const char base = slot % 2 == 0 ? 'a' : 'A';
    s.push_back(static_cast<char>(base + slot / 2));
  }
  return s;
}

/// Infinite expansion oracle: the first n letters of prefix·period^∞ after
/// naive reduction of a long enough finite truncation.
inline std::string expansion_oracle(const std::string& prefix, const std::string& period,
                                    std::size_t n) {
  std::string s = prefix;
  while (s.size() < 4 * (n + prefix.size()) + 8 * period.size()) s += period;
  return naive_reduce(s).substr(0, n);
}

}  // namespace fixtures

#endif  // RELBOUND_TEST_FIXTURES_HPP_
