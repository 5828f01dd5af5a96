#ifndef RELBOUND_WORD_HPP_
#define RELBOUND_WORD_HPP_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace relbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator or its inverse. Indices are 1-based; ordering is a < A < b < B < ...
struct Letter {
  std::uint16_t index = 1;
  bool inverse = false;

  constexpr Letter inv() const { return Letter{index, !inverse}; }
  constexpr bool cancels(Letter other) const {
    return index == other.index && inverse != other.inverse;
  }
  /// Position in the doubled alphabet: a=0, A=1, b=2, B=3, ...
  constexpr std::size_t slot() const { return 2u * (index - 1u) + (inverse ? 1u : 0u); }
  static constexpr Letter from_slot(std::size_t s) {
    return Letter{static_cast<std::uint16_t>(s / 2 + 1), (s % 2) == 1};
  }

  auto operator<=>(const Letter&) const = default;
};

/// Freely reduced word. The empty word is the identity.
///
/// Words compare in shortlex order (length first, then letter by letter),
/// which is the order used for transversals, balls and tie-breaking.
class Word {
 public:
  Word() = default;

  /// Freely reduces an arbitrary letter sequence.
  static Word reduce(std::span<const Letter> letters);
  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }
  static Word generator(std::uint16_t index, bool inverse = false) {
    Word w;
    w.letters_.push_back(Letter{index, inverse});
    return w;
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  /// Largest generator index used (0 for the identity).
  std::uint16_t max_index() const;

  /// Letters [pos, pos + count) as a word (a subword of a reduced word is reduced).
  Word subword(std::size_t pos, std::size_t count) const;

  /// True when the word is cyclically reduced (first letter does not cancel the last).
  bool cyclically_reduced() const;

  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  std::vector<Letter> letters_;
};

Word multiply(const Word& u, const Word& v);

/// Reduced product of any number of words, left to right.
template <class... Words>
Word product(const Word& first, const Words&... rest) {
  std::vector<Letter> all(first.begin(), first.end());
  (all.insert(all.end(), rest.begin(), rest.end()), ...);
  return Word::reduce(all);
}
Word inverse(const Word& w);
Word power(const Word& w, int exponent);

/// Parses "abA" = a b a^-1; the empty string is the identity. Input is freely reduced.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);
char letter_char(Letter x);
Letter parse_letter(char c);

}  // namespace relbound

#endif  // RELBOUND_WORD_HPP_
