#include "relbound/word.hpp"

#include <algorithm>

namespace relbound {

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter x : letters) {
    if (x.index == 0) throw Error("generator index must be >= 1");
    if (!w.letters_.empty() && w.letters_.back().cancels(x)) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(x);
    }
  }
  return w;
}

std::uint16_t Word::max_index() const {
  std::uint16_t m = 0;
  for (Letter x : letters_) m = std::max(m, x.index);
  return m;
}

Word Word::subword(std::size_t pos, std::size_t count) const {
  Word w;
  pos = std::min(pos, letters_.size());
  count = std::min(count, letters_.size() - pos);
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return w;
}

bool Word::cyclically_reduced() const {
  return letters_.size() < 2 || !letters_.front().cancels(letters_.back());
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                other.letters_.begin(), other.letters_.end());
}

Word multiply(const Word& u, const Word& v) { return product(u, v); }

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inv());
  return Word::reduce(out);
}

Word power(const Word& w, int exponent) {
  const Word base = exponent < 0 ? inverse(w) : w;
  std::vector<Letter> out;
  const int n = exponent < 0 ? -exponent : exponent;
  out.reserve(base.size() * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.insert(out.end(), base.begin(), base.end());
  return Word::reduce(out);
}

char letter_char(Letter x) {
  if (x.index < 1 || x.index > 26) throw Error("generator index " + std::to_string(x.index) +
                                               " has no single-letter name");
  const char base = x.inverse ? 'A' : 'a';
  return static_cast<char>(base + (x.index - 1));
}

Letter parse_letter(char c) {
  if (c >= 'a' && c <= 'z') return Letter{static_cast<std::uint16_t>(c - 'a' + 1), false};
  if (c >= 'A' && c <= 'Z') return Letter{static_cast<std::uint16_t>(c - 'A' + 1), true};
  throw Error(std::string("invalid letter '") + c + "' in word");
}

Word parse_word(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(parse_letter(c));
  return Word::reduce(letters);
}

std::string to_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter x : w) s.push_back(letter_char(x));
  return s;
}

}  // namespace relbound
