#include "relbound/boundary.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace relbound {

namespace {

std::vector<Letter> rotate_left(std::span<const Letter> v) {
  std::vector<Letter> out(v.begin() + 1, v.end());
  out.push_back(v.front());
  return out;
}

std::vector<Letter> rotate_right(std::span<const Letter> v) {
  std::vector<Letter> out{v.back()};
  out.insert(out.end(), v.begin(), v.end() - 1);
  return out;
}

std::vector<Letter> primitive_root(const std::vector<Letter>& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = v[i] == v[i - p];
    if (periodic) return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p)};
  }
  return v;
}

}  // namespace

BoundaryPoint BoundaryPoint::make(const Word& prefix, const Word& period) {
  if (period.empty()) throw Error("boundary point period must be nonempty");
  if (!period.cyclically_reduced()) {
    throw Error("boundary point period '" + relbound::to_string(period) +
                "' is not cyclically reduced");
  }
  std::vector<Letter> u(prefix.begin(), prefix.end());
  std::vector<Letter> v(period.begin(), period.end());

  // Absorb seam cancellation: u'x · (x^{-1} v')^∞ = u' · (v' x^{-1})^∞.
  while (!u.empty() && u.back().cancels(v.front())) {
    u.pop_back();
    v = rotate_left(v);
  }
  v = primitive_root(v);
  // u'y · (v' y)^∞ = u' · (y v')^∞.
  while (!u.empty() && u.back() == v.back()) {
    u.pop_back();
    v = rotate_right(v);
  }

  BoundaryPoint xi;
  xi.prefix_ = Word::reduce(u);
  xi.period_ = Word::reduce(v);
  return xi;
}

BoundaryPoint BoundaryPoint::ray(Letter x) { return make(Word{}, Word::reduce({x})); }

Letter BoundaryPoint::letter_at(std::size_t pos) const {
  if (pos < prefix_.size()) return prefix_[pos];
  return period_[(pos - prefix_.size()) % period_.size()];
}

Word BoundaryPoint::expand(std::size_t length) const {
  std::vector<Letter> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(letter_at(i));
  return Word::reduce(out);
}

std::uint16_t BoundaryPoint::max_index() const {
  return std::max(prefix_.max_index(), period_.max_index());
}

std::string BoundaryPoint::to_string() const {
  return relbound::to_string(prefix_) + "|" + relbound::to_string(period_);
}

BoundaryPoint BoundaryPoint::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw Error("boundary point must have the form prefix|period, got '" + std::string(text) +
                "'");
  }
  const std::string_view raw_prefix = text.substr(0, bar);
  const std::string_view raw_period = text.substr(bar + 1);
  const Word period = parse_word(raw_period);
  if (period.size() != raw_period.size()) {
    throw Error("boundary point period '" + std::string(raw_period) + "' is not reduced");
  }
  return make(parse_word(raw_prefix), period);
}

BoundaryPoint act_free(const Word& g, const BoundaryPoint& xi) {
  if (g.empty()) return xi;
  const std::size_t periods = g.size() / xi.period().size() + 2;
  // Cancellation between g and the expansion is at most |g| letters, so the
  // expansion below always survives past its prefix part.
  std::vector<Letter> letters(g.begin(), g.end());
  letters.insert(letters.end(), xi.prefix().begin(), xi.prefix().end());
  for (std::size_t k = 0; k < periods; ++k) {
    letters.insert(letters.end(), xi.period().begin(), xi.period().end());
  }
  return BoundaryPoint::make(Word::reduce(letters), xi.period());
}

std::optional<std::size_t> common_prefix_depth(const BoundaryPoint& a, const BoundaryPoint& b) {
  const std::size_t bound = std::max(a.prefix().size(), b.prefix().size()) +
                            std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (a.letter_at(i) != b.letter_at(i)) return i;
  }
  return std::nullopt;
}

std::size_t cylinder_count(unsigned rank, unsigned depth) {
  if (depth == 0) return 1;
  std::size_t count = 2u * rank;
  for (unsigned l = 1; l < depth; ++l) count *= (2u * rank - 1u);
  return count;
}

}  // namespace relbound
