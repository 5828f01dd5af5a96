#ifndef RELBOUND_BOUNDARY_HPP_
#define RELBOUND_BOUNDARY_HPP_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "relbound/word.hpp"

namespace relbound {

/// Eventually periodic point prefix · period^∞ of the Gromov boundary of a free
/// group, held in normal form:
///  - the infinite word is reduced (seam cancellation is absorbed on construction),
///  - the period is primitive,
///  - the prefix is as short as possible (its last letter differs from the period's).
/// Normal forms are unique, so equality is structural.
class BoundaryPoint {
 public:
  /// Validates and normalizes. Throws if the period is empty or not cyclically reduced.
  static BoundaryPoint make(const Word& prefix, const Word& period);
  /// x^∞ for a single letter.
  static BoundaryPoint ray(Letter x);

  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }

  Letter letter_at(std::size_t pos) const;
  /// First `length` letters of the infinite expansion.
  Word expand(std::size_t length) const;

  std::uint16_t max_index() const;

  /// "prefix|period", e.g. "|a" = a^∞.
  std::string to_string() const;
  static BoundaryPoint parse(std::string_view text);

  auto operator<=>(const BoundaryPoint&) const = default;
  bool operator==(const BoundaryPoint&) const = default;

 private:
  Word prefix_;
  Word period_{Word::generator(1)};
};

/// Exact left action of a free-group word on a boundary point.
BoundaryPoint act_free(const Word& g, const BoundaryPoint& xi);

/// Length of the longest common prefix of the two expansions, or nullopt when
/// the points are equal.
std::optional<std::size_t> common_prefix_depth(const BoundaryPoint& a, const BoundaryPoint& b);

/// Number of depth-d cylinders of the rank-r boundary: 2r(2r-1)^{d-1}, or 1 for d = 0.
std::size_t cylinder_count(unsigned rank, unsigned depth);

}  // namespace relbound

#endif  // RELBOUND_BOUNDARY_HPP_
