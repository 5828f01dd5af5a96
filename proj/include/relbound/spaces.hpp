#ifndef RELBOUND_SPACES_HPP_
#define RELBOUND_SPACES_HPP_

#include <concepts>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "relbound/boundary.hpp"
#include "relbound/cosets.hpp"
#include "relbound/schreier.hpp"

namespace relbound {

/// A Γ-space: acting group, point type and an exact left action.
template <class S>
concept GammaSpace = requires(const S& s, const Word& g, const typename S::Point& p) {
  { s.act(g, p) } -> std::same_as<typename S::Point>;
  { s.acting_group() } -> std::convertible_to<GroupContext>;
};

/// Finite Γ-space on points 1..n, one permutation per generator.
class FiniteSpace {
 public:
  using Point = std::uint32_t;

  /// `images[g][p-1]` is the image of point p under generator g+1 (1-based points).
  FiniteSpace(GroupContext group, std::vector<std::vector<Point>> images);

  /// Γ/Λ with the coset action.
  static FiniteSpace from_cosets(const CosetTable& table);
  /// The defining action of a permutation group, points shifted to 1..m.
  static FiniteSpace natural(const GroupContext& permutation_group);
  /// Disjoint union: points of `b` are numbered after those of `a`.
  static FiniteSpace disjoint_union(const FiniteSpace& a, const FiniteSpace& b);

  const GroupContext& acting_group() const { return group_; }
  std::size_t size() const { return images_.empty() ? 0 : images_.front().size(); }

  Point act(Letter x, Point p) const;
  Point act(const Word& g, Point p) const;

  /// Orbit of p under the generated group, in discovery order.
  std::vector<Point> orbit(Point p) const;

 private:
  GroupContext group_;
  std::vector<std::vector<Point>> images_;    // [generator-1][point-1]
  std::vector<std::vector<Point>> inverses_;  // [generator-1][point-1]
};

/// The boundary of a free group of rank r. The acting group is either that free
/// group, or a finite-index subgroup Λ ≤ Γ acting through its Schreier basis.
class BoundarySpace {
 public:
  using Point = BoundaryPoint;

  static BoundarySpace free(unsigned rank);
  static BoundarySpace subgroup(std::shared_ptr<const CosetTable> table,
                                std::shared_ptr<const SchreierBasis> basis);

  unsigned rank() const { return rank_; }
  bool acts_through_subgroup() const { return table_ != nullptr; }
  /// F_r, or the ambient Γ when acting through Λ (words must then lie in Λ).
  GroupContext acting_group() const;

  /// Acting-group word to a word of the rank-r free group.
  Word to_fiber_word(const Word& g) const;
  /// Rank-r word to an acting-group word.
  Word from_fiber_word(const Word& w) const;

  Point act(const Word& g, const Point& xi) const;

 private:
  unsigned rank_ = 2;
  std::shared_ptr<const CosetTable> table_;
  std::shared_ptr<const SchreierBasis> basis_;
};

/// Fiber coordinate of an induced point: a boundary point (Λ acting through
/// the Schreier basis) or a point of a finite fiber space.
using FiberPoint = std::variant<BoundaryPoint, std::uint32_t>;

struct InducedPoint {
  Coset coset = 1;
  FiberPoint fiber;

  auto operator<=>(const InducedPoint&) const = default;
  bool operator==(const InducedPoint&) const = default;
};

std::string to_string(const InducedPoint& p);
/// Parses "(i, prefix|period)" or "(i, k)" for finite fibers.
InducedPoint parse_induced_point(std::string_view text);

/// Γ/Λ × Y with γ·(t_iΛ, y) = (γ t_i α Λ, α^{-1} y), α = α(γ, t_iΛ).
class InducedSpace {
 public:
  using Point = InducedPoint;

  /// Fiber Y = boundary of the free group on the Schreier basis of Λ.
  static InducedSpace with_boundary_fiber(const SubgroupHandle& subgroup,
                                          std::size_t max_cosets = 4096);
  /// Fiber Y = a finite Γ-space restricted to Λ.
  static InducedSpace with_finite_fiber(const SubgroupHandle& subgroup, FiniteSpace fiber,
                                        std::size_t max_cosets = 4096);

  /// Control variant: Λ acts trivially on the fiber. Not a boundary.
  InducedSpace with_fiber_action_disabled() const;

  const GroupContext& acting_group() const { return table_->ambient(); }
  const SubgroupHandle& subgroup() const { return subgroup_; }
  const CosetTable& table() const { return *table_; }
  std::shared_ptr<const CosetTable> table_ptr() const { return table_; }
  std::size_t index() const { return table_->index(); }

  bool has_boundary_fiber() const { return fiber_.index() == 0; }
  const BoundarySpace& boundary_fiber() const { return std::get<BoundarySpace>(fiber_); }
  const FiniteSpace& finite_fiber() const { return std::get<FiniteSpace>(fiber_); }
  bool fiber_action_enabled() const { return fiber_enabled_; }
  /// Rank of the fiber free group (boundary fibers only).
  unsigned fiber_rank() const { return boundary_fiber().rank(); }

  /// Acts on a fiber point by λ ∈ Λ.
  FiberPoint act_fiber(const Word& lambda, const FiberPoint& y) const;

  Point act(const Word& gamma, const Point& p) const;

  /// Finite spaces only: the induced space as a plain finite Γ-space, point
  /// (i, y) numbered (i-1)·|Y| + y.
  FiniteSpace flatten() const;

 private:
  InducedSpace() = default;

  SubgroupHandle subgroup_;
  std::shared_ptr<const CosetTable> table_;
  std::variant<BoundarySpace, FiniteSpace> fiber_;
  bool fiber_enabled_ = true;
};

inline FiniteSpace::Point act_finite(const FiniteSpace& x, const Word& g, FiniteSpace::Point p) {
  return x.act(g, p);
}
inline BoundaryPoint act_boundary(const BoundarySpace& y, const Word& g, const BoundaryPoint& xi) {
  return y.act(g, xi);
}
inline InducedPoint act_induced(const InducedSpace& y, const Word& g, const InducedPoint& p) {
  return y.act(g, p);
}

/// φ: Γ/Λ × Y → Γ/Λ, (i, y) ↦ i.
class InducedProjection {
 public:
  using SourcePoint = InducedPoint;
  using TargetPoint = FiniteSpace::Point;

  explicit InducedProjection(InducedSpace source)
      : source_(std::move(source)), target_(FiniteSpace::from_cosets(source_.table())) {}

  const InducedSpace& source() const { return source_; }
  const FiniteSpace& target() const { return target_; }
  TargetPoint apply(const SourcePoint& p) const { return p.coset; }

 private:
  InducedSpace source_;
  FiniteSpace target_;
};

/// An equivariant surjection between finite Γ-spaces given by a point map.
class FiniteExtension {
 public:
  using SourcePoint = FiniteSpace::Point;
  using TargetPoint = FiniteSpace::Point;

  /// Throws unless `map` is surjective and equivariant on every generator.
  FiniteExtension(FiniteSpace source, FiniteSpace target, std::vector<TargetPoint> map,
                  std::string label = {});

  static FiniteExtension identity(const FiniteSpace& x);
  /// Y = X × {1..copies} with trivial action on the second factor.
  static FiniteExtension product(const FiniteSpace& x, std::uint32_t copies);
  /// Y = Γ acting on itself by left multiplication, g ↦ g·x_1 (finite Γ only).
  static FiniteExtension regular(const FiniteSpace& x);
  /// Flattened induced space with finite fiber, projected to Γ/Λ.
  static FiniteExtension from_induced(const InducedSpace& y);

  const FiniteSpace& source() const { return source_; }
  const FiniteSpace& target() const { return target_; }
  const std::string& label() const { return label_; }
  TargetPoint apply(SourcePoint p) const { return map_.at(p - 1); }
  std::vector<SourcePoint> fiber(TargetPoint x) const;

 private:
  FiniteSpace source_;
  FiniteSpace target_;
  std::vector<TargetPoint> map_;
  std::string label_;
};

inline InducedProjection::TargetPoint extension_apply(const InducedProjection& phi,
                                                      const InducedPoint& p) {
  return phi.apply(p);
}
inline FiniteExtension::TargetPoint extension_apply(const FiniteExtension& phi,
                                                    FiniteSpace::Point p) {
  return phi.apply(p);
}

class NotTransitive : public Error {
 public:
  using Error::Error;
};

/// Λ_x = {γ : γ·x = x}, generated by the Schreier generators of a
/// breadth-first spanning tree of the orbit (tree depth at most `radius`).
SubgroupHandle stabilizer_subgroup(const FiniteSpace& x, FiniteSpace::Point point,
                                   unsigned radius);

/// A shortest word moving x_from to x_to (shortlex-minimal).
Word transporter(const FiniteSpace& x, FiniteSpace::Point from, FiniteSpace::Point to);

}  // namespace relbound

#endif  // RELBOUND_SPACES_HPP_
