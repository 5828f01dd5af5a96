#ifndef RELBOUND_POISSON_HPP_
#define RELBOUND_POISSON_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "json.hpp"
#include "relbound/measure.hpp"

namespace relbound {

/// A depth-d cylinder: coset (1 for plain boundary spaces, the point itself for
/// finite spaces) and the first d letters of the fiber expansion.
struct CylinderKey {
  Coset coset = 1;
  Word prefix;

  auto operator<=>(const CylinderKey&) const = default;
  bool operator==(const CylinderKey&) const = default;
};

/// Locally constant function, constant on depth-d cylinders. Stored sparsely:
/// listed cylinders carry their value, every other cylinder carries `fallback`.
class CylinderFunction {
 public:
  /// `cosets` copies of the rank-`rank` boundary (rank 0 and depth 0 for finite spaces).
  CylinderFunction(unsigned depth, std::size_t cosets, unsigned rank, double fallback = 0.0);

  static CylinderFunction constant(double c, unsigned depth, std::size_t cosets, unsigned rank) {
    return CylinderFunction(depth, cosets, rank, c);
  }

  void set(CylinderKey key, double value);

  unsigned depth() const { return depth_; }
  std::size_t cosets() const { return cosets_; }
  unsigned rank() const { return rank_; }
  double fallback() const { return fallback_; }
  const std::map<CylinderKey, double>& entries() const { return entries_; }

  double value(const CylinderKey& key) const;
  /// sup norm, attained on some cylinder.
  double norm() const;
  /// A cylinder where |f| = ‖f‖.
  CylinderKey maximizing_cylinder() const;

  CylinderKey key_of(const BoundaryPoint& xi) const { return {1, xi.expand(depth_)}; }
  CylinderKey key_of(const InducedPoint& p) const;
  CylinderKey key_of(std::uint32_t p) const { return {p, {}}; }

  template <class P>
  double operator()(const P& p) const {
    return value(key_of(p));
  }

  /// {depth, cosets, rank, default, entries: [{cylinder, coset, value}]}.
  nlohmann::json to_json() const;
  static CylinderFunction from_json(const nlohmann::json& j);

 private:
  std::size_t total_cylinders() const;
  std::optional<CylinderKey> first_unlisted() const;

  unsigned depth_;
  std::size_t cosets_;
  unsigned rank_;
  double fallback_;
  std::map<CylinderKey, double> entries_;
};

/// Function on a finite ball of the acting group.
struct BallFunction {
  unsigned radius = 0;
  std::vector<std::pair<Word, double>> entries;  // sorted shortlex by word

  double at(const Word& s) const;
  double max_abs() const;
  nlohmann::json to_json() const;
};

/// Ball of the acting group of a space, in shortlex order of its own generators.
std::vector<Word> acting_ball(const BoundarySpace& space, unsigned radius,
                              std::size_t cap = kDefaultBallCap);
std::vector<Word> acting_ball(const InducedSpace& space, unsigned radius,
                              std::size_t cap = kDefaultBallCap);
std::vector<Word> acting_ball(const FiniteSpace& space, unsigned radius,
                              std::size_t cap = kDefaultBallCap);

/// Word length of an acting-group element in the acting group's own generators.
inline unsigned acting_length(const BoundarySpace& space, const Word& s) {
  return static_cast<unsigned>(space.to_fiber_word(s).size());
}
inline unsigned acting_length(const InducedSpace&, const Word& s) {
  return static_cast<unsigned>(s.size());
}
inline unsigned acting_length(const FiniteSpace&, const Word& s) {
  return static_cast<unsigned>(s.size());
}

/// Caches s·ν for every s in a ball so that many functions and radii can be
/// evaluated: P_ν(f)(s) = Σ w · f(s·p).
template <GammaSpace S>
class PoissonEvaluator {
 public:
  using Point = typename S::Point;

  template <class W>
  PoissonEvaluator(const S& space, const AtomicMeasure<Point, W>& nu, unsigned radius,
                   std::size_t cap = kDefaultBallCap)
      : radius_(radius), ball_(acting_ball(space, radius, cap)) {
    images_.reserve(ball_.size());
    for (const auto& s : ball_) {
      std::vector<std::pair<Point, double>> img;
      img.reserve(nu.size());
      for (const auto& [p, w] : nu.atoms()) img.emplace_back(space.act(s, p), detail::to_double(w));
      images_.push_back(std::move(img));
    }
    for (const auto& s : ball_) lengths_.push_back(acting_length(space, s));
  }

  unsigned radius() const { return radius_; }

  double evaluate(std::size_t k, const CylinderFunction& f) const {
    double total = 0.0;
    for (const auto& [q, w] : images_[k]) total += w * f(q);
    return total;
  }

  BallFunction transform(const CylinderFunction& f, unsigned radius) const {
    check_radius(radius);
    BallFunction out;
    out.radius = radius;
    for (std::size_t k = 0; k < ball_.size(); ++k) {
      if (lengths_[k] <= radius) out.entries.emplace_back(ball_[k], evaluate(k, f));
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  double max_abs(const CylinderFunction& f, unsigned radius) const {
    check_radius(radius);
    double best = 0.0;
    for (std::size_t k = 0; k < ball_.size(); ++k) {
      if (lengths_[k] <= radius) best = std::max(best, std::abs(evaluate(k, f)));
    }
    return best;
  }

  /// ‖f‖ − max_{|s| ≤ R} |P_ν(f)(s)|, clamped at zero.
  double defect(const CylinderFunction& f, unsigned radius) const {
    const double norm = f.norm();
    if (!(norm > 0.0)) throw Error("isometry defect needs a function with positive norm");
    return std::max(0.0, norm - max_abs(f, radius));
  }

 private:
  void check_radius(unsigned radius) const {
    if (radius > radius_) throw Error("radius exceeds the evaluator's ball");
  }

  unsigned radius_;
  std::vector<Word> ball_;
  std::vector<unsigned> lengths_;
  std::vector<std::vector<std::pair<Point, double>>> images_;
};

template <GammaSpace S, class W>
BallFunction poisson_transform(const S& space, const AtomicMeasure<typename S::Point, W>& nu,
                               const CylinderFunction& f, unsigned radius) {
  return PoissonEvaluator<S>(space, nu, radius).transform(f, radius);
}

template <GammaSpace S, class W>
double isometry_defect(const S& space, const AtomicMeasure<typename S::Point, W>& nu,
                       const CylinderFunction& f, unsigned radius) {
  return PoissonEvaluator<S>(space, nu, radius).defect(f, radius);
}

/// Upper bound on the isometry defect at radius |witness|, from the single
/// ball element `witness`: ‖f‖ − |P_ν(f)(witness)|, clamped at zero.
template <GammaSpace S, class W>
double isometry_defect_bound(const S& space, const AtomicMeasure<typename S::Point, W>& nu,
                             const CylinderFunction& f, const Word& witness) {
  const double norm = f.norm();
  if (!(norm > 0.0)) throw Error("isometry defect needs a function with positive norm");
  double total = 0.0;
  for (const auto& [p, w] : nu.atoms()) total += detail::to_double(w) * f(space.act(witness, p));
  return std::max(0.0, norm - std::abs(total));
}

}  // namespace relbound

#endif  // RELBOUND_POISSON_HPP_
