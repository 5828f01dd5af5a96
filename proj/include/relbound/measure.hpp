#ifndef RELBOUND_MEASURE_HPP_
#define RELBOUND_MEASURE_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relbound/spaces.hpp"

namespace relbound {

/// Exact rational weight.
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kMassTolerance = 1e-12;

/// "p/q" (always with a denominator).
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

namespace detail {
inline bool is_unit_mass(const Rational& total) { return total == 1; }
inline bool is_unit_mass(double total) { return std::abs(total - 1.0) <= kMassTolerance; }
inline bool is_positive(const Rational& w) { return w > 0; }
inline bool is_positive(double w) { return w > 0.0; }
inline double to_double(const Rational& w) { return w.convert_to<double>(); }
inline double to_double(double w) { return w; }
}  // namespace detail

/// Finitely supported probability measure. Atoms are kept sorted by point and
/// pairwise distinct; weights are positive and sum to one (exactly for
/// rationals, within kMassTolerance for doubles).
template <class P, class W = Rational>
class AtomicMeasure {
 public:
  using Point = P;
  using Weight = W;
  using Atom = std::pair<P, W>;

  /// Merges coincident points and validates the total mass.
  static AtomicMeasure from_atoms(std::vector<Atom> atoms) {
    AtomicMeasure m;
    m.atoms_ = merge(std::move(atoms));
    if (m.atoms_.empty()) throw Error("measure needs at least one atom");
    W total{0};
    for (const auto& [p, w] : m.atoms_) {
      if (!detail::is_positive(w)) throw Error("measure weights must be positive");
      total += w;
    }
    if (!detail::is_unit_mass(total)) throw Error("measure weights must sum to 1");
    return m;
  }

  static AtomicMeasure dirac(P p) {
    AtomicMeasure m;
    m.atoms_.emplace_back(std::move(p), W{1});
    return m;
  }

  /// Equal weights on distinct points.
  static AtomicMeasure uniform(const std::vector<P>& points) {
    std::vector<Atom> atoms;
    for (const auto& p : points) atoms.emplace_back(p, W{1} / W(points.size()));
    return from_atoms(std::move(atoms));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool is_dirac() const { return atoms_.size() == 1; }

  std::vector<P> support() const {
    std::vector<P> out;
    for (const auto& a : atoms_) out.push_back(a.first);
    return out;
  }

  W total_mass() const {
    W total{0};
    for (const auto& a : atoms_) total += a.second;
    return total;
  }

  /// Sorted weights; invariant under any bijective push-forward.
  std::vector<W> weight_multiset() const {
    std::vector<W> out;
    for (const auto& a : atoms_) out.push_back(a.second);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Image under a point map, merging coincident images by weight addition.
  template <class F>
  auto map(F&& f) const {
    using Q = std::decay_t<decltype(f(atoms_.front().first))>;
    std::vector<std::pair<Q, W>> out;
    out.reserve(atoms_.size());
    for (const auto& [p, w] : atoms_) out.emplace_back(f(p), w);
    AtomicMeasure<Q, W> m;
    m.atoms_ = AtomicMeasure<Q, W>::merge(std::move(out));
    return m;
  }

  bool operator==(const AtomicMeasure&) const = default;
  auto operator<=>(const AtomicMeasure&) const = default;

 private:
  template <class, class>
  friend class AtomicMeasure;

  static std::vector<Atom> merge(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.first < b.first; });
    std::vector<Atom> out;
    for (auto& a : atoms) {
      if (!out.empty() && out.back().first == a.first) {
        out.back().second += a.second;
      } else {
        out.push_back(std::move(a));
      }
    }
    return out;
  }

  std::vector<Atom> atoms_;
};

template <class P, class W = Rational>
AtomicMeasure<P, W> dirac(P p) {
  return AtomicMeasure<P, W>::dirac(std::move(p));
}

/// γ_* ν, with (γν)(E) = ν(γ^{-1}E).
template <GammaSpace S, class W>
AtomicMeasure<typename S::Point, W> pushforward_group(const S& space, const Word& gamma,
                                                      const AtomicMeasure<typename S::Point, W>& nu) {
  return nu.map([&](const typename S::Point& p) { return space.act(gamma, p); });
}

/// Applies a sequence of steps in order (steps[0] first).
template <GammaSpace S, class W>
AtomicMeasure<typename S::Point, W> pushforward_steps(const S& space,
                                                      const std::vector<Word>& steps,
                                                      AtomicMeasure<typename S::Point, W> nu) {
  for (const auto& g : steps) nu = pushforward_group(space, g, nu);
  return nu;
}

/// φ_* ν.
template <class Map, class W>
AtomicMeasure<typename Map::TargetPoint, W> pushforward_map(
    const Map& phi, const AtomicMeasure<typename Map::SourcePoint, W>& nu) {
  return nu.map([&](const typename Map::SourcePoint& p) { return phi.apply(p); });
}

/// The base point x with supp(ν) ⊆ φ^{-1}(x), if any.
template <class Map, class W>
std::optional<typename Map::TargetPoint> is_fiber_supported(
    const Map& phi, const AtomicMeasure<typename Map::SourcePoint, W>& nu) {
  std::optional<typename Map::TargetPoint> base;
  for (const auto& [p, w] : nu.atoms()) {
    const auto x = phi.apply(p);
    if (base && *base != x) return std::nullopt;
    base = x;
  }
  return base;
}

}  // namespace relbound

#endif  // RELBOUND_MEASURE_HPP_
