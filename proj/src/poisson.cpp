#include "relbound/poisson.hpp"

#include <functional>

namespace relbound {

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  auto parse_int = [&](std::string_view s) {
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string_view::npos) {
      throw Error("invalid rational '" + std::string(text) + "'");
    }
    return boost::multiprecision::cpp_int(std::string(s));
  };
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto num = parse_int(text.substr(0, slash));
  const auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error("rational with zero denominator");
  return Rational(num, den);
}

CylinderFunction::CylinderFunction(unsigned depth, std::size_t cosets, unsigned rank,
                                   double fallback)
    : depth_(depth), cosets_(cosets), rank_(rank), fallback_(fallback) {
  if (cosets_ < 1) throw Error("cylinder function needs at least one coset");
  if (rank_ == 0 && depth_ != 0) throw Error("finite-space functions have depth 0");
}

void CylinderFunction::set(CylinderKey key, double value) {
  if (key.coset < 1 || key.coset > cosets_) throw Error("cylinder coset out of range");
  if (key.prefix.size() != depth_) {
    throw Error("cylinder '" + to_string(key.prefix) + "' does not have depth " +
                std::to_string(depth_));
  }
  if (key.prefix.max_index() > rank_) throw Error("cylinder uses letters beyond the rank");
  entries_[std::move(key)] = value;
}

double CylinderFunction::value(const CylinderKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback_ : it->second;
}

CylinderKey CylinderFunction::key_of(const InducedPoint& p) const {
  if (const auto* xi = std::get_if<BoundaryPoint>(&p.fiber)) return {p.coset, xi->expand(depth_)};
  throw Error("cylinder functions on induced spaces need boundary fibers");
}

std::size_t CylinderFunction::total_cylinders() const {
  return cosets_ * (rank_ == 0 ? 1 : cylinder_count(rank_, depth_));
}

double CylinderFunction::norm() const {
  double best = entries_.size() < total_cylinders() ? std::abs(fallback_) : 0.0;
  for (const auto& [key, v] : entries_) best = std::max(best, std::abs(v));
  return best;
}

std::optional<CylinderKey> CylinderFunction::first_unlisted() const {
  if (entries_.size() >= total_cylinders()) return std::nullopt;
  // Depth-first over reduced words in shortlex order; terminates because only
  // finitely many cylinders are listed.
  std::optional<CylinderKey> found;
  std::vector<Letter> stack;
  std::function<bool(Coset)> visit = [&](Coset c) -> bool {
    if (stack.size() == depth_) {
      CylinderKey key{c, Word::reduce(stack)};
      if (!entries_.contains(key)) {
        found = std::move(key);
        return true;
      }
      return false;
    }
    for (std::size_t s = 0; s < 2u * rank_; ++s) {
      const Letter x = Letter::from_slot(s);
      if (!stack.empty() && stack.back().cancels(x)) continue;
      stack.push_back(x);
      if (visit(c)) return true;
      stack.pop_back();
    }
    return false;
  };
  for (Coset c = 1; c <= cosets_; ++c) {
    if (visit(c)) return found;
  }
  return std::nullopt;
}

CylinderKey CylinderFunction::maximizing_cylinder() const {
  const double n = norm();
  for (const auto& [key, v] : entries_) {
    if (std::abs(v) == n) return key;
  }
  if (auto key = first_unlisted()) return *key;
  throw Error("cylinder function has no maximizing cylinder");
}

nlohmann::json CylinderFunction::to_json() const {
  nlohmann::json j;
  j["depth"] = depth_;
  j["cosets"] = cosets_;
  j["rank"] = rank_;
  j["default"] = fallback_;
  auto& entries = j["entries"] = nlohmann::json::array();
  for (const auto& [key, v] : entries_) {
    entries.push_back({{"cylinder", to_string(key.prefix)}, {"coset", key.coset}, {"value", v}});
  }
  return j;
}

CylinderFunction CylinderFunction::from_json(const nlohmann::json& j) {
  CylinderFunction f(j.at("depth").get<unsigned>(), j.value("cosets", std::size_t{1}),
                     j.at("rank").get<unsigned>(), j.value("default", 0.0));
  for (const auto& e : j.value("entries", nlohmann::json::array())) {
    const std::string text = e.at("cylinder").get<std::string>();
    const Word w = parse_word(text);
    if (w.size() != text.size()) throw Error("cylinder word '" + text + "' is not reduced");
    f.set(CylinderKey{e.value("coset", Coset{1}), w}, e.at("value").get<double>());
  }
  return f;
}

double BallFunction::at(const Word& s) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), s,
                             [](const auto& e, const Word& w) { return e.first < w; });
  if (it == entries.end() || it->first != s) throw Error("word outside the ball");
  return it->second;
}

double BallFunction::max_abs() const {
  double best = 0.0;
  for (const auto& [w, v] : entries) best = std::max(best, std::abs(v));
  return best;
}

nlohmann::json BallFunction::to_json() const {
  nlohmann::json j;
  j["radius"] = radius;
  auto& e = j["entries"] = nlohmann::json::array();
  for (const auto& [w, v] : entries) e.push_back({{"word", to_string(w)}, {"value", v}});
  return j;
}

std::vector<Word> acting_ball(const BoundarySpace& space, unsigned radius, std::size_t cap) {
  std::vector<Word> ball = GroupContext::free_group(space.rank()).ball(radius, cap);
  if (space.acts_through_subgroup()) {
    for (auto& w : ball) w = space.from_fiber_word(w);
  }
  return ball;
}

std::vector<Word> acting_ball(const InducedSpace& space, unsigned radius, std::size_t cap) {
  return space.acting_group().ball(radius, cap);
}

std::vector<Word> acting_ball(const FiniteSpace& space, unsigned radius, std::size_t cap) {
  return space.acting_group().ball(radius, cap);
}

}  // namespace relbound
