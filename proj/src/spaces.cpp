#include "relbound/spaces.hpp"

#include <charconv>
#include <map>
#include <set>

namespace relbound {

// ---------------------------------------------------------------- FiniteSpace

FiniteSpace::FiniteSpace(GroupContext group, std::vector<std::vector<Point>> images)
    : group_(std::move(group)), images_(std::move(images)) {
  if (images_.size() != group_.rank()) {
    throw Error("finite space needs one permutation per generator (" +
                std::to_string(group_.rank()) + ")");
  }
  const std::size_t n = images_.front().size();
  if (n == 0) throw Error("finite space must be nonempty");
  for (const auto& img : images_) {
    Permutation p(n);
    if (img.size() != n) throw Error("finite space permutations differ in size");
    for (std::size_t i = 0; i < n; ++i) {
      if (img[i] < 1 || img[i] > n) throw Error("finite space point out of range");
      p[i] = img[i] - 1;
    }
    if (!is_bijection(p)) throw Error("finite space generator does not act bijectively");
    const Permutation q = invert(p);
    std::vector<Point> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = q[i] + 1;
    inverses_.push_back(std::move(inv));
  }
}

FiniteSpace FiniteSpace::from_cosets(const CosetTable& table) {
  std::vector<std::vector<Point>> images;
  for (std::uint16_t g = 1; g <= table.ambient().rank(); ++g) {
    std::vector<Point> img(table.index());
    for (Coset i = 1; i <= table.index(); ++i) img[i - 1] = table.act(Letter{g, false}, i);
    images.push_back(std::move(img));
  }
  return FiniteSpace(table.ambient(), std::move(images));
}

FiniteSpace FiniteSpace::natural(const GroupContext& permutation_group) {
  if (permutation_group.is_free()) throw Error("natural action requires a permutation group");
  std::vector<std::vector<Point>> images;
  for (const auto& perm : permutation_group.generators()) {
    std::vector<Point> img(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) img[i] = perm[i] + 1;
    images.push_back(std::move(img));
  }
  return FiniteSpace(permutation_group, std::move(images));
}

FiniteSpace FiniteSpace::disjoint_union(const FiniteSpace& a, const FiniteSpace& b) {
  if (!(a.group_ == b.group_)) throw Error("disjoint union needs a common acting group");
  std::vector<std::vector<Point>> images;
  const auto shift = static_cast<Point>(a.size());
  for (std::size_t g = 0; g < a.images_.size(); ++g) {
    std::vector<Point> img = a.images_[g];
    for (Point p : b.images_[g]) img.push_back(p + shift);
    images.push_back(std::move(img));
  }
  return FiniteSpace(a.group_, std::move(images));
}

FiniteSpace::Point FiniteSpace::act(Letter x, Point p) const {
  const auto& table = x.inverse ? inverses_ : images_;
  return table.at(x.index - 1u).at(p - 1);
}

FiniteSpace::Point FiniteSpace::act(const Word& g, Point p) const {
  if (p < 1 || p > size()) throw Error("finite space point out of range");
  for (auto it = g.letters().rbegin(); it != g.letters().rend(); ++it) p = act(*it, p);
  return p;
}

std::vector<FiniteSpace::Point> FiniteSpace::orbit(Point p) const {
  std::vector<Point> out{p};
  std::vector<bool> seen(size() + 1, false);
  seen[p] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Letter x : group_.alphabet()) {
      const Point q = act(x, out[head]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  }
  return out;
}

// -------------------------------------------------------------- BoundarySpace

BoundarySpace BoundarySpace::free(unsigned rank) {
  if (rank < 2) throw Error("boundary space needs a free group of rank >= 2");
  BoundarySpace y;
  y.rank_ = rank;
  return y;
}

BoundarySpace BoundarySpace::subgroup(std::shared_ptr<const CosetTable> table,
                                      std::shared_ptr<const SchreierBasis> basis) {
  if (basis->rank() < 2) throw Error("boundary space needs a subgroup of rank >= 2");
  BoundarySpace y;
  y.rank_ = static_cast<unsigned>(basis->rank());
  y.table_ = std::move(table);
  y.basis_ = std::move(basis);
  return y;
}

GroupContext BoundarySpace::acting_group() const {
  return table_ ? table_->ambient() : GroupContext::free_group(rank_);
}

Word BoundarySpace::to_fiber_word(const Word& g) const {
  if (!table_) {
    if (g.max_index() > rank_) throw Error("word uses generators beyond the boundary rank");
    return g;
  }
  return rewrite_in_basis(*table_, *basis_, g);
}

Word BoundarySpace::from_fiber_word(const Word& w) const {
  return table_ ? basis_->evaluate(w) : w;
}

BoundaryPoint BoundarySpace::act(const Word& g, const BoundaryPoint& xi) const {
  return act_free(to_fiber_word(g), xi);
}

// --------------------------------------------------------------- InducedSpace

std::string to_string(const InducedPoint& p) {
  std::string fiber = std::holds_alternative<BoundaryPoint>(p.fiber)
                          ? std::get<BoundaryPoint>(p.fiber).to_string()
                          : std::to_string(std::get<std::uint32_t>(p.fiber));
  return "(" + std::to_string(p.coset) + ", " + fiber + ")";
}

InducedPoint parse_induced_point(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto comma = text.find(',');
  if (text.size() < 5 || text.front() != '(' || text.back() != ')' ||
      comma == std::string_view::npos) {
    throw Error("induced point must look like (i, prefix|period), got '" + std::string(text) +
                "'");
  }
  const std::string_view coset_text = trim(text.substr(1, comma - 1));
  const std::string_view fiber_text = trim(text.substr(comma + 1, text.size() - comma - 2));
  InducedPoint p;
  auto [ptr, ec] = std::from_chars(coset_text.data(), coset_text.data() + coset_text.size(),
                                   p.coset);
  if (ec != std::errc() || ptr != coset_text.data() + coset_text.size() || p.coset < 1) {
    throw Error("invalid coset index '" + std::string(coset_text) + "'");
  }
  if (fiber_text.find('|') != std::string_view::npos) {
    p.fiber = BoundaryPoint::parse(fiber_text);
  } else {
    std::uint32_t y = 0;
    auto [p2, ec2] = std::from_chars(fiber_text.data(), fiber_text.data() + fiber_text.size(), y);
    if (ec2 != std::errc() || p2 != fiber_text.data() + fiber_text.size() || y < 1) {
      throw Error("invalid fiber point '" + std::string(fiber_text) + "'");
    }
    p.fiber = y;
  }
  return p;
}

InducedSpace InducedSpace::with_boundary_fiber(const SubgroupHandle& subgroup,
                                               std::size_t max_cosets) {
  if (!subgroup.ambient.is_free()) throw Error("boundary fibers need a free ambient group");
  InducedSpace y;
  y.subgroup_ = subgroup;
  y.table_ = std::make_shared<const CosetTable>(enumerate_cosets(subgroup, max_cosets));
  auto basis = std::make_shared<const SchreierBasis>(schreier_basis(*y.table_));
  y.fiber_ = BoundarySpace::subgroup(y.table_, std::move(basis));
  return y;
}

InducedSpace InducedSpace::with_finite_fiber(const SubgroupHandle& subgroup, FiniteSpace fiber,
                                             std::size_t max_cosets) {
  if (!(fiber.acting_group() == subgroup.ambient)) {
    throw Error("finite fiber must be a space of the ambient group");
  }
  InducedSpace y;
  y.subgroup_ = subgroup;
  y.table_ = std::make_shared<const CosetTable>(enumerate_cosets(subgroup, max_cosets));
  y.fiber_ = std::move(fiber);
  return y;
}

InducedSpace InducedSpace::with_fiber_action_disabled() const {
  InducedSpace y = *this;
  y.fiber_enabled_ = false;
  return y;
}

FiberPoint InducedSpace::act_fiber(const Word& lambda, const FiberPoint& y) const {
  if (!table_->contains(lambda)) {
    throw NotInSubgroup("fiber action by " + to_string(lambda) + ", which is not in the subgroup");
  }
  if (!fiber_enabled_) return y;
  if (has_boundary_fiber()) {
    return boundary_fiber().act(lambda, std::get<BoundaryPoint>(y));
  }
  return finite_fiber().act(lambda, std::get<std::uint32_t>(y));
}

InducedPoint InducedSpace::act(const Word& gamma, const InducedPoint& p) const {
  if (p.coset < 1 || p.coset > index()) throw Error("induced point coset out of range");
  if (has_boundary_fiber() != std::holds_alternative<BoundaryPoint>(p.fiber)) {
    throw Error("induced point fiber has the wrong kind");
  }
  const Word alpha = table_->cocycle(gamma, p.coset);
  InducedPoint out;
  out.coset = table_->act(gamma, p.coset);
  out.fiber = act_fiber(inverse(alpha), p.fiber);
  return out;
}

FiniteSpace InducedSpace::flatten() const {
  if (has_boundary_fiber()) throw Error("only induced spaces with finite fibers flatten");
  const FiniteSpace& y = finite_fiber();
  const auto m = static_cast<std::uint32_t>(y.size());
  const auto n = static_cast<std::uint32_t>(index());
  std::vector<std::vector<FiniteSpace::Point>> images;
  for (std::uint16_t g = 1; g <= acting_group().rank(); ++g) {
    std::vector<FiniteSpace::Point> img(static_cast<std::size_t>(n) * m);
    for (Coset i = 1; i <= n; ++i) {
      for (std::uint32_t k = 1; k <= m; ++k) {
        const InducedPoint q = act(Word::generator(g), InducedPoint{i, k});
        img[(i - 1) * m + (k - 1)] = (q.coset - 1) * m + std::get<std::uint32_t>(q.fiber);
      }
    }
    images.push_back(std::move(img));
  }
  return FiniteSpace(acting_group(), std::move(images));
}

// ------------------------------------------------------------ FiniteExtension

FiniteExtension::FiniteExtension(FiniteSpace source, FiniteSpace target,
                                 std::vector<TargetPoint> map, std::string label)
    : source_(std::move(source)),
      target_(std::move(target)),
      map_(std::move(map)),
      label_(std::move(label)) {
  if (!(source_.acting_group() == target_.acting_group())) {
    throw Error("extension spaces must share the acting group");
  }
  if (map_.size() != source_.size()) throw Error("extension map must be total on the source");
  std::vector<bool> hit(target_.size() + 1, false);
  for (auto x : map_) {
    if (x < 1 || x > target_.size()) throw Error("extension map lands outside the target");
    hit[x] = true;
  }
  for (std::size_t x = 1; x <= target_.size(); ++x) {
    if (!hit[x]) throw Error("extension map is not surjective (misses " + std::to_string(x) + ")");
  }
  for (Letter g : source_.acting_group().alphabet()) {
    for (SourcePoint p = 1; p <= source_.size(); ++p) {
      if (apply(source_.act(g, p)) != target_.act(g, apply(p))) {
        throw Error("extension map is not equivariant (generator " +
                    std::string(1, letter_char(g)) + ", point " + std::to_string(p) + ")");
      }
    }
  }
}

FiniteExtension FiniteExtension::identity(const FiniteSpace& x) {
  std::vector<TargetPoint> map(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) map[p] = static_cast<TargetPoint>(p + 1);
  return FiniteExtension(x, x, std::move(map), "identity");
}

FiniteExtension FiniteExtension::product(const FiniteSpace& x, std::uint32_t copies) {
  if (copies < 1) throw Error("product extension needs at least one copy");
  FiniteSpace y = x;
  for (std::uint32_t c = 1; c < copies; ++c) y = FiniteSpace::disjoint_union(y, x);
  std::vector<TargetPoint> map(y.size());
  for (std::size_t p = 0; p < y.size(); ++p) map[p] = static_cast<TargetPoint>(p % x.size() + 1);
  return FiniteExtension(std::move(y), x, std::move(map),
                         "product x" + std::to_string(copies));
}

FiniteExtension FiniteExtension::regular(const FiniteSpace& x) {
  const GroupContext& ctx = x.acting_group();
  if (ctx.is_free()) throw Error("regular extension needs a finite acting group");
  const std::vector<Word> elements = ctx.ball(std::numeric_limits<unsigned>::max());
  std::map<Permutation, FiniteSpace::Point> index_of;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    index_of.emplace(ctx.permutation_of(elements[e]), static_cast<FiniteSpace::Point>(e + 1));
  }
  std::vector<std::vector<FiniteSpace::Point>> images;
  for (std::uint16_t g = 1; g <= ctx.rank(); ++g) {
    const Permutation pg = ctx.generators()[g - 1];
    std::vector<FiniteSpace::Point> img(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e) {
      img[e] = index_of.at(compose(pg, ctx.permutation_of(elements[e])));
    }
    images.push_back(std::move(img));
  }
  std::vector<TargetPoint> map(elements.size());
  for (std::size_t e = 0; e < elements.size(); ++e) map[e] = x.act(elements[e], 1);
  return FiniteExtension(FiniteSpace(ctx, std::move(images)), x, std::move(map), "regular");
}

FiniteExtension FiniteExtension::from_induced(const InducedSpace& y) {
  FiniteSpace flat = y.flatten();
  const auto m = static_cast<std::uint32_t>(y.finite_fiber().size());
  std::vector<TargetPoint> map(flat.size());
  for (std::size_t p = 0; p < flat.size(); ++p) map[p] = static_cast<TargetPoint>(p / m + 1);
  return FiniteExtension(std::move(flat), FiniteSpace::from_cosets(y.table()), std::move(map),
                         "induced");
}

std::vector<FiniteExtension::SourcePoint> FiniteExtension::fiber(TargetPoint x) const {
  std::vector<SourcePoint> out;
  for (std::size_t p = 0; p < map_.size(); ++p) {
    if (map_[p] == x) out.push_back(static_cast<SourcePoint>(p + 1));
  }
  return out;
}

// ----------------------------------------------------------------- stabilizers

namespace {

/// Breadth-first spanning tree words t_q with t_q · root = q.
std::vector<Word> spanning_words(const FiniteSpace& x, FiniteSpace::Point root, unsigned radius,
                                 bool require_transitive) {
  std::vector<Word> word(x.size() + 1);
  std::vector<bool> seen(x.size() + 1, false);
  std::vector<FiniteSpace::Point> order{root};
  seen[root] = true;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const FiniteSpace::Point p = order[head];
    for (Letter l : x.acting_group().alphabet()) {
      const FiniteSpace::Point q = x.act(l, p);
      if (seen[q]) continue;
      seen[q] = true;
      std::vector<Letter> ls{l};
      ls.insert(ls.end(), word[p].begin(), word[p].end());
      word[q] = Word::reduce(ls);
      order.push_back(q);
    }
  }
  if (require_transitive && order.size() != x.size()) {
    throw NotTransitive("finite space is not transitive (orbit of " + std::to_string(root) +
                        " has " + std::to_string(order.size()) + " of " +
                        std::to_string(x.size()) + " points)");
  }
  for (auto q : order) {
    if (word[q].size() > radius) {
      throw Error("stabilizer search radius " + std::to_string(radius) +
                  " is smaller than the orbit diameter");
    }
  }
  return word;
}

}  // namespace

SubgroupHandle stabilizer_subgroup(const FiniteSpace& x, FiniteSpace::Point point,
                                   unsigned radius) {
  if (radius < 1) throw Error("stabilizer search radius must be >= 1");
  const std::vector<Word> t = spanning_words(x, point, radius, true);
  SubgroupHandle out{x.acting_group(), {}};
  std::set<Word> seen;
  for (FiniteSpace::Point p = 1; p <= x.size(); ++p) {
    for (std::uint16_t g = 1; g <= x.acting_group().rank(); ++g) {
      const Word gw = Word::generator(g);
      const FiniteSpace::Point q = x.act(gw.front(), p);
      Word s = product(inverse(t[q]), gw, t[p]);
      if (!s.empty() && seen.insert(s).second) out.generators.push_back(std::move(s));
    }
  }
  return out;
}

Word transporter(const FiniteSpace& x, FiniteSpace::Point from, FiniteSpace::Point to) {
  const std::vector<Word> t = spanning_words(x, from, std::numeric_limits<unsigned>::max(), false);
  if (to != from && t[to].empty()) throw NotTransitive("no element moves the point");
  return t[to];
}

}  // namespace relbound
