#include "relbound/contraction.hpp"

#include <algorithm>

namespace relbound {

std::optional<std::size_t> concentration_depth(const BoundaryMeasure& nu) {
  if (nu.is_dirac()) return std::nullopt;
  const BoundaryPoint& first = nu.atoms().front().first;
  std::size_t depth = std::numeric_limits<std::size_t>::max();
  for (std::size_t k = 1; k < nu.size(); ++k) {
    // Atoms are distinct, so the common prefix is finite.
    depth = std::min(depth, *common_prefix_depth(first, nu.atoms()[k].first));
  }
  return depth;
}

std::optional<std::size_t> concentration_depth(const InducedMeasure& nu) {
  if (nu.is_dirac()) return std::nullopt;
  const InducedPoint& first = nu.atoms().front().first;
  for (const auto& [p, w] : nu.atoms()) {
    if (p.coset != first.coset) return 0;
  }
  if (!std::holds_alternative<BoundaryPoint>(first.fiber)) return 0;
  const auto& xi = std::get<BoundaryPoint>(first.fiber);
  std::size_t depth = std::numeric_limits<std::size_t>::max();
  for (std::size_t k = 1; k < nu.size(); ++k) {
    depth = std::min(depth,
                     *common_prefix_depth(xi, std::get<BoundaryPoint>(nu.atoms()[k].first.fiber)));
  }
  return depth;
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::AxisPower: return "axis-power";
    case Strategy::PaperSequence: return "paper-sequence";
    case Strategy::GreedyBall: return "greedy-ball";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "axis-power") return Strategy::AxisPower;
  if (text == "paper-sequence") return Strategy::PaperSequence;
  if (text == "greedy-ball") return Strategy::GreedyBall;
  throw Error("unknown contraction strategy '" + std::string(text) + "'");
}

Word ContractionCertificate::composite() const {
  Word g;
  for (const auto& s : steps) g = multiply(s, g);
  return g;
}

std::size_t ContractionCertificate::total_length() const {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.size();
  return total;
}

nlohmann::json ContractionCertificate::to_json() const {
  nlohmann::json j;
  j["strategy"] = strategy;
  auto& s = j["steps"] = nlohmann::json::array();
  for (const auto& w : steps) s.push_back(to_string(w));
  j["target_depth"] = target_depth;
  j["achieved_depth"] = achieved_depth;
  j["limit_cylinder"] = {{"coset", limit.coset}, {"prefix", to_string(limit.prefix)}};
  return j;
}

ContractionCertificate ContractionCertificate::from_json(const nlohmann::json& j) {
  ContractionCertificate c;
  c.strategy = j.at("strategy").get<std::string>();
  for (const auto& s : j.at("steps")) c.steps.push_back(parse_word(s.get<std::string>()));
  c.target_depth = j.at("target_depth").get<std::size_t>();
  c.achieved_depth = j.at("achieved_depth").get<std::size_t>();
  c.limit.coset = j.at("limit_cylinder").at("coset").get<Coset>();
  c.limit.prefix = parse_word(j.at("limit_cylinder").at("prefix").get<std::string>());
  return c;
}

namespace {

CylinderKey limit_of(const BoundaryMeasure& nu, std::size_t depth) {
  return {1, nu.atoms().front().first.expand(depth)};
}

CylinderKey limit_of(const InducedMeasure& nu, std::size_t depth) {
  const InducedPoint& p = nu.atoms().front().first;
  if (const auto* xi = std::get_if<BoundaryPoint>(&p.fiber)) return {p.coset, xi->expand(depth)};
  return {p.coset, {}};
}

/// Axis-power plan in the rank-r fiber group: an optional perturbing letter,
/// then the axis g repeated. The perturbation moves every atom off g^{-∞}.
struct AxisPlan {
  std::optional<Word> perturbation;
  Word axis;

  Word step(std::size_t k) const {
    if (perturbation) return k == 0 ? *perturbation : axis;
    return axis;
  }
};

AxisPlan plan_axis_power(const std::vector<BoundaryPoint>& atoms, unsigned rank, const Word& axis) {
  if (axis.empty() || !axis.cyclically_reduced()) {
    throw Error("axis '" + to_string(axis) + "' must be a nonempty cyclically reduced word");
  }
  if (axis.max_index() > rank) throw Error("axis uses letters beyond the fiber rank");
  const BoundaryPoint repelling = BoundaryPoint::make(Word{}, inverse(axis));
  AxisPlan plan{std::nullopt, axis};
  auto hits_repelling = [&](const Word& h) {
    return std::any_of(atoms.begin(), atoms.end(),
                       [&](const BoundaryPoint& xi) { return act_free(h, xi) == repelling; });
  };
  if (!hits_repelling(Word{})) return plan;
  for (Letter x : GroupContext::free_group(rank).alphabet()) {
    const Word h = Word::reduce({x});
    if (!hits_repelling(h)) {
      plan.perturbation = h;
      return plan;
    }
  }
  throw Error("no perturbing generator moves the atoms off the repelling endpoint");
}

template <class S, class M>
ContractionOutcome drive(const S& space, const M& nu, const ContractionOptions& options,
                         const std::function<Word(std::size_t, const M&)>& next_step) {
  ContractionOutcome out;
  ContractionCertificate cert;
  cert.strategy = to_string(options.strategy);
  cert.target_depth = options.target_depth;

  if (!concentration_depth(nu)) {
    cert.achieved_depth = options.target_depth;
    cert.limit = limit_of(nu, options.target_depth);
    out.best_depth = options.target_depth;
    out.certificate = std::move(cert);
    return out;
  }

  M current = nu;
  for (std::size_t k = 0; k < options.budget; ++k) {
    const Word step = next_step(k, current);
    current = pushforward_group(space, step, current);
    cert.steps.push_back(step);
    const std::size_t depth = concentration_depth(current).value_or(options.target_depth);
    out.best_depth = std::max(out.best_depth, depth);
    out.steps_tried = k + 1;
    if (depth >= options.target_depth) {
      cert.achieved_depth = depth;
      cert.limit = limit_of(current, depth);
      out.certificate = std::move(cert);
      return out;
    }
  }
  out.reason = "budget of " + std::to_string(options.budget) + " steps exhausted at depth " +
               std::to_string(out.best_depth) + " (target " +
               std::to_string(options.target_depth) + ")";
  return out;
}

template <class S, class M>
std::function<Word(std::size_t, const M&)> greedy(const S& space, unsigned radius) {
  std::vector<Word> candidates = acting_ball(space, radius);
  candidates.erase(candidates.begin());  // identity
  return [&space, candidates](std::size_t, const M& current) {
    const Word* best = nullptr;
    std::size_t best_depth = 0;
    for (const auto& s : candidates) {
      const std::size_t d = concentration_depth(pushforward_group(space, s, current))
                                .value_or(std::numeric_limits<std::size_t>::max());
      if (best == nullptr || d > best_depth) {
        best = &s;
        best_depth = d;
      }
    }
    return *best;
  };
}

void check_options(const ContractionOptions& options) {
  if (options.target_depth < 1) throw Error("contraction target depth must be >= 1");
  if (options.budget < 1) throw Error("contraction budget must be >= 1");
  if (options.strategy == Strategy::GreedyBall && options.greedy_radius < 1) {
    throw Error("greedy-ball radius must be >= 1");
  }
}

}  // namespace

ContractionOutcome contract_measure(const BoundarySpace& space, const BoundaryMeasure& nu,
                                    const ContractionOptions& options) {
  check_options(options);
  switch (options.strategy) {
    case Strategy::AxisPower: {
      const AxisPlan plan = plan_axis_power(nu.support(), space.rank(), options.axis);
      return drive<BoundarySpace, BoundaryMeasure>(
          space, nu, options,
          [&](std::size_t k, const BoundaryMeasure&) { return space.from_fiber_word(plan.step(k)); });
    }
    case Strategy::GreedyBall:
      return drive<BoundarySpace, BoundaryMeasure>(
          space, nu, options, greedy<BoundarySpace, BoundaryMeasure>(space, options.greedy_radius));
    case Strategy::PaperSequence:
      throw Error("paper-sequence contraction applies to induced spaces");
  }
  throw Error("unknown strategy");
}

ContractionOutcome contract_measure(const InducedSpace& space, const InducedMeasure& nu,
                                    const ContractionOptions& options) {
  check_options(options);
  if (!space.has_boundary_fiber()) {
    throw Error("measure lives on a finite space; use finite_contractible instead");
  }
  switch (options.strategy) {
    case Strategy::PaperSequence: {
      const Coset i = nu.atoms().front().first.coset;
      std::vector<BoundaryPoint> fiber_atoms;
      for (const auto& [p, w] : nu.atoms()) {
        if (p.coset != i) {
          throw Error("paper-sequence contraction needs a measure supported in one fiber");
        }
        fiber_atoms.push_back(std::get<BoundaryPoint>(p.fiber));
      }
      // γ_ℓ = t_i λ_ℓ t_i^{-1}, with λ_ℓ contracting the fiber measure.
      const AxisPlan plan = plan_axis_power(fiber_atoms, space.fiber_rank(), options.axis);
      const Word& t = space.table().representative(i);
      const Word t_inv = inverse(t);
      const BoundarySpace& fiber = space.boundary_fiber();
      return drive<InducedSpace, InducedMeasure>(
          space, nu, options, [&](std::size_t k, const InducedMeasure&) {
            return product(t, fiber.from_fiber_word(plan.step(k)), t_inv);
          });
    }
    case Strategy::GreedyBall:
      return drive<InducedSpace, InducedMeasure>(
          space, nu, options, greedy<InducedSpace, InducedMeasure>(space, options.greedy_radius));
    case Strategy::AxisPower:
      throw Error("axis-power contraction applies to boundary spaces; use paper-sequence");
  }
  throw Error("unknown strategy");
}

namespace {

template <class S, class M>
ReplayResult replay_impl(const S& space, const M& nu, const ContractionCertificate& cert) {
  const M final_measure = pushforward_steps(space, cert.steps, nu);
  ReplayResult r;
  r.achieved_depth = concentration_depth(final_measure).value_or(cert.target_depth);
  r.limit = limit_of(final_measure, r.achieved_depth);
  return r;
}

}  // namespace

ReplayResult replay_certificate(const BoundarySpace& space, const BoundaryMeasure& nu,
                                const ContractionCertificate& cert) {
  return replay_impl(space, nu, cert);
}

ReplayResult replay_certificate(const InducedSpace& space, const InducedMeasure& nu,
                                const ContractionCertificate& cert) {
  return replay_impl(space, nu, cert);
}

Word steering_word(const InducedSpace& space, const ContractionCertificate& cert,
                   const CylinderKey& target) {
  const Word& w = cert.limit.prefix;
  if (w.empty()) throw Error("steering needs a certificate of positive depth");
  if (target.prefix.size() > w.size()) {
    throw Error("steering target is deeper than the certificate");
  }
  // Fiber word σ = u · z · w'^{-1} with w = w' ℓ: it sends w'ℓζ to u z ℓ ζ, and
  // z (possibly empty) keeps u z ℓ reduced.
  const Word& u = target.prefix;
  const Letter last = w.back();
  const Word w_head = w.subword(0, w.size() - 1);
  Word z;
  if (!u.empty() && u.back().cancels(last)) {
    for (Letter x : GroupContext::free_group(space.fiber_rank()).alphabet()) {
      if (!x.cancels(u.back()) && !x.cancels(last)) {
        z = Word::reduce({x});
        break;
      }
    }
  }
  const Word sigma = product(u, z, inverse(w_head));
  const Word lambda = space.boundary_fiber().from_fiber_word(sigma);
  // γ t_c = t_{c*} λ, so α(γ, c) = λ^{-1} and the fiber moves by λ.
  return product(space.table().representative(target.coset), lambda,
                 inverse(space.table().representative(cert.limit.coset)));
}

}  // namespace relbound
