#include "relbound/checks.hpp"

#include <deque>
#include <map>
#include <set>

#include "relbound/parallel.hpp"

namespace relbound {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "UNKNOWN";
}

Verdict parse_verdict(std::string_view text) {
  if (text == "PASS") return Verdict::Pass;
  if (text == "FAIL") return Verdict::Fail;
  if (text == "INCONCLUSIVE") return Verdict::Inconclusive;
  throw Error("unknown verdict '" + std::string(text) + "'");
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

json CheckReport::to_json() const {
  json j;
  j["check"] = check;
  j["verdict"] = relbound::to_string(verdict);
  j["parameters"] = parameters;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["evidence"] = evidence;
  j["truncation"] = truncation;
  j["message"] = message;
  return j;
}

CheckReport CheckReport::from_json(const json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.parameters = j.value("parameters", json::object());
  if (j.contains("seed") && !j.at("seed").is_null()) r.seed = j.at("seed").get<std::uint64_t>();
  r.evidence = j.value("evidence", json::array());
  if (j.contains("truncation")) r.truncation = j.at("truncation");
  r.message = j.value("message", std::string{});
  return r;
}

// ---------------------------------------------------------------- measures

namespace {

template <class P, class ToJson>
json measure_json(const AtomicMeasure<P>& nu, ToJson&& point) {
  json out = json::array();
  for (const auto& [p, w] : nu.atoms()) out.push_back({{"point", point(p)}, {"weight", to_string(w)}});
  return out;
}

template <class P, class FromJson>
AtomicMeasure<P> measure_from(const json& j, FromJson&& point) {
  if (!j.is_array()) throw Error("measure must be a list of {point, weight}");
  std::vector<std::pair<P, Rational>> atoms;
  for (const auto& a : j) {
    const json& w = a.at("weight");
    const Rational weight = w.is_string() ? parse_rational(w.get<std::string>())
                                          : Rational(w.get<std::int64_t>());
    atoms.emplace_back(point(a.at("point")), weight);
  }
  return AtomicMeasure<P>::from_atoms(std::move(atoms));
}

}  // namespace

json measure_to_json(const BoundaryMeasure& nu) {
  return measure_json(nu, [](const BoundaryPoint& p) { return p.to_string(); });
}
json measure_to_json(const InducedMeasure& nu) {
  return measure_json(nu, [](const InducedPoint& p) { return to_string(p); });
}
json measure_to_json(const FiniteMeasure& nu) {
  return measure_json(nu, [](std::uint32_t p) { return p; });
}

BoundaryMeasure boundary_measure_from_json(const json& j) {
  return measure_from<BoundaryPoint>(
      j, [](const json& p) { return BoundaryPoint::parse(p.get<std::string>()); });
}
InducedMeasure induced_measure_from_json(const json& j) {
  return measure_from<InducedPoint>(
      j, [](const json& p) { return parse_induced_point(p.get<std::string>()); });
}
FiniteMeasure finite_measure_from_json(const json& j) {
  return measure_from<FiniteSpace::Point>(j, [](const json& p) { return p.get<std::uint32_t>(); });
}

// -------------------------------------------------------------- minimality

CheckReport check_minimal_finite(const FiniteSpace& x) {
  CheckReport r;
  r.check = "minimal_finite";
  r.parameters = {{"points", x.size()}};
  if (x.size() == 0) {
    r.message = "empty space";
    return r;
  }
  auto orbit = x.orbit(1);
  std::sort(orbit.begin(), orbit.end());
  if (orbit.size() == x.size()) {
    r.verdict = Verdict::Pass;
    r.evidence.push_back({{"orbit_of", 1}, {"orbit", orbit}});
    r.message = "transitive on " + std::to_string(x.size()) + " points";
  } else {
    r.verdict = Verdict::Fail;
    r.evidence.push_back({{"invariant_subset", orbit}});
    r.message = "orbit of 1 has " + std::to_string(orbit.size()) + " of " +
                std::to_string(x.size()) + " points";
  }
  return r;
}

namespace {

std::string cylinder_label(const BoundaryPoint& xi, unsigned depth) {
  return to_string(xi.expand(depth));
}

std::string cylinder_label(const InducedPoint& p, unsigned depth) {
  if (const auto* xi = std::get_if<BoundaryPoint>(&p.fiber)) {
    return "(" + std::to_string(p.coset) + ", " + to_string(xi->expand(depth)) + ")";
  }
  return "(" + std::to_string(p.coset) + ", " + std::to_string(std::get<std::uint32_t>(p.fiber)) + ")";
}

/// All reduced words of exactly the given length in rank r, shortlex order.
std::vector<Word> words_of_length(unsigned rank, unsigned length) {
  std::vector<Word> out;
  for (auto& w : GroupContext::free_group(rank).ball(length)) {
    if (w.size() == length) out.push_back(std::move(w));
  }
  return out;
}

/// Labels of every cylinder of the space when there are at most `limit`.
std::optional<std::vector<std::string>> all_cylinder_labels(std::size_t cosets, const InducedSpace* y,
                                                            unsigned rank, unsigned depth,
                                                            std::size_t limit) {
  std::vector<std::string> out;
  if (y != nullptr && !y->has_boundary_fiber()) {
    if (cosets * y->finite_fiber().size() > limit) return std::nullopt;
    for (Coset c = 1; c <= cosets; ++c) {
      for (std::uint32_t k = 1; k <= y->finite_fiber().size(); ++k) {
        out.push_back(cylinder_label(InducedPoint{c, k}, depth));
      }
    }
    return out;
  }
  if (cosets * cylinder_count(rank, depth) > limit) return std::nullopt;
  for (Coset c = 1; c <= cosets; ++c) {
    for (const auto& w : words_of_length(rank, depth)) {
      out.push_back(y == nullptr ? to_string(w) : "(" + std::to_string(c) + ", " + to_string(w) + ")");
    }
  }
  return out;
}

template <class S, class P>
void coverage_run(const S& space, const std::vector<P>& starts, const std::vector<Word>& ball,
                  unsigned depth, std::size_t total,
                  const std::optional<std::vector<std::string>>& labels, CheckReport& r) {
  std::size_t complete = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    std::map<std::string, Word> hit;
    for (const auto& g : ball) hit.emplace(cylinder_label(space.act(g, starts[s]), depth), g);
    json entry;
    entry["sample"] = s;
    if constexpr (std::is_same_v<P, BoundaryPoint>) {
      entry["start"] = starts[s].to_string();
    } else {
      entry["start"] = to_string(starts[s]);
    }
    entry["covered"] = hit.size();
    entry["total"] = total;
    json witnesses = json::object();
    for (const auto& [label, g] : hit) witnesses[label] = to_string(g);
    entry["witnesses"] = std::move(witnesses);
    if (hit.size() >= total) {
      ++complete;
    } else if (labels) {
      json missing = json::array();
      for (const auto& l : *labels) {
        if (!hit.contains(l) && missing.size() < 16) missing.push_back(l);
      }
      entry["missing"] = std::move(missing);
    }
    r.evidence.push_back(std::move(entry));
  }
  if (complete == starts.size()) {
    r.verdict = Verdict::Pass;
    r.message = "full coverage of " + std::to_string(total) + " cylinders from " +
                std::to_string(starts.size()) + " start points";
  } else {
    r.verdict = Verdict::Inconclusive;
    r.message = std::to_string(starts.size() - complete) + " of " + std::to_string(starts.size()) +
                " start points left cylinders uncovered within the radius";
  }
}

json minimality_parameters(const MinimalityParams& p) {
  return {{"depth", p.depth}, {"radius", p.radius}, {"samples", p.samples},
          {"walk_length", p.walk_length}};
}

void fill_minimality_truncation(CheckReport& r, const MinimalityParams& p) {
  r.truncation["depths"]["cylinder"] = p.depth;
  r.truncation["radii"]["ball"] = p.radius;
  r.truncation["budgets"]["samples"] = p.samples;
}

}  // namespace

CheckReport check_minimal_symbolic(const BoundarySpace& y, const MinimalityParams& params) {
  CheckReport r;
  r.check = "minimal_symbolic";
  r.parameters = minimality_parameters(params);
  r.seed = params.seed;
  fill_minimality_truncation(r, params);
  std::vector<BoundaryPoint> starts;
  for (std::size_t s = 0; s < params.samples; ++s) {
    SeededRng rng = SeededRng::for_sample(params.seed, s);
    starts.push_back(random_boundary_point(rng, y.rank(), params.walk_length));
  }
  const std::size_t total = cylinder_count(y.rank(), params.depth);
  coverage_run(y, starts, acting_ball(y, params.radius), params.depth, total,
               all_cylinder_labels(1, nullptr, y.rank(), params.depth, 4096), r);
  return r;
}

InducedPoint minimality_start(const InducedSpace& y, const MinimalityParams& params,
                              std::uint64_t index) {
  SeededRng rng = SeededRng::for_sample(params.seed, index);
  const auto coset = static_cast<Coset>(1 + index % y.index());
  if (y.has_boundary_fiber()) {
    return {coset, random_boundary_point(rng, y.fiber_rank(), params.walk_length)};
  }
  return {coset, static_cast<std::uint32_t>(rng.between(1, y.finite_fiber().size()))};
}

CheckReport check_minimal_symbolic(const InducedSpace& y, const MinimalityParams& params) {
  CheckReport r;
  r.check = "minimal_symbolic";
  r.parameters = minimality_parameters(params);
  r.seed = params.seed;
  fill_minimality_truncation(r, params);
  std::vector<InducedPoint> starts;
  for (std::size_t s = 0; s < params.samples; ++s) starts.push_back(minimality_start(y, params, s));
  const unsigned rank = y.has_boundary_fiber() ? y.fiber_rank() : 0;
  const std::size_t per_coset =
      y.has_boundary_fiber() ? cylinder_count(rank, params.depth) : y.finite_fiber().size();
  coverage_run(y, starts, acting_ball(y, params.radius), params.depth, y.index() * per_coset,
               all_cylinder_labels(y.index(), &y, rank, params.depth, 4096), r);
  return r;
}

// --------------------------------------------------------- contractibility

FiniteContractibility enumerate_measure_orbit(const FiniteSpace& x, const FiniteMeasure& nu,
                                              std::size_t cap) {
  auto less = [](const FiniteMeasure& a, const FiniteMeasure& b) { return a.atoms() < b.atoms(); };
  std::map<FiniteMeasure, Word, decltype(less)> seen(less);
  std::deque<FiniteMeasure> queue;
  FiniteContractibility out;
  seen.emplace(nu, Word{});
  queue.push_back(nu);
  const auto letters = x.acting_group().alphabet();
  while (!queue.empty()) {
    FiniteMeasure m = std::move(queue.front());
    queue.pop_front();
    const Word w = seen.at(m);
    if (m.is_dirac() && !out.witness) {
      out.contractible = true;
      out.witness = w;
    }
    out.orbit.push_back(m);
    for (Letter l : letters) {
      const Word g = Word::reduce({l});
      FiniteMeasure next = m.map([&](FiniteSpace::Point p) { return x.act(g, p); });
      if (seen.contains(next)) continue;
      if (seen.size() >= cap) {
        out.truncated = true;
        continue;
      }
      seen.emplace(next, multiply(g, w));
      queue.push_back(std::move(next));
    }
  }
  return out;
}

CheckReport finite_contractible(const FiniteSpace& x, const FiniteMeasure& nu) {
  CheckReport r;
  r.check = "finite_contractible";
  r.parameters = {{"points", x.size()}, {"atoms", nu.size()}};
  const FiniteContractibility orbit = enumerate_measure_orbit(x, nu);
  const bool shortcut = nu.is_dirac();
  json entry{{"measure", measure_to_json(nu)},
             {"orbit_size", orbit.orbit.size()},
             {"weight_multiset_route", shortcut ? "PASS" : "FAIL"}};
  r.truncation["budgets"]["orbit_cap"] = 1'000'000;
  if (orbit.contractible) {
    r.verdict = Verdict::Pass;
    entry["witness"] = to_string(*orbit.witness);
    r.message = "Dirac reached in the orbit";
  } else if (orbit.truncated) {
    r.verdict = Verdict::Inconclusive;
    r.message = "orbit enumeration truncated";
  } else {
    r.verdict = Verdict::Fail;
    json listed = json::array();
    for (const auto& m : orbit.orbit) listed.push_back(measure_to_json(m));
    entry["orbit"] = std::move(listed);
    r.message = "no Dirac among " + std::to_string(orbit.orbit.size()) + " orbit measures";
  }
  if (!orbit.truncated && orbit.contractible != shortcut) {
    r.verdict = Verdict::Fail;
    r.message = "exhaustive and weight-multiset routes disagree";
  }
  r.evidence.push_back(std::move(entry));
  return r;
}

ContractionOptions ProximalityParams::options() const {
  ContractionOptions o;
  o.target_depth = target_depth;
  o.budget = budget;
  o.strategy = strategy;
  o.seed = sampler.seed;
  o.axis = axis;
  o.greedy_radius = greedy_radius;
  return o;
}

json ProximalityParams::to_json() const {
  return {{"sampler", sampler.to_json()},
          {"target_depth", target_depth},
          {"budget", budget},
          {"strategy", to_string(strategy)},
          {"axis", to_string(axis)},
          {"greedy_radius", greedy_radius}};
}

namespace {

void fill_proximality_truncation(CheckReport& r, const ProximalityParams& p) {
  r.truncation["depths"]["target"] = p.target_depth;
  r.truncation["budgets"]["steps"] = p.budget;
  r.truncation["budgets"]["samples"] = p.sampler.samples;
  r.truncation["budgets"]["atoms"] = p.sampler.max_atoms;
  if (p.strategy == Strategy::GreedyBall) r.truncation["radii"]["step"] = p.greedy_radius;
}

struct SampleResult {
  Verdict verdict = Verdict::Pass;
  json evidence;
};

/// Contracts one measure and replays its certificate.
SampleResult certify(const InducedSpace& y, const InducedMeasure& nu, const ContractionOptions& o,
                     std::uint64_t sample) {
  SampleResult res;
  res.evidence = {{"sample", sample}, {"measure", measure_to_json(nu)}};
  const ContractionOutcome out = contract_measure(y, nu, o);
  if (!out.certificate) {
    res.verdict = Verdict::Inconclusive;
    res.evidence["reason"] = out.reason;
    res.evidence["best_depth"] = out.best_depth;
    return res;
  }
  const ReplayResult replay = replay_certificate(y, nu, *out.certificate);
  res.evidence["certificate"] = out.certificate->to_json();
  res.evidence["replay_depth"] = replay.achieved_depth;
  if (replay.achieved_depth != out.certificate->achieved_depth ||
      !(replay.limit == out.certificate->limit)) {
    res.verdict = Verdict::Fail;
    res.evidence["reason"] = "certificate replay mismatch";
  }
  return res;
}

void merge_samples(CheckReport& r, std::vector<SampleResult>& results) {
  for (auto& s : results) {
    r.verdict = combine(r.verdict, s.verdict);
    r.evidence.push_back(std::move(s.evidence));
  }
}

std::string count_message(const std::vector<SampleResult>& results, const std::string& noun) {
  std::size_t pass = 0;
  for (const auto& s : results) pass += s.verdict == Verdict::Pass;
  return std::to_string(pass) + "/" + std::to_string(results.size()) + " " + noun;
}

}  // namespace

CheckReport check_sp_extension(const InducedProjection& phi, const ProximalityParams& params) {
  const InducedSpace& y = phi.source();
  if (!y.has_boundary_fiber()) {
    CheckReport r = check_sp_extension(FiniteExtension::from_induced(y), params);
    return r;
  }
  if (params.sampler.samples < 1) throw Error("sp_extension needs samples >= 1");
  CheckReport r;
  r.check = "sp_extension";
  r.parameters = params.to_json();
  r.seed = params.sampler.seed;
  fill_proximality_truncation(r, params);
  const ContractionOptions o = params.options();
  auto results = parallel_map<SampleResult>(params.sampler.samples, params.workers, [&](std::size_t s) {
    const auto coset = static_cast<Coset>(1 + s % y.index());
    return certify(y, sample_fiber_measure(y, coset, params.sampler, s), o, s);
  });
  r.message = count_message(results, "fiber measures certified");
  merge_samples(r, results);
  return r;
}

CheckReport check_sp_extension(const FiniteExtension& phi, const ProximalityParams& params) {
  CheckReport r;
  r.check = "sp_extension";
  r.parameters = params.to_json();
  r.parameters["extension"] = phi.label();
  r.parameters["source_points"] = phi.source().size();
  r.parameters["target_points"] = phi.target().size();
  r.seed = params.sampler.seed;
  r.truncation["budgets"]["samples"] = params.sampler.samples;
  r.truncation["budgets"]["atoms"] = params.sampler.max_atoms;

  std::vector<FiniteMeasure> measures;
  const auto n = static_cast<std::uint32_t>(phi.target().size());
  for (std::uint32_t x = 1; x <= n; ++x) {
    const auto f = phi.fiber(x);
    if (f.size() >= 2) measures.push_back(FiniteMeasure::uniform(f));
  }
  for (std::size_t s = 0; s < params.sampler.samples; ++s) {
    const auto x = static_cast<std::uint32_t>(1 + s % n);
    measures.push_back(sample_measure_on(phi.fiber(x), params.sampler, s));
  }
  auto results = parallel_map<SampleResult>(measures.size(), params.workers, [&](std::size_t k) {
    CheckReport fc = finite_contractible(phi.source(), measures[k]);
    json e = std::move(fc.evidence.front());
    e["index"] = k;
    e["base_point"] = phi.apply(measures[k].atoms().front().first);
    return SampleResult{fc.verdict, std::move(e)};
  });
  r.message = count_message(results, "fiber measures contract to a Dirac");
  merge_samples(r, results);
  return r;
}

CheckReport check_theorem_a_34(const InducedProjection& phi, const ProximalityParams& params,
                               const MinimalityParams& minimality) {
  const InducedSpace& y = phi.source();
  CheckReport r;
  r.check = "theorem_a_34";
  r.parameters = params.to_json();
  r.parameters["minimality"] = minimality_parameters(minimality);
  r.parameters["fiber_action"] = y.fiber_action_enabled() ? "enabled" : "disabled";
  r.seed = params.sampler.seed;
  fill_proximality_truncation(r, params);
  fill_minimality_truncation(r, minimality);

  const CheckReport base = check_minimal_finite(phi.target());
  const CheckReport total = check_minimal_symbolic(y, minimality);
  r.verdict = combine(base.verdict, total.verdict);
  r.evidence.push_back({{"base_minimal", base.to_json()}});
  r.evidence.push_back({{"total_minimal", {{"verdict", to_string(total.verdict)},
                                           {"message", total.message}}}});

  const ContractionOptions o = params.options();
  const FiniteSpace& base_space = phi.target();
  std::size_t obligations = 0;
  auto results = parallel_map<SampleResult>(params.sampler.samples, params.workers, [&](std::size_t s) {
    // Alternate fiber-supported draws (obligations) with unrestricted ones.
    const InducedMeasure nu =
        s % 2 == 0 ? sample_fiber_measure(y, static_cast<Coset>(1 + (s / 2) % y.index()),
                                          params.sampler, s)
                   : sample_induced_measure(y, params.sampler, s);
    const FiniteMeasure pushed = pushforward_map(phi, nu);
    const CheckReport fc = finite_contractible(base_space, pushed);
    SampleResult res;
    if (fc.verdict != Verdict::Pass) {
      res.evidence = {{"sample", s},
                      {"measure", measure_to_json(nu)},
                      {"pushforward", measure_to_json(pushed)},
                      {"obligation", false}};
      return res;
    }
    if (y.has_boundary_fiber()) {
      res = certify(y, nu, o, s);
    } else {
      const FiniteExtension flat = FiniteExtension::from_induced(y);
      const std::size_t fiber_size = y.finite_fiber().size();
      const FiniteMeasure flat_nu = nu.map([&](const InducedPoint& p) {
        return static_cast<FiniteSpace::Point>((p.coset - 1) * fiber_size +
                                               std::get<std::uint32_t>(p.fiber));
      });
      CheckReport sub = finite_contractible(flat.source(), flat_nu);
      res.verdict = sub.verdict;
      res.evidence = std::move(sub.evidence.front());
      res.evidence["sample"] = s;
    }
    res.evidence["pushforward"] = measure_to_json(pushed);
    res.evidence["obligation"] = true;
    return res;
  });
  for (const auto& s : results) obligations += s.evidence.value("obligation", false);
  std::size_t discharged = 0;
  for (const auto& s : results) {
    discharged += s.evidence.value("obligation", false) && s.verdict == Verdict::Pass;
  }
  merge_samples(r, results);
  r.message = std::to_string(discharged) + "/" + std::to_string(obligations) +
              " obligations discharged; base minimality " + to_string(base.verdict) +
              ", total minimality " + to_string(total.verdict);
  return r;
}

// ------------------------------------------------------------------- fibers

FiberDecomposition decompose_fibers(const InducedProjection& phi, const MinimalityParams& params) {
  const InducedSpace& y = phi.source();
  const CosetTable& table = y.table();
  const FiniteSpace& base = phi.target();
  if (check_minimal_finite(base).verdict != Verdict::Pass) throw NotTransitive("base is not minimal");

  FiberDecomposition out;
  CheckReport& r = out.report;
  r.check = "decompose_fibers";
  r.parameters = minimality_parameters(params);
  r.seed = params.seed;
  fill_minimality_truncation(r, params);

  std::vector<InducedPoint> samples;
  for (std::size_t s = 0; s < params.samples; ++s) {
    InducedPoint p = minimality_start(y, params, s);
    p.coset = 1;
    samples.push_back(std::move(p));
  }
  const auto n = static_cast<Coset>(y.index());
  const auto radius = static_cast<unsigned>(n);
  const std::size_t max_cosets = 4 * n + 16;

  for (Coset i = 1; i <= n; ++i) {
    FiberInfo info;
    info.base = i;
    info.transport = table.representative(i);
    info.stabilizer = stabilizer_subgroup(base, i, radius);
    json e{{"base_point", i}, {"transport", to_string(info.transport)}};
    json gens = json::array();
    for (const auto& g : info.stabilizer.generators) gens.push_back(to_string(g));
    e["stabilizer_generators"] = gens;

    // Λ_i = t_i Λ t_i^{-1}.
    const SubgroupHandle conj = conjugate_subgroup(y.subgroup(), info.transport);
    const bool same = same_subgroup(info.stabilizer, enumerate_cosets(info.stabilizer, max_cosets),
                                    conj, enumerate_cosets(conj, max_cosets));
    e["equals_conjugate"] = same;
    if (!same) r.verdict = Verdict::Fail;

    const Word t_inv = inverse(info.transport);
    // Transport: t_j t_i^{-1} carries fiber i to fiber j.
    bool transported = true;
    for (const auto& p1 : samples) {
      const InducedPoint p = y.act(info.transport, p1);
      if (p.coset != i) transported = false;
      for (Coset j = 1; j <= n; ++j) {
        const Word move = multiply(table.representative(j), t_inv);
        if (y.act(move, p).coset != j) transported = false;
      }
      // Setwise invariance under Λ_i.
      for (const auto& h : info.stabilizer.generators) {
        if (y.act(h, p).coset != i) transported = false;
      }
    }
    e["transport_and_invariance"] = transported;
    if (!transported) r.verdict = Verdict::Fail;

    // Sampled Λ_i-minimality of the fiber.
    if (y.has_boundary_fiber()) {
      std::vector<Word> ball;
      for (const auto& w : GroupContext::free_group(y.fiber_rank()).ball(params.radius)) {
        ball.push_back(product(info.transport, y.boundary_fiber().from_fiber_word(w), t_inv));
      }
      std::vector<InducedPoint> starts;
      for (const auto& p1 : samples) starts.push_back(y.act(info.transport, p1));
      CheckReport cover;
      coverage_run(y, starts, ball, params.depth, cylinder_count(y.fiber_rank(), params.depth), {},
                   cover);
      e["fiber_minimality"] = {{"verdict", to_string(cover.verdict)}, {"message", cover.message}};
      r.verdict = combine(r.verdict, cover.verdict);
    }
    r.evidence.push_back(std::move(e));
    out.fibers.push_back(std::move(info));
  }
  r.message = std::to_string(n) + " fibers decomposed";
  return out;
}

FiberDecomposition decompose_fibers(const FiniteExtension& phi) {
  const FiniteSpace& base = phi.target();
  const FiniteSpace& total = phi.source();
  if (check_minimal_finite(base).verdict != Verdict::Pass) throw NotTransitive("base is not minimal");
  FiberDecomposition out;
  CheckReport& r = out.report;
  r.check = "decompose_fibers";
  r.parameters = {{"extension", phi.label()}, {"source_points", total.size()},
                  {"target_points", base.size()}};
  const auto n = static_cast<std::uint32_t>(base.size());
  const auto first = phi.fiber(1);
  for (std::uint32_t x = 1; x <= n; ++x) {
    FiberInfo info;
    info.base = x;
    info.transport = transporter(base, 1, x);
    info.stabilizer = stabilizer_subgroup(base, x, n);
    const auto fib = phi.fiber(x);
    json e{{"base_point", x}, {"transport", to_string(info.transport)}, {"fiber", fib}};
    json gens = json::array();
    for (const auto& g : info.stabilizer.generators) gens.push_back(to_string(g));
    e["stabilizer_generators"] = gens;

    std::set<std::uint32_t> image;
    for (auto p : first) image.insert(total.act(info.transport, p));
    const bool transported = image == std::set<std::uint32_t>(fib.begin(), fib.end());
    bool invariant = true;
    for (const auto& h : info.stabilizer.generators) {
      for (auto p : fib) invariant = invariant && phi.apply(total.act(h, p)) == x;
    }
    e["transport_and_invariance"] = transported && invariant;
    if (!(transported && invariant)) r.verdict = Verdict::Fail;

    // Λ_x-orbit of the first fiber point.
    std::set<std::uint32_t> orbit{fib.front()};
    std::vector<std::uint32_t> stack{fib.front()};
    while (!stack.empty()) {
      const auto p = stack.back();
      stack.pop_back();
      for (const auto& h : info.stabilizer.generators) {
        for (const Word& g : {h, inverse(h)}) {
          const auto q = total.act(g, p);
          if (orbit.insert(q).second) stack.push_back(q);
        }
      }
    }
    e["fiber_minimal"] = orbit.size() == fib.size();
    r.evidence.push_back(std::move(e));
    out.fibers.push_back(std::move(info));
  }
  r.message = std::to_string(n) + " fibers decomposed";
  return out;
}

// ----------------------------------------------------------------- amenable

CheckReport amenable_size_check(const FiniteSpace& x, const std::vector<FiniteExtension>& candidates,
                                const ProximalityParams& params) {
  if (x.acting_group().is_free()) throw Error("amenable_size_check needs a finite permutation group");
  if (check_minimal_finite(x).verdict != Verdict::Pass) throw NotTransitive("base is not minimal");
  CheckReport r;
  r.check = "amenable_size_check";
  r.parameters = params.to_json();
  r.parameters["base_points"] = x.size();
  r.seed = params.sampler.seed;
  r.truncation["budgets"]["samples"] = params.sampler.samples;
  std::size_t agree = 0;
  for (const auto& c : candidates) {
    if (c.target().size() != x.size()) throw Error("candidate '" + c.label() + "' is not over the base");
    const CheckReport sp = check_sp_extension(c, params);
    const bool singleton = c.source().size() == x.size();
    const Verdict expected = singleton ? Verdict::Pass : Verdict::Fail;
    const bool ok = sp.verdict == expected;
    agree += ok;
    json e{{"extension", c.label()},
           {"source_points", c.source().size()},
           {"base_points", x.size()},
           {"verdict", to_string(sp.verdict)},
           {"expected", to_string(expected)},
           {"message", sp.message}};
    if (sp.verdict == Verdict::Fail) {
      for (const auto& s : sp.evidence) {
        if (s.contains("orbit")) {
          e["counterexample"] = s;
          break;
        }
      }
    }
    r.evidence.push_back(std::move(e));
  }
  r.verdict = agree == candidates.size() ? Verdict::Pass : Verdict::Fail;
  r.message = std::to_string(agree) + "/" + std::to_string(candidates.size()) +
              " candidates behave as |Y| = n predicts";
  return r;
}

// ------------------------------------------------------------------ Poisson

json IsometryParams::to_json() const {
  return {{"sampler", sampler.to_json()},     {"functions", functions},
          {"max_function_depth", max_function_depth}, {"target_depth", target_depth},
          {"budget", budget},                 {"epsilon", epsilon},
          {"mass_threshold", mass_threshold}, {"ladder", ladder}};
}

CylinderFunction random_cylinder_function(SeededRng& rng, unsigned depth, std::size_t cosets,
                                          unsigned rank) {
  auto value = [&] { return (static_cast<double>(rng.below(129)) - 64.0) / 64.0; };
  CylinderFunction f(depth, cosets, rank, value());
  const std::size_t listed = rng.between(1, 8);
  for (std::size_t k = 0; k < listed; ++k) {
    Word w;
    while (w.size() != depth) w = random_reduced_word(rng, rank, depth);
    f.set({static_cast<Coset>(rng.between(1, cosets)), w}, value());
  }
  if (!(f.norm() > 0.0)) f.set({1, f.entries().begin()->first.prefix}, 1.0);
  return f;
}

CheckReport check_isometry_proxy(const InducedSpace& y, const IsometryParams& params) {
  if (!y.has_boundary_fiber()) throw Error("isometry proxy needs a boundary fiber");
  if (params.ladder.empty()) throw Error("isometry proxy needs a radius ladder");
  CheckReport r;
  r.check = "isometry_proxy";
  r.parameters = params.to_json();
  r.seed = params.sampler.seed;
  r.truncation["depths"]["target"] = params.target_depth;
  r.truncation["depths"]["max_function"] = params.max_function_depth;
  r.truncation["radii"]["ladder"] = params.ladder;
  r.truncation["budgets"]["steps"] = params.budget;
  r.truncation["budgets"]["samples"] = params.sampler.samples;

  ContractionOptions o;
  o.target_depth = params.target_depth;
  o.budget = params.budget;
  o.strategy = Strategy::PaperSequence;
  o.seed = params.sampler.seed;
  const unsigned top = *std::max_element(params.ladder.begin(), params.ladder.end());

  auto results = parallel_map<SampleResult>(params.sampler.samples, params.workers, [&](std::size_t s) {
    const auto coset = static_cast<Coset>(1 + s % y.index());
    const InducedMeasure nu = sample_fiber_measure(y, coset, params.sampler, s);
    SampleResult res;
    res.evidence = {{"sample", s}, {"measure", measure_to_json(nu)}};
    const ContractionOutcome out = contract_measure(y, nu, o);
    if (!out.certificate) {
      res.verdict = Verdict::Inconclusive;
      res.evidence["reason"] = out.reason;
      return res;
    }
    const ContractionCertificate& cert = *out.certificate;
    res.evidence["certificate"] = cert.to_json();
    // Mass of the final atoms inside the limit cylinder.
    const InducedMeasure final_measure = pushforward_steps(y, cert.steps, nu);
    Rational mass = 0;
    for (const auto& [p, w] : final_measure.atoms()) {
      const auto& xi = std::get<BoundaryPoint>(p.fiber);
      if (p.coset == cert.limit.coset && xi.expand(cert.limit.prefix.size()) == cert.limit.prefix) {
        mass += w;
      }
    }
    const double concentrated = detail::to_double(mass);
    res.evidence["concentrated_mass"] = to_string(mass);

    const PoissonEvaluator<InducedSpace> ladder_eval(y, nu, top);
    SeededRng rng = SeededRng::for_sample(~params.sampler.seed, s);
    const Word composite = cert.composite();
    json fns = json::array();
    for (std::size_t k = 0; k < params.functions; ++k) {
      const auto depth = static_cast<unsigned>(
          rng.between(1, std::min<std::size_t>(params.max_function_depth, cert.achieved_depth)));
      const CylinderFunction f = random_cylinder_function(rng, depth, y.index(), y.fiber_rank());
      const CylinderKey target = f.maximizing_cylinder();
      const Word steer = steering_word(y, cert, target);
      const Word witness = multiply(steer, composite);
      const std::size_t r_cert = cert.total_length() + steer.size();
      const double norm = f.norm();
      const double bound = isometry_defect_bound(y, nu, f, witness);
      json ladder = json::array();
      bool monotone = true;
      double previous = std::numeric_limits<double>::infinity();
      std::vector<unsigned> radii = params.ladder;
      std::sort(radii.begin(), radii.end());
      for (unsigned radius : radii) {
        const double d = ladder_eval.defect(f, radius);
        ladder.push_back({{"radius", radius}, {"defect", d}});
        if (d > previous) monotone = false;
        previous = d;
      }
      const bool small = concentrated < params.mass_threshold || bound <= params.epsilon * norm;
      if (!small || !monotone) res.verdict = Verdict::Fail;
      fns.push_back({{"function", k},
                     {"depth", depth},
                     {"norm", norm},
                     {"maximizing_cylinder", {{"coset", target.coset}, {"prefix", to_string(target.prefix)}}},
                     {"steering", to_string(steer)},
                     {"r_cert", r_cert},
                     {"defect_bound", bound},
                     {"ladder", std::move(ladder)},
                     {"monotone", monotone}});
    }
    res.evidence["functions"] = std::move(fns);
    return res;
  });
  r.message = count_message(results, "certified measures meet the defect bound");
  merge_samples(r, results);
  return r;
}

}  // namespace relbound
