#include "relbound/scenario.hpp"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

namespace relbound {

using nlohmann::json;

namespace {

const std::set<std::string> kCheckTypes = {
    "minimal_finite", "minimal_symbolic", "finite_contractible", "contract",
    "sp_extension",   "theorem_a_34",     "decompose_fibers",    "amenable_size_check",
    "isometry_proxy"};

const std::set<std::string> kInducedOnly = {"theorem_a_34", "isometry_proxy"};
const std::set<std::string> kFiniteOnly = {"amenable_size_check", "finite_contractible"};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ScenarioError("missing field '" + path + "'");
  return j.at(key);
}

std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ScenarioError("field '" + path + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t positive(const json& j, const char* key, const std::string& path,
                       std::uint64_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const std::uint64_t v = as_uint(j.at(key), path);
  if (v == 0) throw ScenarioError("field '" + path + "' must be positive");
  return v;
}

Word word_field(const json& v, const std::string& path, const GroupContext& g) {
  if (!v.is_string()) throw ScenarioError("field '" + path + "' must be a word string");
  try {
    const std::string text = v.get<std::string>();
    std::vector<Letter> letters;
    for (char c : text) letters.push_back(parse_letter(c));
    g.validate(letters);
    return g.reduce(letters);
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError("field '" + path + "': " + e.what());
  }
}

/// Check-level override or the scenario default.
std::uint64_t param(const CheckSpec& c, const char* key, std::uint64_t fallback) {
  if (!c.params.contains(key)) return fallback;
  return as_uint(c.params.at(key), "checks." + c.id + "." + key);
}

std::string text_param(const CheckSpec& c, const char* key, std::string fallback) {
  if (!c.params.contains(key)) return fallback;
  if (!c.params.at(key).is_string()) {
    throw ScenarioError("field 'checks." + c.id + "." + key + "' must be a string");
  }
  return c.params.at(key).get<std::string>();
}

}  // namespace

Scenario Scenario::parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "parse error at line " << line << ", column " << column << ": " << e.what();
    throw ScenarioError(msg.str(), line, column);
  }
  return from_json(j);
}

Scenario Scenario::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Scenario Scenario::from_json(const json& j) {
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");
  Scenario s;
  s.source = j;
  const json& schema = field(j, "schema", "schema");
  if (schema != kScenarioSchema) {
    throw ScenarioError("field 'schema' must be \"" + std::string(kScenarioSchema) + "\"");
  }
  const json& name = field(j, "name", "name");
  if (!name.is_string() || name.get<std::string>().empty()) {
    throw ScenarioError("field 'name' must be a nonempty string");
  }
  s.name = name.get<std::string>();
  s.description = j.value("description", std::string{});

  const json& group = field(j, "group", "group");
  if (group.contains("free_rank")) {
    const auto rank = positive(group, "free_rank", "group.free_rank", 0);
    if (rank > 26) throw ScenarioError("field 'group.free_rank' must be at most 26");
    s.group = GroupContext::free_group(static_cast<unsigned>(rank));
  } else if (group.contains("permutations")) {
    const json& p = group.at("permutations");
    const auto degree = positive(p, "degree", "group.permutations.degree", 0);
    const json& gens = field(p, "generators", "group.permutations.generators");
    if (!gens.is_array() || gens.empty()) {
      throw ScenarioError("field 'group.permutations.generators' must be a nonempty list");
    }
    std::vector<Permutation> perms;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const std::string path = "group.permutations.generators[" + std::to_string(k) + "]";
      if (!gens[k].is_array()) throw ScenarioError("field '" + path + "' must be a list");
      Permutation perm;
      for (const auto& v : gens[k]) perm.push_back(static_cast<std::uint32_t>(as_uint(v, path)));
      perms.push_back(std::move(perm));
    }
    try {
      s.group = GroupContext::permutation_group(static_cast<unsigned>(degree), std::move(perms));
    } catch (const Error& e) {
      throw ScenarioError(std::string("field 'group.permutations': ") + e.what());
    }
  } else {
    throw ScenarioError("field 'group' needs 'free_rank' or 'permutations'");
  }

  const json& sub = field(j, "subgroup", "subgroup");
  if (!sub.is_array()) throw ScenarioError("field 'subgroup' must be a list of words");
  for (std::size_t k = 0; k < sub.size(); ++k) {
    s.subgroup.push_back(word_field(sub[k], "subgroup[" + std::to_string(k) + "]", s.group));
  }

  const json depths = j.value("depths", json::object());
  s.cylinder_depth = static_cast<unsigned>(positive(depths, "cylinder", "depths.cylinder", 1));
  s.target_depth = positive(depths, "target", "depths.target", 20);
  const json budgets = j.value("budgets", json::object());
  s.ball_radius = static_cast<unsigned>(positive(budgets, "ball_radius", "budgets.ball_radius", 4));
  s.steps = positive(budgets, "steps", "budgets.steps", 64);
  s.samples = positive(budgets, "samples", "budgets.samples", 100);
  s.atoms = positive(budgets, "atoms", "budgets.atoms", 5);
  s.max_cosets = positive(budgets, "max_cosets", "budgets.max_cosets", 4096);
  s.seed = as_uint(field(j, "seed", "seed"), "seed");

  const std::string action = j.value("fiber_action", std::string("enabled"));
  if (action != "enabled" && action != "disabled") {
    throw ScenarioError("field 'fiber_action' must be \"enabled\" or \"disabled\"");
  }
  s.fiber_action = action == "enabled";

  const json& checks = field(j, "checks", "checks");
  if (!checks.is_array()) throw ScenarioError("field 'checks' must be a list");
  std::set<std::string> ids;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const std::string path = "checks[" + std::to_string(k) + "]";
    const json& c = checks[k];
    const json& type = field(c, "type", path + ".type");
    if (!type.is_string() || !kCheckTypes.contains(type.get<std::string>())) {
      throw ScenarioError("field '" + path + ".type' names no known check");
    }
    CheckSpec spec;
    spec.type = type.get<std::string>();
    spec.id = c.value("id", spec.type);
    if (!ids.insert(spec.id).second) {
      throw ScenarioError("field '" + path + ".id' repeats id '" + spec.id + "'");
    }
    if (kInducedOnly.contains(spec.type) && !s.group.is_free()) {
      throw ScenarioError("field '" + path + ".type': " + spec.type + " needs a free group");
    }
    if (kFiniteOnly.contains(spec.type) && s.group.is_free()) {
      throw ScenarioError("field '" + path + ".type': " + spec.type + " needs a permutation group");
    }
    spec.params = c;
    s.checks.push_back(std::move(spec));
  }
  return s;
}

Fixture Fixture::build(const Scenario& s) {
  CosetTable table = [&] {
    try {
      return enumerate_cosets(s.subgroup_handle(), s.max_cosets);
    } catch (const Error& e) {
      throw ScenarioError(std::string("field 'subgroup': ") + e.what());
    }
  }();
  FiniteSpace base = FiniteSpace::from_cosets(table);
  std::optional<InducedSpace> induced;
  if (s.group.is_free()) {
    InducedSpace y = InducedSpace::with_boundary_fiber(s.subgroup_handle(), s.max_cosets);
    induced = s.fiber_action ? std::move(y) : y.with_fiber_action_disabled();
  }
  return Fixture{std::move(table), std::move(base), std::move(induced)};
}

FiniteExtension named_extension(const FiniteSpace& base, std::string_view name) {
  if (name == "identity") return FiniteExtension::identity(base);
  if (name == "regular") return FiniteExtension::regular(base);
  if (name.starts_with("product:")) {
    const std::string count(name.substr(8));
    if (count.empty() || count.find_first_not_of("0123456789") != std::string::npos) {
      throw ScenarioError("extension '" + std::string(name) + "' needs a copy count");
    }
    return FiniteExtension::product(base, static_cast<std::uint32_t>(std::stoul(count)));
  }
  throw ScenarioError("unknown extension '" + std::string(name) + "'");
}

namespace {

MinimalityParams minimality_for(const Scenario& s, const CheckSpec& c) {
  MinimalityParams p;
  p.depth = static_cast<unsigned>(param(c, "depth", s.cylinder_depth));
  p.radius = static_cast<unsigned>(param(c, "radius", s.ball_radius));
  p.samples = param(c, "samples", 10);
  p.seed = param(c, "seed", s.seed);
  return p;
}

ProximalityParams proximality_for(const Scenario& s, const CheckSpec& c, unsigned workers) {
  ProximalityParams p;
  p.sampler.samples = param(c, "samples", s.samples);
  p.sampler.max_atoms = param(c, "atoms", s.atoms);
  p.sampler.seed = param(c, "seed", s.seed);
  p.target_depth = param(c, "target_depth", s.target_depth);
  p.budget = param(c, "steps", s.steps);
  p.strategy = parse_strategy(text_param(c, "strategy", "paper-sequence"));
  p.axis = parse_word(text_param(c, "axis", "a"));
  p.greedy_radius = static_cast<unsigned>(param(c, "greedy_radius", 2));
  p.workers = workers;
  return p;
}

const InducedSpace& induced_of(const Fixture& f, const CheckSpec& c) {
  if (!f.induced) throw ScenarioError("check '" + c.id + "' needs an induced space (free group)");
  return *f.induced;
}

bool is_induced_measure(const json& measure) {
  return measure.is_array() && !measure.empty() && measure.front().contains("point") &&
         measure.front().at("point").is_string() &&
         measure.front().at("point").get<std::string>().starts_with("(");
}

CheckReport contract_report(const Scenario& s, const Fixture& f, const json& measure,
                            const ContractionOptions& o) {
  CheckReport r;
  r.check = "contract";
  r.seed = o.seed;
  r.parameters = {{"target_depth", o.target_depth},
                  {"budget", o.budget},
                  {"strategy", to_string(o.strategy)},
                  {"axis", to_string(o.axis)}};
  r.truncation["depths"]["target"] = o.target_depth;
  r.truncation["budgets"]["steps"] = o.budget;
  json e{{"measure", measure}};
  auto record = [&](const ContractionOutcome& out, bool verified) {
    if (out.certificate) {
      e["certificate"] = out.certificate->to_json();
      r.verdict = verified ? Verdict::Pass : Verdict::Fail;
      r.message = verified ? "certificate found and replayed" : "certificate replay mismatch";
    } else {
      e["reason"] = out.reason;
      r.verdict = Verdict::Inconclusive;
      r.message = out.reason;
    }
  };
  if (is_induced_measure(measure)) {
    if (!f.induced) throw ScenarioError("induced measures need a free group");
    e["space"] = "induced";
    const InducedMeasure nu = induced_measure_from_json(measure);
    const InducedProjection phi(*f.induced);
    if (!is_fiber_supported(phi, nu)) {
      // Every translate pushes forward to the same non-Dirac measure on the finite base.
      e["pushforward"] = measure_to_json(pushforward_map(phi, nu));
      r.verdict = Verdict::Fail;
      r.message = "atoms lie over several cosets; no translate can approach a Dirac";
      r.evidence.push_back(std::move(e));
      return r;
    }
    const auto out = contract_measure(*f.induced, nu, o);
    record(out, out.certificate && verify_certificate(*f.induced, nu, *out.certificate));
  } else {
    if (!s.group.is_free()) throw ScenarioError("boundary measures need a free group");
    e["space"] = "boundary";
    const BoundarySpace y = BoundarySpace::free(s.group.rank());
    const BoundaryMeasure nu = boundary_measure_from_json(measure);
    const auto out = contract_measure(y, nu, o);
    record(out, out.certificate && verify_certificate(y, nu, *out.certificate));
  }
  r.evidence.push_back(std::move(e));
  return r;
}

CheckReport run_check(const Scenario& s, const Fixture& f, const CheckSpec& c, unsigned workers) {
  const std::string& t = c.type;
  if (t == "minimal_finite") {
    if (c.params.contains("extension")) {
      return check_minimal_finite(named_extension(f.base, text_param(c, "extension", "")).source());
    }
    return check_minimal_finite(f.base);
  }
  if (t == "minimal_symbolic") {
    const MinimalityParams p = minimality_for(s, c);
    if (text_param(c, "space", "induced") == "boundary") {
      if (!s.group.is_free()) throw ScenarioError("check '" + c.id + "' needs a free group");
      return check_minimal_symbolic(BoundarySpace::free(s.group.rank()), p);
    }
    return check_minimal_symbolic(induced_of(f, c), p);
  }
  if (t == "finite_contractible") {
    if (!c.params.contains("measure")) throw ScenarioError("check '" + c.id + "' needs 'measure'");
    const FiniteSpace space = c.params.contains("extension")
                                  ? named_extension(f.base, text_param(c, "extension", "")).source()
                                  : f.base;
    return finite_contractible(space, finite_measure_from_json(c.params.at("measure")));
  }
  if (t == "contract") {
    if (!c.params.contains("measure")) throw ScenarioError("check '" + c.id + "' needs 'measure'");
    const ProximalityParams p = proximality_for(s, c, workers);
    ContractionOptions o = p.options();
    o.strategy = parse_strategy(text_param(c, "strategy", is_induced_measure(c.params.at("measure"))
                                                              ? "paper-sequence"
                                                              : "axis-power"));
    return contract_report(s, f, c.params.at("measure"), o);
  }
  if (t == "sp_extension") {
    const ProximalityParams p = proximality_for(s, c, workers);
    if (f.induced) return check_sp_extension(InducedProjection(*f.induced), p);
    return check_sp_extension(named_extension(f.base, text_param(c, "extension", "identity")), p);
  }
  if (t == "theorem_a_34") {
    return check_theorem_a_34(InducedProjection(induced_of(f, c)), proximality_for(s, c, workers),
                              minimality_for(s, c));
  }
  if (t == "decompose_fibers") {
    if (f.induced) return decompose_fibers(InducedProjection(*f.induced), minimality_for(s, c)).report;
    return decompose_fibers(named_extension(f.base, text_param(c, "extension", "identity"))).report;
  }
  if (t == "amenable_size_check") {
    std::vector<std::string> names{"identity", "product:2", "regular"};
    if (c.params.contains("candidates")) names = c.params.at("candidates").get<std::vector<std::string>>();
    std::vector<FiniteExtension> candidates;
    for (const auto& n : names) candidates.push_back(named_extension(f.base, n));
    return amenable_size_check(f.base, candidates, proximality_for(s, c, workers));
  }
  if (t == "isometry_proxy") {
    IsometryParams p;
    p.sampler.samples = param(c, "samples", 20);
    p.sampler.max_atoms = param(c, "atoms", s.atoms);
    p.sampler.seed = param(c, "seed", s.seed);
    p.functions = param(c, "functions", 20);
    p.max_function_depth = static_cast<unsigned>(param(c, "max_function_depth", 10));
    p.target_depth = param(c, "target_depth", s.target_depth);
    p.budget = param(c, "steps", s.steps);
    if (c.params.contains("epsilon")) p.epsilon = c.params.at("epsilon").get<double>();
    if (c.params.contains("ladder")) p.ladder = c.params.at("ladder").get<std::vector<unsigned>>();
    p.workers = workers;
    return check_isometry_proxy(induced_of(f, c), p);
  }
  throw ScenarioError("unknown check type '" + t + "'");
}

}  // namespace

json run_scenario(const Scenario& s, const RunOptions& options) {
  const Fixture f = Fixture::build(s);
  json report;
  report["schema"] = kReportSchema;
  report["versions"] = {{"relbound", kVersion}, {"scenario_schema", kScenarioSchema}};
  report["scenario"] = s.source;
  report["coset_table"] = f.table.to_json();
  if (s.group.is_free()) {
    const SchreierBasis schreier = schreier_basis(f.table);
    json basis = json::array();
    for (const auto& w : schreier.generators()) basis.push_back(to_string(w));
    report["schreier_basis"] = basis;
  }
  json checks = json::array();
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  for (const auto& c : s.checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckReport r;
    try {
      r = run_check(s, f, c, std::max(1u, options.workers));
    } catch (const BallCapExceeded& e) {
      r.check = c.type;
      r.verdict = Verdict::Inconclusive;
      r.message = std::string("budget exceeded: ") + e.what();
    } catch (const CosetEnumerationError& e) {
      r.check = c.type;
      r.verdict = Verdict::Inconclusive;
      r.message = std::string("budget exceeded: ") + e.what();
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    pass += r.verdict == Verdict::Pass;
    fail += r.verdict == Verdict::Fail;
    inconclusive += r.verdict == Verdict::Inconclusive;
    checks.push_back({{"id", c.id},
                      {"type", c.type},
                      {"wall_clock_ms", std::round(ms.count() * 1000.0) / 1000.0},
                      {"report", r.to_json()}});
  }
  report["checks"] = std::move(checks);
  report["summary"] = {{"pass", pass},
                       {"fail", fail},
                       {"inconclusive", inconclusive},
                       {"exit_status", fail > 0 ? 1 : 0}};
  return report;
}

int exit_status(const json& report) {
  return report.at("summary").at("fail").get<std::size_t>() > 0 ? 1 : 0;
}

json strip_timing(json report) {
  for (auto& c : report["checks"]) c.erase("wall_clock_ms");
  return report;
}

ReplayVerdict replay_from_report(const json& report, std::string_view check_id,
                                 std::size_t cert_index) {
  if (report.value("schema", std::string{}) != kReportSchema) {
    throw ScenarioError("not a report (missing schema \"" + std::string(kReportSchema) + "\")");
  }
  const Scenario s = Scenario::from_json(report.at("scenario"));
  const json* check = nullptr;
  for (const auto& c : report.at("checks")) {
    if (c.at("id") == check_id) check = &c;
  }
  if (check == nullptr) throw ScenarioError("report has no check '" + std::string(check_id) + "'");
  const json* entry = nullptr;
  std::size_t seen = 0;
  for (const auto& e : check->at("report").at("evidence")) {
    if (!e.contains("certificate")) continue;
    if (seen++ == cert_index) entry = &e;
  }
  if (entry == nullptr) {
    throw ScenarioError("check '" + std::string(check_id) + "' has no certificate " +
                        std::to_string(cert_index));
  }
  const Fixture f = Fixture::build(s);
  const ContractionCertificate cert = ContractionCertificate::from_json(entry->at("certificate"));
  const json& measure = entry->at("measure");
  ReplayResult replay;
  if (is_induced_measure(measure)) {
    if (!f.induced) throw ScenarioError("induced certificate in a finite scenario");
    replay = replay_certificate(*f.induced, induced_measure_from_json(measure), cert);
  } else {
    replay = replay_certificate(BoundarySpace::free(s.group.rank()),
                                boundary_measure_from_json(measure), cert);
  }
  ReplayVerdict v;
  v.stored_depth = cert.achieved_depth;
  v.replayed_depth = replay.achieved_depth;
  const bool match = replay.achieved_depth == cert.achieved_depth && replay.limit == cert.limit;
  if (!match) {
    v.verdict = Verdict::Fail;
    v.message = "replay mismatch: stored depth " + std::to_string(cert.achieved_depth) +
                ", replayed depth " + std::to_string(replay.achieved_depth);
  } else if (replay.achieved_depth < cert.target_depth) {
    v.verdict = Verdict::Fail;
    v.message = "replay matches but stays below the target depth";
  } else {
    v.message = "replay matches: depth " + std::to_string(replay.achieved_depth);
  }
  return v;
}

json contract_on_scenario(const Scenario& s, const json& measure, const ContractionOptions& options) {
  const Fixture f = Fixture::build(s);
  const json& list = measure.is_object() ? measure.at("measure") : measure;
  return contract_report(s, f, list, options).to_json();
}

std::string summarize(const json& report) {
  std::ostringstream out;
  out << "scenario " << report.at("scenario").at("name").get<std::string>() << "\n";
  for (const auto& c : report.at("checks")) {
    const json& r = c.at("report");
    out << "  " << r.at("verdict").get<std::string>() << "  " << c.at("id").get<std::string>()
        << " (" << c.at("type").get<std::string>() << "): " << r.value("message", std::string{});
    if (c.contains("wall_clock_ms")) out << " [" << c.at("wall_clock_ms").get<double>() << " ms]";
    out << "\n";
  }
  const json& sum = report.at("summary");
  out << "pass " << sum.at("pass") << ", fail " << sum.at("fail") << ", inconclusive "
      << sum.at("inconclusive");
  if (sum.at("inconclusive").get<std::size_t>() > 0) out << " (inconclusive checks flagged)";
  out << "\n";
  return out.str();
}

}  // namespace relbound
