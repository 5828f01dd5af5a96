#ifndef RELBOUND_SCENARIO_HPP_
#define RELBOUND_SCENARIO_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relbound/checks.hpp"

namespace relbound {

inline constexpr const char* kScenarioSchema = "relbound.scenario/1";
inline constexpr const char* kReportSchema = "relbound.report/1";
inline constexpr const char* kVersion = "1.0.0";

/// Malformed or invalid scenario. Parse errors carry a 1-based line/column;
/// validation errors name the offending field.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& what, std::optional<std::size_t> line = std::nullopt,
                std::optional<std::size_t> column = std::nullopt)
      : Error(what), line(line), column(column) {}
  std::optional<std::size_t> line;
  std::optional<std::size_t> column;
};

struct CheckSpec {
  std::string id;
  std::string type;
  nlohmann::json params;  // the check object as written
};

struct Scenario {
  std::string name;
  std::string description;
  nlohmann::json source;  // the parsed document, echoed into reports
  GroupContext group = GroupContext::free_group(2);
  std::vector<Word> subgroup;
  unsigned cylinder_depth = 1;
  std::size_t target_depth = 20;
  unsigned ball_radius = 4;
  std::size_t steps = 64;
  std::size_t samples = 100;
  std::size_t atoms = 5;
  std::size_t max_cosets = 4096;
  std::uint64_t seed = 0;
  bool fiber_action = true;
  std::vector<CheckSpec> checks;

  static Scenario parse(std::string_view text);
  static Scenario from_json(const nlohmann::json& j);
  static Scenario load(const std::filesystem::path& path);

  SubgroupHandle subgroup_handle() const { return {group, subgroup}; }
};

/// Concrete spaces built from a scenario.
struct Fixture {
  CosetTable table;
  FiniteSpace base;
  std::optional<InducedSpace> induced;  // free ambient groups only

  static Fixture build(const Scenario& s);
};

/// Finite extension named "identity", "product:k" or "regular".
FiniteExtension named_extension(const FiniteSpace& base, std::string_view name);

struct RunOptions {
  unsigned workers = 1;
};

/// Runs the checks in declared order and assembles the report:
/// {schema, versions, scenario, coset_table, checks: [{id, type, wall_clock_ms, report}], summary}.
nlohmann::json run_scenario(const Scenario& s, const RunOptions& options = {});

/// 0 when no check failed, 1 otherwise.
int exit_status(const nlohmann::json& report);

/// The report with every wall-clock field removed (for byte comparisons).
nlohmann::json strip_timing(nlohmann::json report);

struct ReplayVerdict {
  Verdict verdict = Verdict::Pass;
  std::string message;
  std::size_t stored_depth = 0;
  std::size_t replayed_depth = 0;
};

/// Recomputes a stored certificate from serialized data only. `cert_index`
/// counts the evidence entries of the check that carry a certificate.
ReplayVerdict replay_from_report(const nlohmann::json& report, std::string_view check_id,
                                 std::size_t cert_index);

/// One-off contraction of a measure on the scenario's induced space (points
/// "(i, prefix|period)") or on the ambient free group's boundary.
nlohmann::json contract_on_scenario(const Scenario& s, const nlohmann::json& measure,
                                    const ContractionOptions& options);

/// Human-readable one-line-per-check summary.
std::string summarize(const nlohmann::json& report);

}  // namespace relbound

#endif  // RELBOUND_SCENARIO_HPP_
