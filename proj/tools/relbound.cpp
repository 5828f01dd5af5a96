// Command-line front end: runs scenario files and audits their certificates.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "relbound/scenario.hpp"

#ifndef RELBOUND_SCENARIO_DIR
#define RELBOUND_SCENARIO_DIR "scenarios"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace relbound;

namespace {

constexpr int kUsageError = 2;

unsigned default_workers() {
  if (const char* env = std::getenv("RELBOUND_WORKERS")) {
    try {
      const unsigned long n = std::stoul(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid RELBOUND_WORKERS='" << env << "'\n";
  }
  return 1;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ScenarioError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ScenarioError("cannot write '" + out + "'");
  f << text;
}

/// Accepts a path or the name of a bundled scenario.
fs::path resolve_scenario(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  const fs::path bundled = fs::path(RELBOUND_SCENARIO_DIR) / (arg + ".json");
  if (fs::exists(bundled)) return bundled;
  throw ScenarioError("no scenario file or bundled scenario named '" + arg + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relbound: finite certificates for boundary extensions of induced actions"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, report_path, check_id, measure_path, strategy = "auto",
                                                                                 axis = "a";
  unsigned workers = default_workers();
  std::size_t cert_index = 0;
  std::size_t target_depth = 0, budget = 0;
  std::size_t samples = 4;

  auto* run = app.add_subcommand("run", "run every check of a scenario and emit a JSON report");
  run->add_option("scenario", scenario_path, "scenario file or bundled scenario name")->required();
  run->add_option("--workers", workers, "worker threads (default: $RELBOUND_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "write the report here instead of stdout");

  auto* replay = app.add_subcommand("replay", "recompute a stored certificate from a report");
  replay->add_option("report", report_path, "report JSON")->required();
  replay->add_option("--check", check_id, "check id")->required();
  replay->add_option("--cert", cert_index, "index among the check's certificates")->required();

  auto* cosets = app.add_subcommand("enumerate-cosets", "print the coset table and Schreier basis");
  cosets->add_option("scenario", scenario_path, "scenario file or bundled scenario name")->required();

  auto* induce = app.add_subcommand("induce", "print the induced action on sample points");
  induce->add_option("scenario", scenario_path, "scenario file or bundled scenario name")->required();
  induce->add_option("--samples", samples, "number of sample points");

  auto* contract = app.add_subcommand("contract", "contract one measure and print its certificate");
  contract->add_option("scenario", scenario_path, "scenario file or bundled scenario name")->required();
  contract->add_option("--measure", measure_path, "measure JSON: [{point, weight}]")->required();
  contract->add_option("--strategy", strategy, "axis-power | paper-sequence | greedy-ball | auto");
  contract->add_option("--axis", axis, "axis word for axis-power and paper-sequence");
  contract->add_option("--target-depth", target_depth, "target depth (default: scenario)");
  contract->add_option("--budget", budget, "step budget (default: scenario)");

  auto* list = app.add_subcommand("list-scenarios", "list bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*run) {
      const Scenario s = Scenario::load(resolve_scenario(scenario_path));
      const json report = run_scenario(s, RunOptions{workers});
      write_output(report, out_path);
      std::cerr << summarize(report);
      return exit_status(report);
    }
    if (*replay) {
      const ReplayVerdict v = replay_from_report(read_json(report_path), check_id, cert_index);
      std::cout << to_string(v.verdict) << ": " << v.message << "\n";
      return v.verdict == Verdict::Fail ? 1 : 0;
    }
    if (*cosets) {
      const Scenario s = Scenario::load(resolve_scenario(scenario_path));
      const Fixture f = Fixture::build(s);
      json j{{"coset_table", f.table.to_json()}};
      if (s.group.is_free()) {
        json basis = json::array();
        const SchreierBasis schreier = schreier_basis(f.table);
        for (const auto& w : schreier.generators()) basis.push_back(to_string(w));
        j["schreier_basis"] = basis;
        j["schreier_rank"] = basis.size();
      }
      write_output(j, "");
      return 0;
    }
    if (*induce) {
      const Scenario s = Scenario::load(resolve_scenario(scenario_path));
      const Fixture f = Fixture::build(s);
      json j{{"coset_table", f.table.to_json()}};
      json rows = json::array();
      MinimalityParams p;
      p.seed = s.seed;
      for (std::size_t k = 0; k < samples; ++k) {
        json row;
        if (f.induced) {
          const InducedPoint pt = minimality_start(*f.induced, p, k);
          row["point"] = to_string(pt);
          for (Letter x : s.group.alphabet()) {
            const Word g = Word::reduce({x});
            row["images"][to_string(g)] = to_string(f.induced->act(g, pt));
            row["cocycle"][to_string(g)] = to_string(f.table.cocycle(g, pt.coset));
          }
        } else {
          const auto pt = static_cast<FiniteSpace::Point>(1 + k % f.base.size());
          row["point"] = pt;
          for (Letter x : s.group.alphabet()) {
            row["images"][to_string(Word::reduce({x}))] = f.base.act(x, pt);
          }
        }
        rows.push_back(std::move(row));
      }
      j["samples"] = std::move(rows);
      write_output(j, "");
      return 0;
    }
    if (*contract) {
      const Scenario s = Scenario::load(resolve_scenario(scenario_path));
      const json measure = read_json(measure_path);
      const json& list = measure.is_object() ? measure.at("measure") : measure;
      const bool induced = !list.empty() && list.front().at("point").is_string() &&
                           list.front().at("point").get<std::string>().starts_with("(");
      ContractionOptions o;
      o.target_depth = target_depth > 0 ? target_depth : s.target_depth;
      o.budget = budget > 0 ? budget : s.steps;
      o.seed = s.seed;
      o.axis = parse_word(axis);
      o.strategy = parse_strategy(strategy != "auto" ? strategy
                                  : induced          ? "paper-sequence"
                                                     : "axis-power");
      const json r = contract_on_scenario(s, list, o);
      write_output(r, "");
      return r.at("verdict") == "FAIL" ? 1 : 0;
    }
    if (*list) {
      std::vector<fs::path> files;
      if (fs::is_directory(RELBOUND_SCENARIO_DIR)) {
        for (const auto& e : fs::directory_iterator(RELBOUND_SCENARIO_DIR)) {
          if (e.path().extension() == ".json") files.push_back(e.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& p : files) {
        try {
          const Scenario s = Scenario::load(p);
          std::cout << s.name << "\t" << s.description << "\n";
        } catch (const Error& e) {
          std::cout << p.stem().string() << "\t(invalid: " << e.what() << ")\n";
        }
      }
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
