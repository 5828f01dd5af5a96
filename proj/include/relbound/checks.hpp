#ifndef RELBOUND_CHECKS_HPP_
#define RELBOUND_CHECKS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relbound/contraction.hpp"
#include "relbound/sampler.hpp"

namespace relbound {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);
Verdict parse_verdict(std::string_view text);
/// FAIL dominates INCONCLUSIVE, which dominates PASS.
Verdict combine(Verdict a, Verdict b);

/// Outcome of one check. FAIL carries a counterexample, PASS replayable
/// evidence, INCONCLUSIVE the exhausted budgets.
struct CheckReport {
  std::string check;
  Verdict verdict = Verdict::Pass;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  nlohmann::json evidence = nlohmann::json::array();
  nlohmann::json truncation = {{"depths", nlohmann::json::object()},
                               {"radii", nlohmann::json::object()},
                               {"budgets", nlohmann::json::object()}};
  std::string message;

  nlohmann::json to_json() const;
  static CheckReport from_json(const nlohmann::json& j);
};

// Measure serialization: [{point, weight: "p/q"}]. Finite points are integers.
nlohmann::json measure_to_json(const BoundaryMeasure& nu);
nlohmann::json measure_to_json(const InducedMeasure& nu);
nlohmann::json measure_to_json(const FiniteMeasure& nu);
BoundaryMeasure boundary_measure_from_json(const nlohmann::json& j);
InducedMeasure induced_measure_from_json(const nlohmann::json& j);
FiniteMeasure finite_measure_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------- minimality

CheckReport check_minimal_finite(const FiniteSpace& x);

struct MinimalityParams {
  unsigned depth = 1;
  unsigned radius = 4;
  std::size_t samples = 10;
  std::uint64_t seed = 0;
  unsigned walk_length = 8;
};

/// Orbit of each seeded start point under ball(R) must meet every depth-d
/// cylinder (and every coset for induced spaces).
CheckReport check_minimal_symbolic(const BoundarySpace& y, const MinimalityParams& params);
CheckReport check_minimal_symbolic(const InducedSpace& y, const MinimalityParams& params);

/// Seeded start point used by check_minimal_symbolic for sample `index`.
InducedPoint minimality_start(const InducedSpace& y, const MinimalityParams& params,
                              std::uint64_t index);

// ---------------------------------------------------------- contractibility

struct FiniteContractibility {
  bool contractible = false;
  /// Shortlex-first word (along the BFS) bringing ν to a Dirac.
  std::optional<Word> witness;
  std::vector<FiniteMeasure> orbit;
  bool truncated = false;
};

/// Exhaustive orbit enumeration of ν under the generated permutation group.
FiniteContractibility enumerate_measure_orbit(const FiniteSpace& x, const FiniteMeasure& nu,
                                              std::size_t cap = 1'000'000);

CheckReport finite_contractible(const FiniteSpace& x, const FiniteMeasure& nu);

struct ProximalityParams {
  SamplerParams sampler;
  std::size_t target_depth = 20;
  std::size_t budget = 64;
  Strategy strategy = Strategy::PaperSequence;
  Word axis = Word::generator(1);
  unsigned greedy_radius = 2;
  unsigned workers = 1;

  ContractionOptions options() const;
  nlohmann::json to_json() const;
};

/// Every sampled fiber-supported measure must contract; certificates are replayed.
CheckReport check_sp_extension(const InducedProjection& phi, const ProximalityParams& params);
/// Finite case: the uniform measure on every fiber of size ≥ 2, plus N sampled
/// fiber measures, each decided by exhaustive orbit enumeration.
CheckReport check_sp_extension(const FiniteExtension& phi, const ProximalityParams& params);

/// Two-way consistency of "φ_*ν contractible ⇒ ν contractible" with base and
/// total-space minimality.
CheckReport check_theorem_a_34(const InducedProjection& phi, const ProximalityParams& params,
                               const MinimalityParams& minimality);

// --------------------------------------------------------------------- fibers

struct FiberInfo {
  FiniteSpace::Point base = 1;
  /// Word carrying the fiber over base point 1 to this fiber.
  Word transport;
  SubgroupHandle stabilizer;
};

struct FiberDecomposition {
  std::vector<FiberInfo> fibers;
  CheckReport report;
};

/// Fiber partition over each base point with its stabilizer, checked for
/// transport, setwise invariance and sampled fiber minimality under Λ_i.
FiberDecomposition decompose_fibers(const InducedProjection& phi, const MinimalityParams& params);
FiberDecomposition decompose_fibers(const FiniteExtension& phi);

// ------------------------------------------------------------------ amenable

/// For a finite group: exactly the candidates with |Y| = |X| must pass.
CheckReport amenable_size_check(const FiniteSpace& x, const std::vector<FiniteExtension>& candidates,
                                const ProximalityParams& params);

// ------------------------------------------------------------------- Poisson

struct IsometryParams {
  SamplerParams sampler;  // sampler.samples measures
  std::size_t functions = 20;
  unsigned max_function_depth = 10;
  std::size_t target_depth = 20;
  std::size_t budget = 64;
  double epsilon = 0.05;
  double mass_threshold = 0.975;
  std::vector<unsigned> ladder{2, 4, 6, 8};
  unsigned workers = 1;

  nlohmann::json to_json() const;
};

/// Random cylinder function with a few listed cylinders and a random fallback.
CylinderFunction random_cylinder_function(SeededRng& rng, unsigned depth, std::size_t cosets,
                                          unsigned rank);

/// Certified measures have small Poisson isometry defect at the certificate
/// radius, and the defect is non-increasing along the radius ladder.
CheckReport check_isometry_proxy(const InducedSpace& y, const IsometryParams& params);

}  // namespace relbound

#endif  // RELBOUND_CHECKS_HPP_
