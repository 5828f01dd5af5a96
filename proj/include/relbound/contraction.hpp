#ifndef RELBOUND_CONTRACTION_HPP_
#define RELBOUND_CONTRACTION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "relbound/measure.hpp"
#include "relbound/poisson.hpp"

namespace relbound {

using BoundaryMeasure = AtomicMeasure<BoundaryPoint>;
using InducedMeasure = AtomicMeasure<InducedPoint>;
using FiniteMeasure = AtomicMeasure<FiniteSpace::Point>;

/// Common-prefix depth shared by all atoms; nullopt for a single atom.
std::optional<std::size_t> concentration_depth(const BoundaryMeasure& nu);
/// 0 when atoms sit over different cosets; otherwise the fiber depth.
std::optional<std::size_t> concentration_depth(const InducedMeasure& nu);

enum class Strategy { AxisPower, PaperSequence, GreedyBall };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct ContractionOptions {
  std::size_t target_depth = 20;
  std::size_t budget = 64;  // maximum number of steps
  Strategy strategy = Strategy::AxisPower;
  std::uint64_t seed = 0;
  /// Cyclically reduced axis in the fiber free group (axis-power, paper-sequence).
  Word axis = Word::generator(1);
  /// Ball radius searched per step (greedy-ball).
  unsigned greedy_radius = 2;
};

/// Finite witness that δ_y lies in the weak* closure of Γν up to a depth:
/// replaying `steps` in order concentrates every atom in `limit`.
struct ContractionCertificate {
  std::string strategy;
  std::vector<Word> steps;
  std::size_t target_depth = 0;
  std::size_t achieved_depth = 0;
  CylinderKey limit;

  /// Composite element steps.back() ⋯ steps.front().
  Word composite() const;
  /// Σ |steps|.
  std::size_t total_length() const;

  nlohmann::json to_json() const;
  static ContractionCertificate from_json(const nlohmann::json& j);
};

struct ContractionOutcome {
  std::optional<ContractionCertificate> certificate;
  /// Set when no certificate was found within the budget.
  std::string reason;
  std::size_t best_depth = 0;
  std::size_t steps_tried = 0;
};

ContractionOutcome contract_measure(const BoundarySpace& space, const BoundaryMeasure& nu,
                                    const ContractionOptions& options);
ContractionOutcome contract_measure(const InducedSpace& space, const InducedMeasure& nu,
                                    const ContractionOptions& options);

struct ReplayResult {
  std::size_t achieved_depth = 0;
  CylinderKey limit;
};

ReplayResult replay_certificate(const BoundarySpace& space, const BoundaryMeasure& nu,
                                const ContractionCertificate& cert);
ReplayResult replay_certificate(const InducedSpace& space, const InducedMeasure& nu,
                                const ContractionCertificate& cert);

/// Replay matches the recorded depth and limit cylinder, and reaches the target.
template <class S, class M>
bool verify_certificate(const S& space, const M& nu, const ContractionCertificate& cert) {
  const ReplayResult r = replay_certificate(space, nu, cert);
  return r.achieved_depth == cert.achieved_depth && r.limit == cert.limit &&
         r.achieved_depth >= cert.target_depth;
}

/// Γ-element moving the certificate's limit cylinder into `target` (a cylinder
/// of depth ≤ achieved depth): afterwards every atom lies in `target`.
Word steering_word(const InducedSpace& space, const ContractionCertificate& cert,
                   const CylinderKey& target);

}  // namespace relbound

#endif  // RELBOUND_CONTRACTION_HPP_
