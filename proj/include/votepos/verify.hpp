#pragma once

#include <cstddef>
#include <vector>

#include "votepos/profiles.hpp"
#include "votepos/rational.hpp"
#include "votepos/rulekit.hpp"

namespace votepos {

enum class EquilibriumStatus { Equilibrium, NotEquilibrium };

std::string_view to_string(EquilibriumStatus status);

struct LedgerEntry {
  std::size_t mover_cluster;
  DeviationTarget target;
  Rational deviation_score;
  Rational slack;  // current score minus deviation score
};

struct EquilibriumReport {
  EquilibriumStatus status = EquilibriumStatus::Equilibrium;
  std::vector<Rational> cluster_scores;
  std::vector<LedgerEntry> ledger;
  std::vector<LedgerEntry> violations;
};

/// Certifies or refutes a profile as a Nash equilibrium by evaluating every
/// deviation in the dominating set: joining another cluster and the two
/// one-sided approaches to every cluster left after the mover departs.
///
/// Scores are recomputed from scratch by sorting all pairwise midpoints and
/// ranking candidates at a sample voter of each elementary interval.
/// One-sided limits are extrapolated from two interior points of the
/// adjacent open interval, on which the payoff is affine.
EquilibriumReport verify_profile(const ScoringRule& rule, const Profile& profile);

/// verify_profile plus FreePoint deviations at t = k/N, k = 0..N, skipping
/// occupied points.
EquilibriumReport grid_cross_check(const ScoringRule& rule, const Profile& profile, int resolution);

/// Brute-force score of candidate `focus` for explicit per-candidate
/// positions. Exposed for tests.
Rational brute_force_score(const ScoringRule& rule, const std::vector<Rational>& positions, std::size_t focus);

}  // namespace votepos
