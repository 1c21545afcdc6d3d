#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "votepos/profiles.hpp"
#include "votepos/rational.hpp"
#include "votepos/rulekit.hpp"

namespace votepos {

using ClusterType = std::vector<int>;

std::string type_str(const ClusterType& type);  // "(2,1,2)"

struct Interval {
  Rational lower;
  Rational upper;
  bool lower_closed = true;
  bool upper_closed = true;

  bool contains(const Rational& x) const;
  /// Midpoint, or the unique point of a degenerate interval.
  Rational midpoint() const { return (lower + upper) * Rational(1, 2); }
  std::string str() const;  // "[1/3, 1/2)"

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Conclusion { NoNCNE, NoNE, NCNEConstructed, Inconclusive };

std::string_view to_string(Conclusion c);

struct Verdict {
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string reason;  // short tag naming the result that fired
  std::string note;    // human-readable detail
  std::optional<Profile> witness;
  std::optional<Interval> interval;
  std::vector<ClusterType> admissible_types;
  std::optional<int> max_cluster_size;
};

/// [c, 1 - c] when c <= 1/2; every convergent equilibrium position.
std::optional<Interval> cne_interval(const ScoringRule& rule);

struct StructuralBounds {
  Rational max_gap;                         // 2(1 - c)
  mpz_class min_positions;                  // ceil(1 / (2(1 - c)))
  std::optional<Interval> forbidden_center; // (1 - c, c) when c > 1/2
};

StructuralBounds structural_bounds(const ScoringRule& rule);

/// Every nonexistence result whose hypotheses the rule meets. A result that
/// rules out nonconvergent equilibria is reported as NoNE when the rule is
/// also best-rewarding (no convergent ones either).
std::vector<Verdict> impossibility_verdicts(const ScoringRule& rule);

struct PruneDecision {
  bool keep = true;
  std::vector<std::string> reasons;
};

/// Necessary conditions on the cluster type of any nonconvergent
/// equilibrium. Types with a single cluster are always kept.
/// Throws CompositionMismatch when the parts do not sum to m.
PruneDecision prune_cluster_type(const ScoringRule& rule, const ClusterType& type);

/// Rules of the form (a, b, ..., b, 0) up to affine equivalence. With
/// a <= 2b there is no nonconvergent equilibrium; with a > 2b every cluster
/// of one holds at most two candidates.
std::optional<Verdict> abb0_analysis(const ScoringRule& rule);

/// prune_cluster_type plus the cluster-size cap for (a, b, ..., b, 0) rules,
/// with the rule-level quantities computed once.
class ClusterPruner {
 public:
  explicit ClusterPruner(const ScoringRule& rule);
  PruneDecision decide(const ClusterType& type) const;

 private:
  ScoringRule rule_;
  std::optional<int> size_cap_;
};

struct BipositionalSolution {
  Interval x1_range;
  Profile witness;
};

/// Symmetric two-cluster equilibria ((x, m/2), (1 - x, m/2)) for even m.
/// Throws OddM.
std::optional<BipositionalSolution> bipositional_solve(const ScoringRule& rule);

/// Checks a profile of q clusters of r candidates each under a rule whose
/// scores vanish from s_r on. Throws FormMismatch otherwise.
bool multipositional_check(const ScoringRule& rule, const Profile& profile);

/// Symmetric version: r candidates at the midpoint of each of q equal
/// electorates, when the leading subrule is not best-rewarding.
std::optional<Profile> multipositional_construct(const ScoringRule& rule, int q, int r);

/// Complete answers for m = 4 and 5; admissible type groups for m = 6.
/// Throws UnsupportedM otherwise.
Verdict characterize_small_m(const ScoringRule& rule);

}  // namespace votepos
