#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "votepos/analytic.hpp"
#include "votepos/lpcore.hpp"
#include "votepos/profiles.hpp"
#include "votepos/rulekit.hpp"

namespace votepos {

struct TypeEntry {
  ClusterType type;
  bool pruned = false;
  std::vector<std::string> reasons;
};

/// All compositions of m, grouped by number of parts q = 1..m and
/// lexicographic within each group. With a pruner, rejected types stay in the
/// list, tagged with the reasons.
std::vector<TypeEntry> enumerate_cluster_types(std::size_t m, const ClusterPruner* pruner = nullptr);

/// Max-min-gap LP for one cluster type. Variables x1..xq, then d (the gap).
/// For q = 1 the single position is widened to the interval [x - d, x + d],
/// every point of which must resist deviation; d* > 0 then means a
/// nondegenerate interval of convergent equilibria.
/// Throws CompositionMismatch.
LinearProgram build_deviation_lp(const ScoringRule& rule, const ClusterType& type);

struct SearchOptions {
  bool prune = true;
  bool include_cne = false;
  unsigned jobs = 1;
};

enum class TypeStatus { Ncne, BoundaryOnly, Infeasible, Pruned, Cne, VerificationFailed };

std::string_view to_string(TypeStatus status);

struct TypeOutcome {
  ClusterType type;
  TypeStatus status = TypeStatus::Infeasible;
  std::vector<std::string> reasons;   // prune reasons
  std::optional<LpOutcome> lp;
  std::optional<Profile> witness;
  std::optional<Interval> cne_range;  // q = 1 only
};

struct SearchResult {
  ScoringRule rule;  // canonical form that was searched
  std::vector<TypeOutcome> outcomes;
  std::vector<ClusterType> ncne_types;
  std::optional<Interval> cne_interval;
  std::vector<ClusterType> verification_failures;
};

/// Solves every retained type's LP. Witnesses are re-certified with
/// verify_profile; any that fail are reported, never returned as NCNE.
/// Output order does not depend on `jobs`.
SearchResult find_ncne(const ScoringRule& rule, const SearchOptions& options = {});

}  // namespace votepos
