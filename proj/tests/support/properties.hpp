#pragma once

#include <cstdint>
#include <string>

namespace votepos::testkit {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Property suites shared by the unit tests and the acceptance binary.

/// Sum over all candidates of their score equals the sum of the rule, both
/// for the library's scoring and for the verify oracle.
PropertyResult conservation(std::uint64_t seed, int profiles);

/// For every cluster of two, the left and right limit payoffs of either
/// member at its own position sum to twice its score (library and oracle).
PropertyResult pair_limit_identity(std::uint64_t seed, int profiles);

/// Payoff slopes from score_pieces agree with exact finite differences of
/// free-point deviations, and the stored end values agree with the limit
/// targets.
PropertyResult slope_finite_differences(std::uint64_t seed, int profiles);

/// Classification outputs are unchanged under s -> alpha s + beta.
PropertyResult affine_invariance_classification(std::uint64_t seed, int rules);

/// find_ncne returns the same types and witnesses under s -> alpha s + beta.
PropertyResult affine_invariance_search(std::uint64_t seed, int rules);

/// Convex iff every nonconstant subrule has threshold >= 1/2, over every rule
/// with integer scores in [0, k] for 3 <= m <= max_m.
PropertyResult subrule_convexity(std::size_t max_m, int k);

/// grid_cross_check and verify_profile agree on random pairs and on known
/// equilibria.
PropertyResult grid_agrees_with_verify(std::uint64_t seed, int pairs, int resolution);

}  // namespace votepos::testkit
