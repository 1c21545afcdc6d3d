#pragma once

// Region decomposition of a candidate's score on the uniform electorate
// [0, 1]. The kernel is generic in the coordinate type so the same code
// evaluates concrete positions (Rational) and builds affine score
// expressions over unknown positions for the deviation LP.

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

#include "votepos/rational.hpp"

namespace votepos {

/// How the focal candidate is ordered against the others sharing its point.
enum class TieMode {
  Shared,      // fair lottery over the whole block
  AheadLeft,   // limit from the left: first on the left side, last on the right
  AheadRight,  // limit from the right
};

/// Per-rank-block values of a rule: prefix sums give block means in O(1).
class RankBlocks {
 public:
  explicit RankBlocks(std::span<const Rational> scores) : s_(scores.begin(), scores.end()) {
    prefix_.resize(s_.size() + 1);
    for (std::size_t i = 0; i < s_.size(); ++i) prefix_[i + 1] = prefix_[i] + s_[i];
  }

  std::size_t size() const { return s_.size(); }
  const Rational& at(std::size_t rank0) const { return s_[rank0]; }

  /// Mean of s over 0-based ranks [first, first + len).
  Rational mean(std::size_t first, std::size_t len) const {
    return (prefix_[first + len] - prefix_[first]) / Rational(static_cast<std::int64_t>(len));
  }

 private:
  std::vector<Rational> s_;
  std::vector<Rational> prefix_;
};

/// Score of a candidate standing at positions[focus] together with
/// counts[focus] other candidates. Clusters must be listed in increasing
/// position order; zero counts are allowed and only split regions.
///
/// Voters left of the focal point see the clusters to the left become
/// closer one at a time as they cross the midpoints (x^l + p)/2; clusters
/// on the right are always farther. The right side is symmetric.
template <class Coord>
Coord score_at(const RankBlocks& blocks, std::span<const Coord> positions,
               std::span<const int> counts, std::size_t focus, TieMode mode) {
  assert(positions.size() == counts.size() && focus < positions.size());
  const Coord& p = positions[focus];
  const std::size_t shared = static_cast<std::size_t>(counts[focus]);

  auto value = [&](std::size_t closer, bool left_side) -> Rational {
    switch (mode) {
      case TieMode::Shared: return blocks.mean(closer, shared + 1);
      case TieMode::AheadLeft: return blocks.at(left_side ? closer : closer + shared);
      case TieMode::AheadRight: return blocks.at(left_side ? closer + shared : closer);
    }
    return Rational{};
  };

  Coord total = p - p;
  const Coord zero = total;

  Coord upper = p;
  std::size_t closer = 0;
  for (std::size_t i = focus; i-- > 0;) {
    Coord boundary = (positions[i] + p) * Rational(1, 2);
    total = total + (upper - boundary) * value(closer, true);
    closer += static_cast<std::size_t>(counts[i]);
    upper = std::move(boundary);
  }
  total = total + (upper - zero) * value(closer, true);

  Coord lower = p;
  closer = 0;
  for (std::size_t i = focus + 1; i < positions.size(); ++i) {
    Coord boundary = (p + positions[i]) * Rational(1, 2);
    total = total + (boundary - lower) * value(closer, false);
    closer += static_cast<std::size_t>(counts[i]);
    lower = std::move(boundary);
  }
  total = total + ((zero + Rational(1)) - lower) * value(closer, false);
  return total;
}

}  // namespace votepos
