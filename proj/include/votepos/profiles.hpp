#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "votepos/rational.hpp"
#include "votepos/rulekit.hpp"

namespace votepos {

struct Cluster {
  Rational position;
  int count;

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Distinct occupied positions in increasing order, each with the number
/// of candidates standing there.
class Profile {
 public:
  Profile() = default;

  const std::vector<Cluster>& clusters() const { return clusters_; }
  std::size_t size() const { return clusters_.size(); }
  const Cluster& operator[](std::size_t i) const { return clusters_[i]; }
  int candidates() const;
  std::vector<int> type() const;

  /// "p*n;p*n;..." as accepted by `parse_profile`.
  std::string str() const;

  /// Reflection through 1/2.
  Profile mirrored() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  friend Profile make_profile(std::vector<std::pair<Rational, int>>, std::size_t);
  std::vector<Cluster> clusters_;
};

/// Sorts and merges equal positions. Throws CountMismatch when the counts
/// are not positive or do not sum to `m`, PositionOutOfRange outside [0, 1].
Profile make_profile(std::vector<std::pair<Rational, int>> entries, std::size_t m);
Profile make_profile(std::vector<std::pair<Rational, int>> entries, const ScoringRule& rule);

/// Parses "13/28*8;41/84*4".
Profile parse_profile(std::string_view text, const ScoringRule& rule);

struct AtCluster { std::size_t cluster; };
struct LeftLimit { std::size_t cluster; };
struct RightLimit { std::size_t cluster; };
struct FreePoint { Rational t; };

/// Where a deviating candidate goes. Cluster indices refer to the original
/// profile; the mover's own cluster stays addressable while it still holds
/// other candidates.
using DeviationTarget = std::variant<AtCluster, LeftLimit, RightLimit, FreePoint>;

std::string describe(const DeviationTarget& target);

Rational candidate_score(const Profile& profile, const ScoringRule& rule, std::size_t cluster);

/// Score of one candidate from `mover_cluster` after it relocates to
/// `target`. Throws InvalidTarget for references to a vacated position or to
/// an occupied point given as FreePoint.
Rational deviation_score(const Profile& profile, const ScoringRule& rule,
                         std::size_t mover_cluster, const DeviationTarget& target);

struct LinearPiece {
  Rational left;         // breakpoint at the left end
  Rational right;        // breakpoint at the right end
  Rational slope;
  Rational left_value;   // limit of the payoff as t -> left from above
  Rational right_value;  // limit as t -> right from below
};

struct PiecewiseLinear {
  std::vector<LinearPiece> pieces;
};

/// Payoff t -> v_i(t, x_{-i}) of a candidate leaving `mover_cluster`, as
/// affine pieces between 0, the remaining occupied positions and 1.
PiecewiseLinear score_pieces(const Profile& profile, const ScoringRule& rule,
                             std::size_t mover_cluster);

}  // namespace votepos
