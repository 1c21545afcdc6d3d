#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "votepos/rational.hpp"

namespace votepos {

/// A positional scoring rule s = (s_1, ..., s_m): nonincreasing, with
/// s_1 > s_m. The vector is stored 0-based, so `score(0)` is s_1.
class ScoringRule {
 public:
  /// Throws Error{NotNonincreasing} or Error{ConstantRule}; fewer than two
  /// scores is a ParseError.
  explicit ScoringRule(std::vector<Rational> scores);

  std::size_t size() const { return scores_.size(); }
  const Rational& score(std::size_t i) const { return scores_[i]; }
  std::span<const Rational> scores() const { return scores_; }
  Rational total() const;
  Rational mean() const;

  /// Comma-separated, in the same format `parse_rule` accepts.
  std::string str() const;

  friend bool operator==(const ScoringRule&, const ScoringRule&) = default;

 private:
  std::vector<Rational> scores_;
};

enum class RuleClassKind { BestRewarding, WorstPunishing, Intermediate };

std::string_view to_string(RuleClassKind kind);

struct RuleClass {
  RuleClassKind kind;
  Rational threshold;
};

struct ShapeProfile {
  bool convex = false;
  bool concave = false;
  bool weakly_concave = false;
  bool symmetric = false;
  bool eq_wp1_holds = false;  // s_4 + s_{m-3} bound on the end blocks
};

struct Plateaus {
  std::size_t leading_k;   // s_1 = ... = s_k > s_{k+1}
  std::size_t trailing_n;  // s_n > s_{n+1} = ... = s_m
};

/// Returned by `subrule` when every selected score is equal.
struct ConstantSubrule {
  Rational value;
  std::size_t length;
};

using SubruleResult = std::variant<ScoringRule, ConstantSubrule>;

ScoringRule parse_rule(std::string_view text);

/// Affine-equivalent rule with s_m = 0 and coprime integer scores.
ScoringRule canonicalize(const ScoringRule& rule);

/// c(s, m) = (s_1 - mean) / (s_1 - s_m).
Rational cox_threshold(const ScoringRule& rule);
Rational cox_threshold(std::span<const Rational> scores);

RuleClass classify(const ScoringRule& rule);
ShapeProfile shape_profile(const ScoringRule& rule);
Plateaus plateaus(const ScoringRule& rule);

/// Scores s_{first+1} .. s_{first+1+extra} in 1-based terms, i.e. `extra + 1`
/// consecutive entries starting at 0-based index `first`. Requires extra >= 1.
SubruleResult subrule(const ScoringRule& rule, std::size_t first, std::size_t extra);

bool is_borda_equivalent(const ScoringRule& rule);

}  // namespace votepos
