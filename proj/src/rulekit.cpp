#include "votepos/rulekit.hpp"

#include <numeric>
#include <sstream>

#include "votepos/error.hpp"

namespace votepos {

ScoringRule::ScoringRule(std::vector<Rational> scores) : scores_(std::move(scores)) {
  if (scores_.size() < 2) throw Error(ErrorCode::ParseError, "a scoring rule needs at least two scores");
  for (std::size_t i = 1; i < scores_.size(); ++i) {
    if (scores_[i] > scores_[i - 1]) {
      throw Error(ErrorCode::NotNonincreasing,
                  "score " + std::to_string(i + 1) + " exceeds score " + std::to_string(i));
    }
  }
  if (scores_.front() == scores_.back()) throw Error(ErrorCode::ConstantRule, "all scores are equal");
}

Rational ScoringRule::total() const {
  Rational t;
  for (const auto& s : scores_) t += s;
  return t;
}

Rational ScoringRule::mean() const { return total() / Rational(static_cast<std::int64_t>(size())); }

std::string ScoringRule::str() const {
  std::string out;
  for (std::size_t i = 0; i < scores_.size(); ++i) {
    if (i) out += ',';
    out += scores_[i].str();
  }
  return out;
}

std::string_view to_string(RuleClassKind kind) {
  switch (kind) {
    case RuleClassKind::BestRewarding: return "BestRewarding";
    case RuleClassKind::WorstPunishing: return "WorstPunishing";
    case RuleClassKind::Intermediate: return "Intermediate";
  }
  return "Unknown";
}

ScoringRule parse_rule(std::string_view text) {
  std::vector<Rational> scores;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    scores.push_back(Rational::parse(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ScoringRule(std::move(scores));
}

ScoringRule canonicalize(const ScoringRule& rule) {
  const Rational last = rule.score(rule.size() - 1);
  mpz_class den_lcm = 1;
  for (const auto& s : rule.scores()) {
    const Rational shifted = s - last;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), shifted.raw().get_den_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class num_gcd = 0;
  for (const auto& s : rule.scores()) {
    const Rational scaled = (s - last) * Rational(mpq_class(den_lcm));
    ints.push_back(scaled.numerator());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), ints.back().get_mpz_t());
  }
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (const auto& v : ints) out.emplace_back(mpq_class(v / num_gcd));
  return ScoringRule(std::move(out));
}

Rational cox_threshold(std::span<const Rational> scores) {
  Rational total;
  for (const auto& s : scores) total += s;
  const Rational mean = total / Rational(static_cast<std::int64_t>(scores.size()));
  return (scores.front() - mean) / (scores.front() - scores.back());
}

Rational cox_threshold(const ScoringRule& rule) { return cox_threshold(rule.scores()); }

RuleClass classify(const ScoringRule& rule) {
  const Rational c = cox_threshold(rule);
  const Rational half(1, 2);
  RuleClassKind kind = RuleClassKind::Intermediate;
  if (c > half) kind = RuleClassKind::BestRewarding;
  if (c < half) kind = RuleClassKind::WorstPunishing;
  return {kind, c};
}

ShapeProfile shape_profile(const ScoringRule& rule) {
  const auto& s = rule.scores();
  const std::size_t m = s.size();
  // d[i] = s_{i+1} - s_{i+2} in 1-based terms.
  std::vector<Rational> d(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) d[i] = s[i] - s[i + 1];

  ShapeProfile p;
  p.convex = true;
  p.concave = true;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] < d[i + 1]) p.convex = false;
    if (d[i] > d[i + 1]) p.concave = false;
  }

  // s_i - s_{i+1} <= s_{m-i} - s_{m-i+1} for 1 <= i <= floor(m/2).
  p.weakly_concave = true;
  p.symmetric = true;
  for (std::size_t i = 1; i <= m / 2; ++i) {
    const Rational& top = d[i - 1];
    const Rational& bottom = d[m - i - 1];
    if (top > bottom) p.weakly_concave = false;
    if (top != bottom) p.symmetric = false;
  }

  if (m <= 4) {
    p.eq_wp1_holds = true;
  } else {
    const std::size_t k = m - 3;
    Rational ends;
    for (std::size_t i = 0; i < k; ++i) ends += s[i];
    for (std::size_t i = 3; i < m; ++i) ends += s[i];
    p.eq_wp1_holds = s[3] + s[k - 1] >= ends / Rational(static_cast<std::int64_t>(k));
  }
  return p;
}

Plateaus plateaus(const ScoringRule& rule) {
  const auto& s = rule.scores();
  const std::size_t m = s.size();
  std::size_t k = 1;
  while (k < m && s[k] == s[0]) ++k;
  std::size_t n = m - 1;
  while (n > 0 && s[n - 1] == s[m - 1]) --n;
  return {k, n};
}

SubruleResult subrule(const ScoringRule& rule, std::size_t first, std::size_t extra) {
  if (extra < 1 || first + extra >= rule.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "subrule window exceeds the rule");
  }
  std::vector<Rational> part(rule.scores().begin() + static_cast<std::ptrdiff_t>(first),
                             rule.scores().begin() + static_cast<std::ptrdiff_t>(first + extra + 1));
  if (part.front() == part.back()) return ConstantSubrule{part.front(), part.size()};
  return ScoringRule(std::move(part));
}

bool is_borda_equivalent(const ScoringRule& rule) {
  const auto& s = rule.scores();
  const Rational step = s[0] - s[1];
  if (step.sign() <= 0) return false;
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    if (s[i] - s[i + 1] != step) return false;
  return true;
}

}  // namespace votepos
