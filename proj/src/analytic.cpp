#include "votepos/analytic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "votepos/error.hpp"

namespace votepos {

namespace {

const Rational kHalf(1, 2);

// 1-based access, matching the usual s_1..s_m notation.
struct Scores {
  std::span<const Rational> v;
  const Rational& operator()(std::size_t i) const { return v[i - 1]; }
  std::size_t m() const { return v.size(); }
};

Verdict no_ncne(const Rational& c, std::string reason, std::string note) {
  Verdict v;
  v.conclusion = c > kHalf ? Conclusion::NoNE : Conclusion::NoNCNE;
  v.reason = std::move(reason);
  v.note = std::move(note);
  return v;
}

void check_composition(const ScoringRule& rule, const ClusterType& type) {
  int sum = 0;
  for (int n : type) {
    if (n < 1) throw Error(ErrorCode::CompositionMismatch, "cluster sizes must be positive");
    sum += n;
  }
  if (type.empty() || sum != static_cast<int>(rule.size()))
    throw Error(ErrorCode::CompositionMismatch, "cluster type " + type_str(type) + " does not sum to m");
}

}  // namespace

std::string type_str(const ClusterType& type) {
  std::string out = "(";
  for (std::size_t i = 0; i < type.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(type[i]);
  }
  return out + ")";
}

bool Interval::contains(const Rational& x) const {
  const bool above = lower_closed ? x >= lower : x > lower;
  const bool below = upper_closed ? x <= upper : x < upper;
  return above && below;
}

std::string Interval::str() const {
  return (lower_closed ? "[" : "(") + lower.str() + ", " + upper.str() + (upper_closed ? "]" : ")");
}

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::NoNCNE: return "NoNCNE";
    case Conclusion::NoNE: return "NoNE";
    case Conclusion::NCNEConstructed: return "NCNEConstructed";
    case Conclusion::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

std::optional<Interval> cne_interval(const ScoringRule& rule) {
  const Rational c = cox_threshold(rule);
  if (c > kHalf) return std::nullopt;
  return Interval{c, Rational(1) - c, true, true};
}

StructuralBounds structural_bounds(const ScoringRule& rule) {
  const Rational c = cox_threshold(rule);
  const Rational room = Rational(1) - c;
  StructuralBounds b{room * Rational(2), ceil(Rational(1) / (room * Rational(2))), std::nullopt};
  if (c > kHalf) b.forbidden_center = Interval{room, c, false, false};
  return b;
}

std::vector<Verdict> impossibility_verdicts(const ScoringRule& rule) {
  const Scores s{rule.scores()};
  const std::size_t m = s.m();
  const Rational c = cox_threshold(rule);
  const Plateaus pl = plateaus(rule);
  const ShapeProfile shape = shape_profile(rule);
  std::vector<Verdict> out;

  if (pl.leading_k >= m / 2)
    out.push_back(no_ncne(c, "leading-plateau", "top " + std::to_string(pl.leading_k) +
                                                    " scores tie; both end clusters would need more candidates"));

  if (shape.convex) {
    const std::size_t n = pl.trailing_n;
    const auto head = subrule(rule, 0, n);
    const bool borda_head = std::holds_alternative<ScoringRule>(head) &&
                            is_borda_equivalent(std::get<ScoringRule>(head));
    if (borda_head && n + 1 <= m / 2) {
      Verdict v;
      v.reason = "convex-borda-head";
      v.note = "convex with a Borda head (s_1..s_" + std::to_string(n + 1) +
               ") shorter than the constant tail; equal clusters may exist";
      out.push_back(std::move(v));
    } else {
      out.push_back(no_ncne(c, "convex-scores", "convex scores"));
    }
  }

  if (shape.weakly_concave) {
    if (shape.eq_wp1_holds) {
      out.push_back(no_ncne(c, "weak-concavity", "weakly concave and the s_4 + s_{m-3} bound holds"));
    } else {
      Verdict v;
      v.reason = "weak-concavity-restricted";
      v.note = "no NCNE with max(n_1, n_q) <= " + std::to_string(m / 2);
      out.push_back(std::move(v));
    }
  }

  if (const auto abb = abb0_analysis(rule); abb && abb->conclusion != Conclusion::Inconclusive)
    out.push_back(*abb);

  if (shape.symmetric) out.push_back(no_ncne(c, "symmetric-scores", "symmetric scores"));

  if (m >= 4) {
    bool fires = false;
    if (m % 2 == 0)
      fires = c > Rational(1) - Rational(1, static_cast<std::int64_t>(m - 2)) && s(m / 2) != s(m / 2 + 1);
    else
      fires = c > Rational(1) - Rational(1, static_cast<std::int64_t>(m - 1)) &&
              s((m - 1) / 2) != s((m + 3) / 2);
    if (fires) out.push_back(no_ncne(c, "highly-best-rewarding", "threshold too high for enough occupied positions"));
  }
  return out;
}

PruneDecision prune_cluster_type(const ScoringRule& rule, const ClusterType& type) {
  check_composition(rule, type);
  PruneDecision d;
  const std::size_t q = type.size();
  if (q == 1) return d;

  const Scores s{rule.scores()};
  const std::size_t m = s.m();
  const std::size_t k = plateaus(rule).leading_k;
  const int n1 = type.front(), nq = type.back();

  if (static_cast<std::size_t>(std::min(n1, nq)) <= k)
    d.reasons.push_back("end cluster of " + std::to_string(std::min(n1, nq)) +
                        " within the leading plateau of " + std::to_string(k));
  if ((n1 == 2 || nq == 2) && s(2) != s(m - 1)) d.reasons.push_back("end pair needs s_2 = s_{m-1}");

  // An interior singleton sits inside an open interval of the remaining
  // profile where its payoff is affine with slope (s_{j+1} - s_{m-j}) / 2;
  // any nonzero slope is a strict improvement.
  int left = 0;
  for (std::size_t l = 0; l < q; ++l) {
    if (l > 0 && l + 1 < q && type[l] == 1) {
      const auto j = static_cast<std::size_t>(left);
      if (s(j + 1) != s(m - j)) {
        d.reasons.push_back("singleton at cluster " + std::to_string(l + 1) + " has nonzero slope");
        break;
      }
    }
    left += type[l];
  }
  d.keep = d.reasons.empty();
  return d;
}

std::optional<Verdict> abb0_analysis(const ScoringRule& rule) {
  const std::size_t m = rule.size();
  if (m < 3) return std::nullopt;
  const ScoringRule canon = canonicalize(rule);
  const Scores s{canon.scores()};
  const Rational& a = s(1);
  const Rational& b = s(2);
  for (std::size_t i = 3; i < m; ++i)
    if (s(i) != b) return std::nullopt;

  const Rational c = cox_threshold(rule);
  if (a <= b * Rational(2)) {
    Verdict v = no_ncne(c, "abb0-low", "(a,b,...,b,0) with a <= 2b");
    return v;
  }
  Verdict v;
  v.reason = "abb0-high";
  v.note = "(a,b,...,b,0) with a > 2b: at most two candidates per position";
  v.max_cluster_size = 2;
  return v;
}

ClusterPruner::ClusterPruner(const ScoringRule& rule) : rule_(rule) {
  if (const auto abb = abb0_analysis(rule)) size_cap_ = abb->max_cluster_size;
}

PruneDecision ClusterPruner::decide(const ClusterType& type) const {
  PruneDecision d = prune_cluster_type(rule_, type);
  if (size_cap_ && type.size() > 1 && *std::max_element(type.begin(), type.end()) > *size_cap_) {
    d.reasons.push_back("cluster larger than " + std::to_string(*size_cap_) + " under an (a,b,...,b,0) rule");
    d.keep = false;
  }
  return d;
}

std::optional<BipositionalSolution> bipositional_solve(const ScoringRule& rule) {
  const std::size_t m = rule.size();
  if (m % 2 != 0) throw Error(ErrorCode::OddM, "bipositional profiles need an even number of candidates");
  const Scores s{rule.scores()};
  const std::size_t h = m / 2;
  const Rational mean = rule.mean();
  if (!((s(h) + s(h + 1)) * kHalf < mean)) return std::nullopt;
  if (!(s(1) > s(h)) || !(s(1) > s(h + 1))) return std::nullopt;

  const Rational lo = (s(1) + s(h) - mean * Rational(2)) / ((s(1) - s(h + 1)) * Rational(2));
  const Rational hi = (mean * Rational(2) - s(m) - s(h)) / ((s(1) - s(h)) * Rational(2));

  Interval range{lo, hi, true, true};
  if (range.lower.sign() <= 0) range = Interval{Rational(0), range.upper, false, range.upper_closed};
  if (range.upper >= kHalf) range = Interval{range.lower, kHalf, range.lower_closed, false};
  if (range.lower > range.upper) return std::nullopt;
  if (range.lower == range.upper && !(range.lower_closed && range.upper_closed)) return std::nullopt;

  const Rational x = range.midpoint();
  return BipositionalSolution{range, make_profile({{x, static_cast<int>(h)}, {Rational(1) - x, static_cast<int>(h)}}, m)};
}

namespace {

// Leading subrule (s_1..s_{r-1}, 0) of a rule whose canonical form vanishes
// from s_r on.
std::vector<Rational> zero_tail_head(const ScoringRule& rule, int q, int r) {
  const std::size_t m = rule.size();
  if (q < 2 || r < 2 || static_cast<std::size_t>(q) * static_cast<std::size_t>(r) != m)
    throw Error(ErrorCode::FormMismatch, "need m = q * r with q, r >= 2");
  const ScoringRule canon = canonicalize(rule);
  for (std::size_t i = static_cast<std::size_t>(r) - 1; i < m; ++i)
    if (!canon.score(i).is_zero())
      throw Error(ErrorCode::FormMismatch, "scores from s_" + std::to_string(r) + " on are not all equal to s_m");
  const auto sc = canon.scores();
  return {sc.begin(), sc.begin() + r};
}

}  // namespace

bool multipositional_check(const ScoringRule& rule, const Profile& profile) {
  const std::size_t q = profile.size();
  if (q < 2) throw Error(ErrorCode::FormMismatch, "need at least two positions");
  const int r = profile[0].count;
  for (const auto& c : profile.clusters())
    if (c.count != r) throw Error(ErrorCode::FormMismatch, "every position must hold the same number of candidates");
  const auto head = zero_tail_head(rule, static_cast<int>(q), r);
  const Rational keep = Rational(1) - cox_threshold(head);

  Rational max_half, min_full(1), max_full;
  for (std::size_t i = 0; i < q; ++i) {
    const Rational& x = profile[i].position;
    const Rational lo = i == 0 ? Rational(0) : (profile[i - 1].position + x) * kHalf;
    const Rational hi = i + 1 == q ? Rational(1) : (x + profile[i + 1].position) * kHalf;
    max_half = max(max_half, max(x - lo, hi - x));
    min_full = min(min_full, hi - lo);
    max_full = max(max_full, hi - lo);
  }
  return max_half <= keep * min_full && max_full <= (Rational(1) + Rational(1, r)) * min_full;
}

std::optional<Profile> multipositional_construct(const ScoringRule& rule, int q, int r) {
  const auto head = zero_tail_head(rule, q, r);
  if (cox_threshold(head) > kHalf) return std::nullopt;
  std::vector<std::pair<Rational, int>> entries;
  for (int i = 1; i <= q; ++i) entries.emplace_back(Rational(2 * i - 1, 2 * q), r);
  return make_profile(std::move(entries), rule);
}

Verdict characterize_small_m(const ScoringRule& rule) {
  const std::size_t m = rule.size();
  if (m < 4 || m > 6) throw Error(ErrorCode::UnsupportedM, "closed-form characterization covers m = 4, 5, 6 only");
  const Scores s{rule.scores()};
  const Rational c = cox_threshold(rule);
  const bool best = c > kHalf;
  bool flat_middle = s(1) > s(2);
  for (std::size_t i = 3; i < m; ++i) flat_middle = flat_middle && s(i) == s(2);

  Verdict v;
  if (m == 4) {
    v.reason = "four-candidates";
    if (!(best && flat_middle)) return no_ncne(c, v.reason, "needs c > 1/2 and s_1 > s_2 = s_3");
    const Rational x = (s(1) - s(4)) / ((s(1) - s(2)) * Rational(4));
    v.conclusion = Conclusion::NCNEConstructed;
    v.witness = make_profile({{x, 2}, {Rational(1) - x, 2}}, m);
    v.admissible_types = {{2, 2}};
    v.note = "unique symmetric NCNE";
    return v;
  }
  if (m == 5) {
    v.reason = "five-candidates";
    if (!(best && flat_middle)) return no_ncne(c, v.reason, "needs c > 1/2 and s_1 > s_2 = s_3 = s_4");
    const Rational x = (s(1) + s(2) - s(5) * Rational(2)) / ((s(1) - s(2)) * Rational(6));
    v.conclusion = Conclusion::NCNEConstructed;
    v.witness = make_profile({{x, 2}, {kHalf, 1}, {Rational(1) - x, 2}}, m);
    v.admissible_types = {{2, 1, 2}};
    v.note = "unique symmetric NCNE";
    return v;
  }

  v.reason = "six-candidates";
  if (best && flat_middle) {
    v.admissible_types = {{2, 2, 2}, {2, 1, 1, 2}};
    v.note = "only types (2,2,2) and (2,1,1,2) are possible";
    return v;
  }
  v.admissible_types = {{3, 3}, {6}};
  v.interval = cne_interval(rule);
  if (const auto bi = bipositional_solve(rule)) {
    v.conclusion = Conclusion::NCNEConstructed;
    v.witness = bi->witness;
    v.note = "only types (3,3) and (6) are possible; symmetric (3,3) witness";
  } else {
    v.note = "only types (3,3) and (6) are possible";
  }
  return v;
}

}  // namespace votepos
