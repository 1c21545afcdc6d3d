#include "votepos/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <stdexcept>
#include <thread>

#include "votepos/error.hpp"
#include "votepos/score_kernel.hpp"
#include "votepos/verify.hpp"

namespace votepos {

std::string_view to_string(TypeStatus status) {
  switch (status) {
    case TypeStatus::Ncne: return "ncne";
    case TypeStatus::BoundaryOnly: return "boundary-only";
    case TypeStatus::Infeasible: return "infeasible";
    case TypeStatus::Pruned: return "pruned";
    case TypeStatus::Cne: return "cne";
    case TypeStatus::VerificationFailed: return "verification-failed";
  }
  return "unknown";
}

namespace {

void compositions(int remaining, int parts, ClusterType& prefix, std::vector<ClusterType>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 1; first <= remaining - parts + 1; ++first) {
    prefix.push_back(first);
    compositions(remaining - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

// Rows of the LP before the gap column is attached: coef . x <= bound.
struct RowSet {
  std::vector<Constraint> rows;
  std::set<std::pair<std::vector<Rational>, Rational>> seen;

  void add(std::vector<Rational> coef, Rational bound) {
    const bool trivial = std::all_of(coef.begin(), coef.end(), [](const Rational& v) { return v.is_zero(); });
    if (trivial && bound.sign() >= 0) return;
    if (!seen.emplace(coef, bound).second) return;
    rows.push_back({std::move(coef), Relation::LessEqual, std::move(bound)});
  }
};

}  // namespace

std::vector<TypeEntry> enumerate_cluster_types(std::size_t m, const ClusterPruner* pruner) {
  std::vector<ClusterType> all;
  ClusterType prefix;
  for (int q = 1; q <= static_cast<int>(m); ++q) compositions(static_cast<int>(m), q, prefix, all);
  std::vector<TypeEntry> out;
  out.reserve(all.size());
  for (auto& t : all) {
    TypeEntry e{std::move(t), false, {}};
    if (pruner) {
      PruneDecision d = pruner->decide(e.type);
      e.pruned = !d.keep;
      e.reasons = std::move(d.reasons);
    }
    out.push_back(std::move(e));
  }
  return out;
}

// Dominating deviation set. Once the mover leaves cluster j its payoff
// t -> v(t) is affine on each open interval between consecutive remaining
// positions (and between the end positions and 0 or 1), so the supremum
// over an interval is one of its two one-sided limits. Those limits are the
// LeftLimit/RightLimit targets at every remaining cluster. The end intervals
// need no separate targets: their slopes are +(s_1 - s_m)/2 on [0, x1) and
// -(s_1 - s_m)/2 on (xq, 1], so they peak at LeftLimit(1) and RightLimit(q).
// Joining a cluster is the remaining AtCluster target.
LinearProgram build_deviation_lp(const ScoringRule& rule, const ClusterType& type) {
  int sum = 0;
  for (int n : type) {
    if (n < 1) throw Error(ErrorCode::CompositionMismatch, "cluster sizes must be positive");
    sum += n;
  }
  if (type.empty() || sum != static_cast<int>(rule.size()))
    throw Error(ErrorCode::CompositionMismatch, "cluster type " + type_str(type) + " does not sum to m");

  const std::size_t q = type.size();
  const RankBlocks blocks(rule.scores());
  std::vector<AffineForm> x;
  for (std::size_t i = 0; i < q; ++i) x.push_back(AffineForm::variable(q, i));

  // Each entry: deviation payoff minus current payoff, which must be <= 0.
  std::vector<AffineForm> gains;
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<int> others(type.begin(), type.end());
    --others[j];
    const AffineForm current = score_at<AffineForm>(blocks, x, others, j, TieMode::Shared);

    std::vector<AffineForm> pos;
    std::vector<int> counts;
    std::vector<std::size_t> original;
    for (std::size_t l = 0; l < q; ++l) {
      if (others[l] == 0) continue;
      pos.push_back(x[l]);
      counts.push_back(others[l]);
      original.push_back(l);
    }
    for (std::size_t r = 0; r < pos.size(); ++r) {
      gains.push_back(score_at<AffineForm>(blocks, pos, counts, r, TieMode::AheadLeft) - current);
      if (original[r] != j) gains.push_back(score_at<AffineForm>(blocks, pos, counts, r, TieMode::Shared) - current);
      gains.push_back(score_at<AffineForm>(blocks, pos, counts, r, TieMode::AheadRight) - current);
    }
  }

  LinearProgram lp;
  for (std::size_t i = 0; i < q; ++i) lp.variables.push_back("x" + std::to_string(i + 1));
  lp.variables.push_back("d");
  lp.objective.assign(q + 1, Rational(0));
  lp.objective[q] = Rational(1);

  RowSet rows;
  auto row = [&](std::vector<Rational> coef, Rational bound) { rows.add(std::move(coef), std::move(bound)); };

  if (q == 1) {
    // g(x) <= 0 at both ends x -/+ d of the convergent interval.
    for (const auto& g : gains) {
      const Rational& a = g.coefficients()[0];
      row({a, -a}, -g.constant());
      row({a, a}, -g.constant());
    }
    row({Rational(-1), Rational(1)}, Rational(0));  // x - d >= 0
    row({Rational(1), Rational(1)}, Rational(1));   // x + d <= 1
  } else {
    for (const auto& g : gains) {
      std::vector<Rational> coef = g.coefficients();
      coef.push_back(Rational(0));
      row(std::move(coef), -g.constant());
    }
    std::vector<Rational> coef(q + 1);
    coef[0] = Rational(-1);
    coef[q] = Rational(1);
    row(coef, Rational(0));  // x1 >= d
    for (std::size_t l = 0; l + 1 < q; ++l) {
      std::vector<Rational> gap(q + 1);
      gap[l] = Rational(1);
      gap[l + 1] = Rational(-1);
      gap[q] = Rational(1);
      row(std::move(gap), Rational(0));  // x(l+1) - x(l) >= d
    }
    std::vector<Rational> tail(q + 1);
    tail[q - 1] = Rational(1);
    tail[q] = Rational(1);
    row(std::move(tail), Rational(1));  // 1 - xq >= d
  }
  lp.constraints = std::move(rows.rows);
  return lp;
}

namespace {

TypeOutcome solve_type(const ScoringRule& rule, const TypeEntry& entry) {
  TypeOutcome out;
  out.type = entry.type;
  out.reasons = entry.reasons;
  if (entry.pruned) {
    out.status = TypeStatus::Pruned;
    return out;
  }
  const std::size_t q = entry.type.size();
  const LpOutcome lp = solve(build_deviation_lp(rule, entry.type));
  out.lp = lp;
  if (lp.status == LpStatus::Infeasible) {
    out.status = TypeStatus::Infeasible;
    return out;
  }
  if (lp.status == LpStatus::Unbounded) throw std::logic_error("deviation LP cannot be unbounded");

  const Rational& gap = lp.point[q];
  if (q == 1) {
    const Rational& x = lp.point[0];
    out.cne_range = Interval{x - gap, x + gap, true, true};
    out.witness = make_profile({{x, static_cast<int>(rule.size())}}, rule);
    out.status = verify_profile(rule, *out.witness).status == EquilibriumStatus::Equilibrium
                     ? TypeStatus::Cne
                     : TypeStatus::VerificationFailed;
    return out;
  }
  if (gap.sign() == 0) {
    out.status = TypeStatus::BoundaryOnly;
    return out;
  }
  std::vector<std::pair<Rational, int>> entries;
  for (std::size_t i = 0; i < q; ++i) entries.emplace_back(lp.point[i], entry.type[i]);
  out.witness = make_profile(std::move(entries), rule);
  out.status = verify_profile(rule, *out.witness).status == EquilibriumStatus::Equilibrium
                   ? TypeStatus::Ncne
                   : TypeStatus::VerificationFailed;
  return out;
}

}  // namespace

SearchResult find_ncne(const ScoringRule& input, const SearchOptions& options) {
  SearchResult result{canonicalize(input), {}, {}, std::nullopt, {}};
  const ScoringRule& rule = result.rule;
  const ClusterPruner pruner(rule);
  std::vector<TypeEntry> types = enumerate_cluster_types(rule.size(), options.prune ? &pruner : nullptr);
  if (!options.include_cne) types.erase(types.begin());

  result.outcomes.resize(types.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(types.size());
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < types.size();) {
      try {
        result.outcomes[i] = solve_type(rule, types[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(types.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (const auto& o : result.outcomes) {
    if (o.status == TypeStatus::Ncne) result.ncne_types.push_back(o.type);
    if (o.status == TypeStatus::VerificationFailed) result.verification_failures.push_back(o.type);
    if (o.status == TypeStatus::Cne) result.cne_interval = o.cne_range;
  }
  if (!options.include_cne) result.cne_interval = cne_interval(rule);
  return result;
}

}  // namespace votepos
