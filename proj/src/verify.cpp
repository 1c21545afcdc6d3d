#include "votepos/verify.hpp"

#include <algorithm>

#include "votepos/error.hpp"

namespace votepos {

std::string_view to_string(EquilibriumStatus status) {
  return status == EquilibriumStatus::Equilibrium ? "Equilibrium" : "NotEquilibrium";
}

Rational brute_force_score(const ScoringRule& rule, const std::vector<Rational>& positions, std::size_t focus) {
  std::vector<Rational> distinct = positions;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (std::size_t a = 0; a < distinct.size(); ++a)
    for (std::size_t b = a + 1; b < distinct.size(); ++b) cuts.push_back((distinct[a] + distinct[b]) * Rational(1, 2));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto& s = rule.scores();
  const Rational& p = positions[focus];
  Rational total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational voter = (cuts[i] + cuts[i + 1]) * Rational(1, 2);
    const Rational own = abs(voter - p);
    std::size_t closer = 0, tied = 0;
    for (const auto& q : positions) {
      const Rational d = abs(voter - q);
      if (d < own) ++closer;
      else if (d == own) ++tied;
    }
    Rational block;
    for (std::size_t r = closer; r < closer + tied; ++r) block += s[r];
    total += block / Rational(static_cast<std::int64_t>(tied)) * (cuts[i + 1] - cuts[i]);
  }
  return total;
}

namespace {

struct Deviator {
  const ScoringRule& rule;
  std::vector<Rational> positions;  // per candidate; the mover is last
  std::size_t mover;

  Rational at(const Rational& t) {
    positions[mover] = t;
    return brute_force_score(rule, positions, mover);
  }

  // Payoff is affine on (lo, hi): extrapolate from two interior points.
  Rational limit(const Rational& lo, const Rational& hi, bool toward_hi) {
    const Rational t1 = lo + (hi - lo) * Rational(1, 3);
    const Rational t2 = lo + (hi - lo) * Rational(2, 3);
    const Rational v1 = at(t1);
    const Rational v2 = at(t2);
    const Rational slope = (v2 - v1) / (t2 - t1);
    return toward_hi ? v2 + slope * (hi - t2) : v1 - slope * (t1 - lo);
  }
};

void record(EquilibriumReport& report, std::size_t mover, DeviationTarget target, Rational score) {
  LedgerEntry e{mover, std::move(target), score, report.cluster_scores[mover] - score};
  if (e.slack.sign() < 0) report.violations.push_back(e);
  report.ledger.push_back(std::move(e));
}

}  // namespace

EquilibriumReport verify_profile(const ScoringRule& rule, const Profile& profile) {
  if (profile.candidates() != static_cast<int>(rule.size()))
    throw Error(ErrorCode::CountMismatch, "profile size does not match the rule");

  EquilibriumReport report;
  for (std::size_t j = 0; j < profile.size(); ++j) {
    Deviator dev{rule, {}, 0};
    for (std::size_t l = 0; l < profile.size(); ++l)
      for (int c = 0; c < profile[l].count - (l == j ? 1 : 0); ++c) dev.positions.push_back(profile[l].position);
    dev.mover = dev.positions.size();
    dev.positions.push_back(profile[j].position);
    report.cluster_scores.push_back(brute_force_score(rule, dev.positions, dev.mover));
  }

  for (std::size_t j = 0; j < profile.size(); ++j) {
    Deviator dev{rule, {}, 0};
    std::vector<std::size_t> remaining;
    for (std::size_t l = 0; l < profile.size(); ++l) {
      const int left_behind = profile[l].count - (l == j ? 1 : 0);
      for (int c = 0; c < left_behind; ++c) dev.positions.push_back(profile[l].position);
      if (left_behind > 0) remaining.push_back(l);
    }
    dev.mover = dev.positions.size();
    dev.positions.push_back(profile[j].position);

    for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
      const std::size_t l = remaining[idx];
      const Rational& x = profile[l].position;
      const Rational lo = idx == 0 ? Rational(0) : profile[remaining[idx - 1]].position;
      const Rational hi = idx + 1 == remaining.size() ? Rational(1) : profile[remaining[idx + 1]].position;
      if (lo < x) record(report, j, LeftLimit{l}, dev.limit(lo, x, true));
      if (l != j) record(report, j, AtCluster{l}, dev.at(x));
      if (x < hi) record(report, j, RightLimit{l}, dev.limit(x, hi, false));
    }
  }
  report.status = report.violations.empty() ? EquilibriumStatus::Equilibrium : EquilibriumStatus::NotEquilibrium;
  return report;
}

EquilibriumReport grid_cross_check(const ScoringRule& rule, const Profile& profile, int resolution) {
  if (resolution < 2) throw Error(ErrorCode::IndexOutOfRange, "grid resolution must be at least 2");
  EquilibriumReport report = verify_profile(rule, profile);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    Deviator dev{rule, {}, 0};
    for (std::size_t l = 0; l < profile.size(); ++l)
      for (int c = 0; c < profile[l].count - (l == j ? 1 : 0); ++c) dev.positions.push_back(profile[l].position);
    dev.mover = dev.positions.size();
    dev.positions.push_back(profile[j].position);
    for (int k = 0; k <= resolution; ++k) {
      const Rational t(k, resolution);
      const bool occupied = std::any_of(profile.clusters().begin(), profile.clusters().end(),
                                        [&](const Cluster& c) { return c.position == t; });
      if (!occupied) record(report, j, FreePoint{t}, dev.at(t));
    }
  }
  report.status = report.violations.empty() ? EquilibriumStatus::Equilibrium : EquilibriumStatus::NotEquilibrium;
  return report;
}

}  // namespace votepos
