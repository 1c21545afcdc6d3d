#include "votepos/profiles.hpp"

#include <algorithm>
#include <limits>

#include "votepos/error.hpp"
#include "votepos/score_kernel.hpp"

namespace votepos {

int Profile::candidates() const {
  int n = 0;
  for (const auto& c : clusters_) n += c.count;
  return n;
}

std::vector<int> Profile::type() const {
  std::vector<int> t;
  t.reserve(clusters_.size());
  for (const auto& c : clusters_) t.push_back(c.count);
  return t;
}

std::string Profile::str() const {
  std::string out;
  for (std::size_t i = 0; i < clusters_.size(); ++i) {
    if (i) out += ';';
    out += clusters_[i].position.str() + "*" + std::to_string(clusters_[i].count);
  }
  return out;
}

Profile Profile::mirrored() const {
  Profile p;
  for (auto it = clusters_.rbegin(); it != clusters_.rend(); ++it)
    p.clusters_.push_back({Rational(1) - it->position, it->count});
  return p;
}

Profile make_profile(std::vector<std::pair<Rational, int>> entries, std::size_t m) {
  if (entries.empty()) throw Error(ErrorCode::CountMismatch, "a profile needs at least one cluster");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Profile p;
  long total = 0;
  for (auto& [pos, count] : entries) {
    if (count <= 0) throw Error(ErrorCode::CountMismatch, "cluster counts must be positive");
    if (pos.sign() < 0 || pos > Rational(1))
      throw Error(ErrorCode::PositionOutOfRange, "position " + pos.str() + " is outside [0, 1]");
    total += count;
    if (!p.clusters_.empty() && p.clusters_.back().position == pos) {
      p.clusters_.back().count += count;
    } else {
      p.clusters_.push_back({pos, count});
    }
  }
  if (total != static_cast<long>(m)) {
    throw Error(ErrorCode::CountMismatch, "profile holds " + std::to_string(total) +
                                              " candidates but the rule has " + std::to_string(m));
  }
  return p;
}

Profile make_profile(std::vector<std::pair<Rational, int>> entries, const ScoringRule& rule) {
  return make_profile(std::move(entries), rule.size());
}

Profile parse_profile(std::string_view text, const ScoringRule& rule) {
  std::vector<std::pair<Rational, int>> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto semi = text.find(';', start);
    const auto token = text.substr(start, semi == std::string_view::npos ? text.npos : semi - start);
    const auto star = token.find('*');
    if (star == std::string_view::npos)
      throw Error(ErrorCode::ParseError, "profile entry '" + std::string(token) + "' lacks '*count'");
    const Rational pos = Rational::parse(token.substr(0, star));
    const Rational count = Rational::parse(token.substr(star + 1));
    if (!count.is_integer() || count.sign() <= 0 || count > Rational(1 << 20))
      throw Error(ErrorCode::ParseError, "count in '" + std::string(token) + "' is not a positive integer");
    entries.emplace_back(pos, static_cast<int>(count.numerator().get_si()));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return make_profile(std::move(entries), rule);
}

std::string describe(const DeviationTarget& target) {
  struct {
    std::string operator()(const AtCluster& t) const { return "at(" + std::to_string(t.cluster + 1) + ")"; }
    std::string operator()(const LeftLimit& t) const { return "left(" + std::to_string(t.cluster + 1) + ")"; }
    std::string operator()(const RightLimit& t) const { return "right(" + std::to_string(t.cluster + 1) + ")"; }
    std::string operator()(const FreePoint& t) const { return "point(" + t.t.str() + ")"; }
  } visitor;
  return std::visit(visitor, target);
}

namespace {

constexpr std::size_t kVacated = std::numeric_limits<std::size_t>::max();

/// The configuration the mover faces once it has left its cluster.
struct Remaining {
  std::vector<Rational> positions;
  std::vector<int> counts;
  std::vector<std::size_t> index_of;  // original cluster -> remaining index
};

Remaining without_mover(const Profile& profile, std::size_t mover) {
  if (mover >= profile.size()) throw Error(ErrorCode::IndexOutOfRange, "mover cluster out of range");
  Remaining r;
  r.index_of.assign(profile.size(), kVacated);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const int count = profile[i].count - (i == mover ? 1 : 0);
    if (count == 0) continue;
    r.index_of[i] = r.positions.size();
    r.positions.push_back(profile[i].position);
    r.counts.push_back(count);
  }
  return r;
}

Rational evaluate(const RankBlocks& blocks, const Remaining& r, std::size_t original, TieMode mode) {
  if (original >= r.index_of.size()) throw Error(ErrorCode::InvalidTarget, "target cluster out of range");
  const std::size_t at = r.index_of[original];
  if (at == kVacated)
    throw Error(ErrorCode::InvalidTarget, "target refers to the position the mover vacated");
  return score_at<Rational>(blocks, r.positions, r.counts, at, mode);
}

Rational free_point(const RankBlocks& blocks, const Remaining& r, const Rational& t) {
  if (t.sign() < 0 || t > Rational(1)) throw Error(ErrorCode::InvalidTarget, "free point outside [0, 1]");
  std::vector<Rational> positions;
  std::vector<int> counts;
  std::size_t focus = r.positions.size();
  for (std::size_t i = 0; i < r.positions.size(); ++i) {
    if (r.positions[i] == t)
      throw Error(ErrorCode::InvalidTarget, "free point " + t.str() + " is occupied; use AtCluster");
    if (focus == r.positions.size() && t < r.positions[i]) {
      focus = positions.size();
      positions.push_back(t);
      counts.push_back(0);
    }
    positions.push_back(r.positions[i]);
    counts.push_back(r.counts[i]);
  }
  if (focus == r.positions.size()) {
    focus = positions.size();
    positions.push_back(t);
    counts.push_back(0);
  }
  return score_at<Rational>(blocks, positions, counts, focus, TieMode::Shared);
}

}  // namespace

Rational candidate_score(const Profile& profile, const ScoringRule& rule, std::size_t cluster) {
  if (cluster >= profile.size()) throw Error(ErrorCode::IndexOutOfRange, "cluster index out of range");
  std::vector<Rational> positions;
  std::vector<int> counts;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    positions.push_back(profile[i].position);
    counts.push_back(profile[i].count - (i == cluster ? 1 : 0));
  }
  const RankBlocks blocks(rule.scores());
  return score_at<Rational>(blocks, positions, counts, cluster, TieMode::Shared);
}

Rational deviation_score(const Profile& profile, const ScoringRule& rule,
                         std::size_t mover_cluster, const DeviationTarget& target) {
  const Remaining r = without_mover(profile, mover_cluster);
  const RankBlocks blocks(rule.scores());
  if (const auto* t = std::get_if<AtCluster>(&target)) return evaluate(blocks, r, t->cluster, TieMode::Shared);
  if (const auto* t = std::get_if<LeftLimit>(&target)) return evaluate(blocks, r, t->cluster, TieMode::AheadLeft);
  if (const auto* t = std::get_if<RightLimit>(&target)) return evaluate(blocks, r, t->cluster, TieMode::AheadRight);
  return free_point(blocks, r, std::get<FreePoint>(target).t);
}

PiecewiseLinear score_pieces(const Profile& profile, const ScoringRule& rule, std::size_t mover_cluster) {
  const Remaining r = without_mover(profile, mover_cluster);
  const RankBlocks blocks(rule.scores());
  const auto& s = rule.scores();
  const std::size_t m = rule.size();

  PiecewiseLinear out;
  std::size_t left_candidates = 0;
  // Pieces: (0, y_0), (y_0, y_1), ..., (y_last, 1); empty ones are dropped.
  for (std::size_t piece = 0; piece <= r.positions.size(); ++piece) {
    const Rational lo = piece == 0 ? Rational(0) : r.positions[piece - 1];
    const Rational hi = piece == r.positions.size() ? Rational(1) : r.positions[piece];
    if (piece > 0) left_candidates += static_cast<std::size_t>(r.counts[piece - 1]);
    if (!(lo < hi)) continue;

    const std::size_t right_candidates = m - 1 - left_candidates;
    LinearPiece lp;
    lp.left = lo;
    lp.right = hi;
    lp.slope = (s[left_candidates] - s[right_candidates]) * Rational(1, 2);
    lp.left_value = piece == 0 ? free_point(blocks, r, lo)
                               : score_at<Rational>(blocks, r.positions, r.counts, piece - 1, TieMode::AheadRight);
    lp.right_value = piece == r.positions.size()
                         ? free_point(blocks, r, hi)
                         : score_at<Rational>(blocks, r.positions, r.counts, piece, TieMode::AheadLeft);
    out.pieces.push_back(std::move(lp));
  }
  return out;
}

}  // namespace votepos
