#include "votepos/report.hpp"

#include <sstream>

namespace votepos::report {

namespace {

Json scores_json(const ScoringRule& rule) {
  Json a = Json::array();
  for (const auto& v : rule.scores()) a.push_back(v.str());
  return a;
}

std::string csv_type(const ClusterType& type) {
  std::string out;
  for (std::size_t i = 0; i < type.size(); ++i) out += (i ? "-" : "") + std::to_string(type[i]);
  return out;
}

}  // namespace

Json document(std::string_view command, const ScoringRule& rule) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["rule"] = {{"input", scores_json(rule)}, {"canonical", scores_json(canonicalize(rule))}};
  return doc;
}

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Interval& i) {
  return {{"lower", i.lower.str()},
          {"upper", i.upper.str()},
          {"lower_closed", i.lower_closed},
          {"upper_closed", i.upper_closed},
          {"text", i.str()}};
}

Json to_json(const Profile& p) {
  Json clusters = Json::array();
  for (const auto& c : p.clusters()) clusters.push_back({{"position", c.position.str()}, {"count", c.count}});
  return {{"text", p.str()}, {"type", to_json(p.type())}, {"clusters", std::move(clusters)}};
}

Json to_json(const ClusterType& type) {
  Json a = Json::array();
  for (int n : type) a.push_back(n);
  return a;
}

Json to_json(const Verdict& v) {
  Json j;
  j["conclusion"] = to_string(v.conclusion);
  j["reason"] = v.reason;
  j["note"] = v.note;
  j["witness"] = optional_json(v.witness);
  j["interval"] = optional_json(v.interval);
  Json types = Json::array();
  for (const auto& t : v.admissible_types) types.push_back(to_json(t));
  j["admissible_types"] = std::move(types);
  j["max_cluster_size"] = v.max_cluster_size ? Json(*v.max_cluster_size) : Json(nullptr);
  return j;
}

Json to_json(const DeviationTarget& target) { return describe(target); }

Json to_json(const EquilibriumReport& r) {
  auto entry = [](const LedgerEntry& e) {
    return Json{{"mover", e.mover_cluster + 1},
                {"target", describe(e.target)},
                {"score", e.deviation_score.str()},
                {"slack", e.slack.str()}};
  };
  Json j;
  j["status"] = to_string(r.status);
  Json scores = Json::array();
  for (const auto& s : r.cluster_scores) scores.push_back(s.str());
  j["cluster_scores"] = std::move(scores);
  Json ledger = Json::array(), violations = Json::array();
  for (const auto& e : r.ledger) ledger.push_back(entry(e));
  for (const auto& e : r.violations) violations.push_back(entry(e));
  j["ledger"] = std::move(ledger);
  j["violations"] = std::move(violations);
  return j;
}

Json to_json(const SearchResult& r) {
  Json j;
  Json found = Json::array(), failed = Json::array(), types = Json::array();
  for (const auto& t : r.ncne_types) found.push_back(to_json(t));
  for (const auto& t : r.verification_failures) failed.push_back(to_json(t));
  for (const auto& o : r.outcomes) {
    Json t;
    t["type"] = to_json(o.type);
    t["status"] = to_string(o.status);
    if (!o.reasons.empty()) t["reasons"] = o.reasons;
    if (o.lp) {
      t["lp_status"] = to_string(o.lp->status);
      if (o.lp->status == LpStatus::Optimal) t["gap"] = o.lp->point.back().str();
    }
    if (o.witness) t["witness"] = to_json(*o.witness);
    if (o.cne_range) t["cne_range"] = to_json(*o.cne_range);
    types.push_back(std::move(t));
  }
  j["searched_rule"] = scores_json(r.rule);
  j["ncne_types"] = std::move(found);
  j["cne_interval"] = optional_json(r.cne_interval);
  j["verification_failures"] = std::move(failed);
  j["types"] = std::move(types);
  return j;
}

Json classification(const ScoringRule& rule) {
  const RuleClass rc = classify(rule);
  const ShapeProfile sh = shape_profile(rule);
  const Plateaus pl = plateaus(rule);
  return {{"class", to_string(rc.kind)},
          {"threshold", rc.threshold.str()},
          {"shape",
           {{"convex", sh.convex},
            {"concave", sh.concave},
            {"weakly_concave", sh.weakly_concave},
            {"symmetric", sh.symmetric},
            {"end_block_bound", sh.eq_wp1_holds}}},
          {"plateaus", {{"leading_k", pl.leading_k}, {"trailing_n", pl.trailing_n}}},
          {"borda_equivalent", is_borda_equivalent(rule)}};
}

std::string search_csv(const SearchResult& r) {
  std::ostringstream os;
  os << "type,status,gap,witness\n";
  for (const auto& o : r.outcomes) {
    os << csv_type(o.type) << ',' << to_string(o.status) << ',';
    if (o.lp && o.lp->status == LpStatus::Optimal) os << o.lp->point.back();
    os << ',' << (o.witness ? o.witness->str() : "") << '\n';
  }
  return os.str();
}

std::string ledger_csv(const EquilibriumReport& r) {
  std::ostringstream os;
  os << "mover,target,score,slack\n";
  for (const auto& e : r.ledger)
    os << e.mover_cluster + 1 << ',' << describe(e.target) << ',' << e.deviation_score << ',' << e.slack << '\n';
  return os.str();
}

}  // namespace votepos::report
