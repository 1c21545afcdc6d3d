#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "votepos/analytic.hpp"
#include "votepos/profiles.hpp"
#include "votepos/rational.hpp"
#include "votepos/rulekit.hpp"
#include "votepos/search.hpp"
#include "votepos/verify.hpp"

namespace votepos::report {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

/// Header shared by every document: schema version, command, input rule and
/// its canonical form.
Json document(std::string_view command, const ScoringRule& rule);

Json to_json(const Rational& r);
Json to_json(const Interval& interval);
Json to_json(const Profile& profile);
Json to_json(const ClusterType& type);
Json to_json(const Verdict& verdict);
Json to_json(const DeviationTarget& target);
Json to_json(const EquilibriumReport& report);
Json to_json(const SearchResult& result);
Json classification(const ScoringRule& rule);

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

std::string search_csv(const SearchResult& result);
std::string ledger_csv(const EquilibriumReport& report);

}  // namespace votepos::report
