#pragma once

#include <string>
#include <utility>
#include <vector>

#include "votepos/profiles.hpp"

namespace votepos {

/// Number-line diagram, one labelled row per profile: a dot per occupied
/// position with radius proportional to its count, annotated with the exact
/// position.
std::string render_svg(const std::vector<std::pair<std::string, Profile>>& rows);

}  // namespace votepos
