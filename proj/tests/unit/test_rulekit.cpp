#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "properties.hpp"
#include "votepos/error.hpp"
#include "votepos/rulekit.hpp"

using namespace votepos;

namespace {

ErrorCode parse_error_code(const char* text) {
  try {
    (void)parse_rule(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse_rule accepted " << text);
  return ErrorCode::ParseError;
}

std::vector<Rational> scores_of(const char* text) {
  const auto r = parse_rule(text);
  return {r.scores().begin(), r.scores().end()};
}

}  // namespace

TEST_CASE("parse_rule") {
  CHECK(parse_rule("1,0,0,0").size() == 4);
  const auto twelve = parse_rule("4,4,4,3,3,3,2,1,1,0,0,0");
  CHECK(twelve.size() == 12);
  CHECK(twelve.score(6) == Rational(2));
  CHECK(parse_rule(" 1 , 1/2 ,0").score(1) == Rational(1, 2));
  CHECK(parse_error_code("0,1") == ErrorCode::NotNonincreasing);
  CHECK(parse_error_code("2,2,2") == ErrorCode::ConstantRule);
  CHECK(parse_error_code("1") == ErrorCode::ParseError);
  CHECK(parse_error_code("1,,0") == ErrorCode::ParseError);
  CHECK(parse_error_code("1,a") == ErrorCode::ParseError);
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(parse_rule("3,2,1,0")).scores()[0] == Rational(3));
  CHECK(canonicalize(parse_rule("7,5,3,1")) == parse_rule("3,2,1,0"));
  CHECK(canonicalize(parse_rule("1,1/2,0")) == parse_rule("2,1,0"));
  CHECK(canonicalize(parse_rule("-1/3,-1/2,-5/6")) == parse_rule("3,2,0"));
}

TEST_CASE("cox threshold and classification") {
  CHECK(cox_threshold(parse_rule("1,0,0,0")) == Rational(3, 4));
  CHECK(cox_threshold(parse_rule("1,1,1,0")) == Rational(1, 4));
  CHECK(cox_threshold(parse_rule("2,2,1,1,1,0")) == Rational(5, 12));
  CHECK(classify(parse_rule("1,0,0,0")).kind == RuleClassKind::BestRewarding);
  CHECK(classify(parse_rule("10,10,4,3,3,0")).kind == RuleClassKind::Intermediate);
  CHECK(classify(parse_rule("2,2,1,1,1,0")).kind == RuleClassKind::WorstPunishing);
  CHECK(classify(parse_rule("2,2,1,1,1,0")).threshold == Rational(5, 12));
}

TEST_CASE("shape profile") {
  const auto twelve = shape_profile(parse_rule("4,4,4,3,3,3,2,1,1,0,0,0"));
  CHECK(twelve.weakly_concave);
  CHECK_FALSE(twelve.eq_wp1_holds);
  const auto nine = shape_profile(parse_rule("7,6,6,6,6,2,1,1,0"));
  CHECK(nine.weakly_concave);
  CHECK_FALSE(nine.eq_wp1_holds);
  const auto spsn = shape_profile(parse_rule("2,1,1,1,0"));
  CHECK(spsn.symmetric);
  CHECK(spsn.weakly_concave);
  const auto borda = shape_profile(parse_rule("3,2,1,0"));
  CHECK(borda.convex);
  CHECK(borda.concave);
  CHECK(shape_profile(parse_rule("1,0,0,0")).convex);
  CHECK_FALSE(shape_profile(parse_rule("1,0,0,0")).concave);
  CHECK(shape_profile(parse_rule("5,4,2,1")).eq_wp1_holds);  // m = 4 by definition
}

TEST_CASE("end-block bound values for the 12- and 9-candidate rules") {
  // s_4 + s_{m-3} against the averaged end blocks, evaluated independently.
  auto sides = [](const std::vector<Rational>& s) {
    const std::size_t m = s.size(), k = m - 3;
    Rational ends;
    for (std::size_t i = 1; i <= k; ++i) ends += s[i - 1];
    for (std::size_t i = 4; i <= m; ++i) ends += s[i - 1];
    return std::pair{s[3] + s[k - 1], ends / Rational(static_cast<std::int64_t>(k))};
  };
  const auto [l12, r12] = sides(scores_of("4,4,4,3,3,3,2,1,1,0,0,0"));
  CHECK(l12 == Rational(4));
  CHECK(r12 == Rational(38, 9));
  const auto [l9, r9] = sides(scores_of("7,6,6,6,6,2,1,1,0"));
  CHECK(l9 == Rational(8));
  CHECK(r9 == Rational(49, 6));
}

TEST_CASE("plateaus") {
  const auto a = plateaus(parse_rule("1,1,1,0"));
  CHECK(a.leading_k == 3);
  CHECK(a.trailing_n == 3);
  const auto b = plateaus(parse_rule("1,0,0,0"));
  CHECK(b.leading_k == 1);
  CHECK(b.trailing_n == 1);
  const auto c = plateaus(parse_rule("3,1,1,1,1,1,1,0"));
  CHECK(c.leading_k == 1);
  CHECK(c.trailing_n == 7);
}

TEST_CASE("subrule") {
  std::vector<Rational> three_approval(20, Rational(0));
  three_approval[0] = three_approval[1] = three_approval[2] = Rational(1);
  const auto a = subrule(ScoringRule(three_approval), 0, 3);
  REQUIRE(std::holds_alternative<ScoringRule>(a));
  CHECK(std::get<ScoringRule>(a) == parse_rule("1,1,1,0"));

  const auto b = subrule(parse_rule("3,2,1,0"), 1, 2);
  REQUIRE(std::holds_alternative<ScoringRule>(b));
  CHECK(std::get<ScoringRule>(b) == parse_rule("2,1,0"));

  const auto c = subrule(parse_rule("1,1,1,0"), 0, 2);
  REQUIRE(std::holds_alternative<ConstantSubrule>(c));
  CHECK(std::get<ConstantSubrule>(c).length == 3);

  CHECK_THROWS_AS(subrule(parse_rule("3,2,1,0"), 2, 2), Error);
  CHECK_THROWS_AS(subrule(parse_rule("3,2,1,0"), 0, 0), Error);
}

TEST_CASE("borda equivalence") {
  CHECK(is_borda_equivalent(parse_rule("3,2,1,0")));
  CHECK(is_borda_equivalent(parse_rule("7,5,3,1")));
  CHECK_FALSE(is_borda_equivalent(parse_rule("1,0,0,0")));
}

TEST_CASE("property: shape flag implications and Borda characterization") {
  testkit::Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const auto rule = testkit::random_rule(g, static_cast<std::size_t>(g.uniform(2, 10)), 6);
    const auto sh = shape_profile(rule);
    CAPTURE(rule.str());
    if (sh.symmetric) CHECK(sh.weakly_concave);
    if (sh.concave) CHECK(sh.weakly_concave);
    if (sh.convex && sh.concave) CHECK(is_borda_equivalent(rule));
    // Borda among convex rules <=> s_1 + s_m = 2 * mean.
    if (sh.convex) {
      const bool ends = rule.score(0) + rule.score(rule.size() - 1) == rule.mean() * Rational(2);
      CHECK(is_borda_equivalent(rule) == ends);
    }
    if (sh.weakly_concave) CHECK(cox_threshold(rule) <= Rational(1, 2));
  }
}

TEST_CASE("property: weak concavity implies the end-block bound for m <= 8") {
  for (std::size_t m = 2; m <= 8; ++m)
    for (const auto& rule : testkit::all_small_rules(m, 5)) {
      CAPTURE(rule.str());
      if (shape_profile(rule).weakly_concave) CHECK(shape_profile(rule).eq_wp1_holds);
    }
  testkit::Gen g(12);
  for (int i = 0; i < 500; ++i) {
    const auto rule = testkit::weakly_concave_rule(g, static_cast<std::size_t>(g.uniform(4, 8)));
    CHECK(shape_profile(rule).eq_wp1_holds);
  }
}

TEST_CASE("property: canonicalize is idempotent and class preserving") {
  testkit::Gen g(13);
  for (int i = 0; i < 1000; ++i) {
    const auto rule = testkit::random_fractional_rule(g, static_cast<std::size_t>(g.uniform(2, 9)));
    const auto canon = canonicalize(rule);
    CAPTURE(rule.str());
    CHECK(canonicalize(canon) == canon);
    CHECK(canon.score(canon.size() - 1).is_zero());
    for (const auto& v : canon.scores()) CHECK(v.is_integer());
    CHECK(cox_threshold(canon) == cox_threshold(rule));
    CHECK(shape_profile(canon).convex == shape_profile(rule).convex);
  }
}

TEST_CASE("property: affine invariance of classification") {
  const auto res = testkit::affine_invariance_classification(14, 500);
  CHECK_MESSAGE(res.ok(), res.first_failure);
}

TEST_CASE("property: convexity iff every subrule has threshold at least 1/2") {
  const auto res = testkit::subrule_convexity(10, 4);
  CHECK_MESSAGE(res.ok(), res.first_failure);
  CHECK(res.cases > 1000);
}
