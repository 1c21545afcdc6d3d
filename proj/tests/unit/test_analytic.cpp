#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "votepos/analytic.hpp"
#include "votepos/error.hpp"
#include "votepos/search.hpp"
#include "votepos/verify.hpp"

using namespace votepos;

namespace {

bool certified(const ScoringRule& rule, const Profile& p) {
  return verify_profile(rule, p).status == EquilibriumStatus::Equilibrium;
}

const Verdict* find_reason(const std::vector<Verdict>& vs, std::string_view reason) {
  const auto it = std::find_if(vs.begin(), vs.end(), [&](const Verdict& v) { return v.reason == reason; });
  return it == vs.end() ? nullptr : &*it;
}

Profile pos(std::vector<std::pair<Rational, int>> e, const ScoringRule& r) { return make_profile(std::move(e), r); }

// Rule with s_1 > s_2 = ... = s_{m-1} >= s_m, which is where the small-m
// characterizations can produce equilibria.
ScoringRule flat_middle_rule(testkit::Gen& g, std::size_t m) {
  const int mid = g.uniform(0, 3);
  std::vector<Rational> s(m, Rational(mid));
  s[0] = Rational(mid + g.uniform(1, 12));
  s[m - 1] = Rational(g.uniform(0, mid));
  return ScoringRule(s);
}

}  // namespace

TEST_CASE("convergent interval") {
  CHECK(cne_interval(parse_rule("1,1,1,0")) == Interval{Rational(1, 4), Rational(3, 4), true, true});
  CHECK_FALSE(cne_interval(parse_rule("1,0,0,0")));
  const auto point = cne_interval(parse_rule("10,10,4,3,3,0"));
  REQUIRE(point);
  CHECK(point->lower == Rational(1, 2));
  CHECK(point->upper == Rational(1, 2));
  CHECK(point->str() == "[1/2, 1/2]");
  CHECK(Interval{Rational(1, 3), Rational(1, 2), true, false}.str() == "[1/3, 1/2)");
  CHECK_FALSE(Interval{Rational(1, 3), Rational(1, 2), true, false}.contains(Rational(1, 2)));
}

TEST_CASE("structural bounds") {
  const auto plurality4 = structural_bounds(parse_rule("1,0,0,0"));
  CHECK(plurality4.min_positions == 2);
  CHECK(plurality4.max_gap == Rational(1, 2));
  REQUIRE(plurality4.forbidden_center);
  CHECK(plurality4.forbidden_center->lower == Rational(1, 4));
  CHECK(plurality4.forbidden_center->upper == Rational(3, 4));
  CHECK(structural_bounds(parse_rule("1,0,0,0,0")).min_positions == 3);  // c = 4/5
  CHECK(structural_bounds(parse_rule("1,1,1,0")).min_positions == 1);
  CHECK_FALSE(structural_bounds(parse_rule("1,1,1,0")).forbidden_center);
}

TEST_CASE("impossibility verdicts") {
  const auto approval = impossibility_verdicts(parse_rule("1,1,0,0,0"));
  const auto* lp = find_reason(approval, "leading-plateau");
  REQUIRE(lp);
  CHECK(lp->conclusion == Conclusion::NoNE);

  const auto hbr = impossibility_verdicts(parse_rule("5,1,1,0,0,0"));
  const auto* h = find_reason(hbr, "highly-best-rewarding");
  REQUIRE(h);
  CHECK(h->conclusion == Conclusion::NoNE);

  const auto borda = impossibility_verdicts(parse_rule("3,2,1,0"));
  const auto* wc = find_reason(borda, "weak-concavity");
  REQUIRE(wc);
  CHECK(wc->conclusion == Conclusion::NoNCNE);

  const auto twelve = impossibility_verdicts(parse_rule("4,4,4,3,3,3,2,1,1,0,0,0"));
  const auto* restricted = find_reason(twelve, "weak-concavity-restricted");
  REQUIRE(restricted);
  CHECK(restricted->conclusion == Conclusion::Inconclusive);
  CHECK_FALSE(find_reason(twelve, "weak-concavity"));

  CHECK(find_reason(impossibility_verdicts(parse_rule("2,1,1,1,0")), "symmetric-scores"));
  CHECK(impossibility_verdicts(parse_rule("3,1,1,1,1,1,1,0")).empty());
}

TEST_CASE("cluster type pruning") {
  const auto veto = prune_cluster_type(parse_rule("1,1,1,0"), {2, 2});
  CHECK_FALSE(veto.keep);
  CHECK_FALSE(veto.reasons.empty());
  CHECK_FALSE(prune_cluster_type(parse_rule("3,2,1,0"), {2, 2}).keep);
  CHECK(prune_cluster_type(parse_rule("3,1,1,1,1,1,1,0"), {2, 2, 2, 2}).keep);
  CHECK(prune_cluster_type(parse_rule("3,2,1,0"), {4}).keep);
  CHECK_FALSE(prune_cluster_type(parse_rule("1,0,0,0"), {1, 3}).keep);
  CHECK_THROWS_AS(prune_cluster_type(parse_rule("3,2,1,0"), {2, 1}), Error);
}

TEST_CASE("(a,b,...,b,0) rules") {
  const auto high = abb0_analysis(parse_rule("3,1,1,1,1,1,1,0"));
  REQUIRE(high);
  CHECK(high->conclusion == Conclusion::Inconclusive);
  CHECK(high->max_cluster_size == 2);
  const auto low = abb0_analysis(parse_rule("2,1,1,1,0"));
  REQUIRE(low);
  CHECK(low->conclusion == Conclusion::NoNCNE);
  CHECK_FALSE(abb0_analysis(parse_rule("3,2,1,0")));
  // Affine images are recognized too.
  CHECK(abb0_analysis(parse_rule("7,3,3,3,3,3,3,1")));
  const ClusterPruner pruner(parse_rule("3,1,1,1,1,1,1,0"));
  CHECK_FALSE(pruner.decide({3, 3, 2}).keep);
  CHECK(pruner.decide({2, 2, 2, 2}).keep);
}

TEST_CASE("symmetric two-position equilibria") {
  struct Case {
    const char* rule;
    Interval range;
  };
  const Case cases[] = {
      {"2,2,1,1,1,0", {Rational(1, 3), Rational(1, 2), true, false}},
      {"10,10,4,3,3,0", {Rational(2, 7), Rational(1, 2), true, false}},
      {"4,3,1,1,0,0", {Rational(1, 3), Rational(1, 3), true, true}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.rule);
    const auto rule = parse_rule(c.rule);
    const auto sol = bipositional_solve(rule);
    REQUIRE(sol);
    CHECK(sol->x1_range == c.range);
    CHECK(certified(rule, sol->witness));
    // Both ends of a closed range are equilibria, points just outside are not.
    const Rational eps(1, 1000);
    if (c.range.lower_closed)
      CHECK(certified(rule, pos({{c.range.lower, 3}, {Rational(1) - c.range.lower, 3}}, rule)));
    CHECK_FALSE(certified(rule, pos({{c.range.lower - eps, 3}, {Rational(1) - c.range.lower + eps, 3}}, rule)));
  }
  CHECK_THROWS_AS(bipositional_solve(parse_rule("1,0,0")), Error);
  CHECK_FALSE(bipositional_solve(parse_rule("3,2,1,0")));
}

TEST_CASE("equally spaced equilibria") {
  std::vector<Rational> s(20, Rational(0));
  s[0] = s[1] = s[2] = Rational(1);
  const ScoringRule approval(s);
  for (const auto& [q, r] : {std::pair{5, 4}, std::pair{4, 5}}) {
    const auto p = multipositional_construct(approval, q, r);
    REQUIRE(p);
    CHECK(p->size() == static_cast<std::size_t>(q));
    CHECK(multipositional_check(approval, *p));
    CHECK(certified(approval, *p));
  }
  const auto plurality = parse_rule("1,0,0,0,0,0");
  const auto pairs = multipositional_construct(plurality, 3, 2);
  REQUIRE(pairs);
  CHECK(*pairs == pos({{Rational(1, 6), 2}, {Rational(1, 2), 2}, {Rational(5, 6), 2}}, plurality));
  CHECK(certified(plurality, *pairs));
  CHECK_FALSE(multipositional_check(plurality, pos({{Rational(1, 10), 2}, {Rational(1, 2), 2}, {Rational(5, 6), 2}}, plurality)));
  CHECK_THROWS_AS(multipositional_construct(parse_rule("3,2,1,0"), 2, 2), Error);
  CHECK_THROWS_AS(multipositional_construct(plurality, 4, 2), Error);
}

TEST_CASE("small electorates") {
  const auto plurality4 = characterize_small_m(parse_rule("1,0,0,0"));
  CHECK(plurality4.conclusion == Conclusion::NCNEConstructed);
  REQUIRE(plurality4.witness);
  CHECK(*plurality4.witness == pos({{Rational(1, 4), 2}, {Rational(3, 4), 2}}, parse_rule("1,0,0,0")));

  const auto plurality5 = characterize_small_m(parse_rule("1,0,0,0,0"));
  REQUIRE(plurality5.witness);
  CHECK(*plurality5.witness ==
        pos({{Rational(1, 6), 2}, {Rational(1, 2), 1}, {Rational(5, 6), 2}}, parse_rule("1,0,0,0,0")));
  CHECK(certified(parse_rule("1,0,0,0,0"), *plurality5.witness));

  CHECK(characterize_small_m(parse_rule("3,2,1,0")).conclusion == Conclusion::NoNCNE);
  CHECK_THROWS_AS(characterize_small_m(parse_rule("2,1,0")), Error);

  const auto six = characterize_small_m(parse_rule("2,2,1,1,1,0"));
  CHECK(six.conclusion == Conclusion::NCNEConstructed);
  CHECK(six.interval);
  CHECK(six.admissible_types == std::vector<ClusterType>{{3, 3}, {6}});
}

TEST_CASE("closed forms for four and five candidates agree with the search") {
  testkit::Gen g(41);
  for (std::size_t m : {4u, 5u}) {
    int found = 0;
    for (int i = 0; i < 80; ++i) {
      const auto rule = i % 2 ? flat_middle_rule(g, m) : testkit::random_rule(g, m);
      CAPTURE(rule.str());
      const auto v = characterize_small_m(rule);
      const auto r = find_ncne(rule);
      CHECK((v.conclusion == Conclusion::NCNEConstructed) == !r.ncne_types.empty());
      if (v.witness) {
        ++found;
        CHECK(certified(rule, *v.witness));
        REQUIRE(r.ncne_types.size() == 1);
        CHECK(r.ncne_types[0] == v.witness->type());
        for (const auto& o : r.outcomes)
          if (o.status == TypeStatus::Ncne) CHECK(*o.witness == *v.witness);
        // NCNE and CNE never coexist for four or five candidates.
        CHECK_FALSE(cne_interval(rule));
      }
    }
    CHECK(found > 10);
  }
}

TEST_CASE("six candidates can have both kinds of equilibrium") {
  const auto rule = parse_rule("2,2,1,1,1,0");
  CHECK(cne_interval(rule));
  CHECK(bipositional_solve(rule));
}

TEST_CASE("worst-punishing four-candidate rules have no NCNE") {
  for (const auto& rule : testkit::all_small_rules(4, 8)) {
    if (cox_threshold(rule) > Rational(1, 2)) continue;
    CAPTURE(rule.str());
    CHECK(characterize_small_m(rule).conclusion == Conclusion::NoNCNE);
    CHECK(find_ncne(rule).ncne_types.empty());
  }
}
