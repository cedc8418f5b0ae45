#include <gtest/gtest.h>

#include <numeric>

#include "fixtures.hpp"
#include "poolhire/multi.hpp"
#include "poolhire/oracle.hpp"
#include "poolhire/rules.hpp"

using namespace poolhire;
using fixtures::Ids;

namespace {

PluralScenario plural(const std::string& name) {
  auto p = load_plural_scenario(fixtures::scenario_path(name));
  validate_plural_scenario(p);
  return p;
}

Ids union_of(const PluralScenario& p, const PluralSequence& steps) {
  const auto mus = apply_plural_sequence(p.workers, plural_rules(p), steps);
  return fixtures::ids(p.workers, mus.back().matched());
}

}  // namespace

TEST(Matching, AssignKeepsBothViews) {
  Matching mu(4, 2);
  mu.assign(2, 1);
  mu.assign(0, 1);
  EXPECT_EQ(mu.institution_of(2), std::size_t{1});
  EXPECT_EQ(mu.members(1), (std::vector<WorkerIndex>{0, 2}));
  EXPECT_EQ(mu.unmatched(), (std::vector<WorkerIndex>{1, 3}));
  EXPECT_TRUE(mu.consistent());
  try {
    mu.assign(2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContractViolation);
  }
}

TEST(PluralSequence, ExampleSixMatchings) {
  const auto p = plural("example6_plural.json");
  const auto mus = apply_plural_sequence(p.workers, plural_rules(p), p.steps);
  ASSERT_EQ(mus.size(), 3u);
  const auto members = [&](const Matching& mu, std::size_t i) { return fixtures::ids(p.workers, mu.members(i)); };
  EXPECT_EQ(members(mus[0], 0), (Ids{"w1"}));
  EXPECT_TRUE(members(mus[0], 2).empty());
  EXPECT_EQ(members(mus[1], 2), (Ids{"w2", "w3"}));
  EXPECT_EQ(members(mus[2], 0), (Ids{"w1", "w4"}));
  EXPECT_TRUE(members(mus[2], 1).empty());
  EXPECT_EQ(members(mus[2], 2), (Ids{"w2", "w3"}));
  for (const auto& mu : mus) EXPECT_TRUE(mu.consistent());
}

TEST(PluralSequence, ScoreRankingReproducesExampleSix) {
  auto p = plural("example6_plural.json");
  const auto by_rule = apply_plural_sequence(p.workers, plural_rules(p), p.steps);
  const auto by_rank = apply_plural_sequence(p.workers, single_priority_rule(score_ranking(p.workers), 3), p.steps);
  EXPECT_EQ(by_rule, by_rank);
}

TEST(PluralSequence, OneInstitutionMatchesTheSingleRule) {
  const auto v = validate_scenario(fixtures::load("example2.json")).with_rule(RuleKind::SA);
  Policy policy = v.policy();
  const RuleSet rules{institutional_rule(policy)};
  PluralSequence steps;
  for (auto q : v.sequence()) steps.push_back({0, q});
  const auto mus = apply_plural_sequence(v.workers(), rules, steps);
  EXPECT_EQ(mus.back().members(0), run(v).hired);
}

TEST(PluralSequence, RejectsRulesThatBreakTheContract) {
  const auto ws = fixtures::workers({100, 90, 80});
  const InstitutionalRule greedy = [](const HiringView&, std::int64_t) {
    return std::vector<WorkerIndex>{0};
  };
  const InstitutionalRule overhire = [](const HiringView& view, std::int64_t) {
    return std::vector<WorkerIndex>(view.unmatched.begin(), view.unmatched.end());
  };
  EXPECT_THROW(apply_plural_sequence(ws, {greedy, greedy}, {{0, 1}, {1, 1}}), Error);
  EXPECT_THROW(apply_plural_sequence(ws, {overhire}, {{0, 1}}), Error);
  EXPECT_NO_THROW(apply_plural_sequence(ws, {greedy, greedy}, {{0, 1}}));
}

TEST(PluralSequence, OwnHiresDependOnlyOnTheUnmatchedSetAndOwnHistory) {
  // Two histories with the same unmatched set and the same own hires for
  // institution 0, but different owners for the remaining matched workers.
  const auto ws = fixtures::workers({100, 90, 80, 70, 60, 50}, {"w3", "w6"});
  const RuleSet rules(3, institutional_rule({RuleKind::SA, Rational(1, 2), std::nullopt}));
  Matching a(6, 3), b(6, 3);
  a.assign(0, 0);
  b.assign(0, 0);
  a.assign(1, 1);
  b.assign(1, 2);
  const auto after_a = apply_plural_sequence(ws, rules, {{0, 2}}, a).back();
  const auto after_b = apply_plural_sequence(ws, rules, {{0, 2}}, b).back();
  EXPECT_EQ(after_a.members(0), after_b.members(0));
}

TEST(PermutationIndependence, MixedRatioOrders) {
  const auto p = plural("mixed_ratio_plural.json");
  EXPECT_EQ(union_of(p, {{0, 2}, {1, 2}}), (Ids{"w1", "w2", "w3", "w4"}));
  EXPECT_EQ(union_of(p, {{1, 2}, {0, 2}}), (Ids{"w1", "w2", "w3", "w5"}));
  const auto verdict = check_permutation_independence(p.workers, plural_rules(p), p.steps);
  ASSERT_FALSE(verdict.holds);
  const auto ref = fixtures::ids(p.workers, verdict.witness->reference_set);
  const auto alt = fixtures::ids(p.workers, verdict.witness->witness_set);
  EXPECT_TRUE(ref.contains("w4"));
  EXPECT_TRUE(alt.contains("w5"));
}

TEST(PermutationIndependence, SingleStepHoldsAndBudgetApplies) {
  const auto p = plural("mixed_ratio_plural.json");
  EXPECT_TRUE(check_permutation_independence(p.workers, plural_rules(p), {{0, 3}}).holds);
  const PluralSequence long_seq(9, PluralStep{0, 0});
  try {
    check_permutation_independence(p.workers, plural_rules(p), long_seq);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(PermutationIndependence, SinglePriorityHoldsOnRandomSequences) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(21, t);
    const auto ws = fixtures::workers({10, 20, 30, 40, 50, 60, 70});
    std::vector<WorkerIndex> ranking(ws.size());
    std::iota(ranking.begin(), ranking.end(), 0);
    for (auto i = static_cast<std::int64_t>(ranking.size()) - 1; i > 0; --i) {
      std::swap(ranking[static_cast<std::size_t>(i)], ranking[static_cast<std::size_t>(rng.uniform(0, i))]);
    }
    const auto rules = single_priority_rule(ranking, 3);
    PluralSequence steps;
    std::int64_t left = 7;
    while (left > 0 && steps.size() < 5) {
      const auto q = rng.uniform(1, left);
      steps.push_back({static_cast<std::size_t>(rng.uniform(0, 2)), q});
      left -= q;
    }
    EXPECT_TRUE(check_permutation_independence(ws, rules, steps).holds);
    // The union is the top of the ranking.
    const auto hired = apply_plural_sequence(ws, rules, steps).back().matched();
    std::vector<WorkerIndex> top(ranking.begin(), ranking.begin() + static_cast<std::ptrdiff_t>(hired.size()));
    std::sort(top.begin(), top.end());
    EXPECT_EQ(hired, top);
  }
}

TEST(CommonTop, ScorePriorityShares) {
  const auto ws = fixtures::workers({100, 90, 80});
  EXPECT_TRUE(check_common_top(ws, single_priority_rule(score_ranking(ws), 3)).holds);
  EXPECT_TRUE(check_common_top(ws, single_priority_rule({2, 0, 1}, 3)).holds);
}

TEST(CommonTop, DifferentRatiosPickDifferentTops) {
  const auto ws = fixtures::workers({100, 90, 80, 70, 60}, {"w2", "w5"});
  const RuleSet rules{institutional_rule({RuleKind::SA, Rational(1), std::nullopt}),
                      institutional_rule({RuleKind::SA, Rational(0), std::nullopt})};
  const auto verdict = check_common_top(ws, rules);
  ASSERT_FALSE(verdict.holds);
  EXPECT_EQ(fixtures::ordered_ids(ws, verdict.witness->workers), (std::vector<std::string>{"w2", "w1"}));
}

TEST(MultiAggregation, PriorityRulesHold) {
  const auto ws = fixtures::workers({100, 90, 80, 50, 20}, {"w1", "w2", "w5"});
  const RuleSet sp(3, institutional_rule({RuleKind::SP, Rational(0), std::nullopt}));
  EXPECT_TRUE(check_multi_aggregation_independence(ws, sp, 0, 4).holds);
  const auto single = single_priority_rule({4, 1, 3, 0, 2}, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(check_multi_aggregation_independence(ws, single, i, 4).holds);
}

TEST(MultiAggregation, SmExampleOneFailsAtTwoTwo) {
  const auto ws = fixtures::workers({100, 90, 80, 50, 20}, {"w1", "w2", "w5"});
  const RuleSet sm(3, institutional_rule({RuleKind::SM, Rational(1, 2), std::nullopt}));
  const auto verdict = check_multi_aggregation_independence(ws, sm, 0, 4);
  ASSERT_FALSE(verdict.holds);
  EXPECT_EQ(verdict.witness->composition, (std::vector<std::int64_t>{2, 2}));
  EXPECT_TRUE(verdict.witness->start_own.empty());
  EXPECT_TRUE(verdict.witness->start_other.empty());
  EXPECT_THROW(check_multi_aggregation_independence(ws, sm, 0, 20), Error);
}

TEST(MultiAggregation, SaInstitutionsAreSplitInvariantOnTheirOwn) {
  const auto ws = fixtures::workers({100, 90, 80, 50, 20, 10}, {"w1", "w2", "w5"});
  const RuleSet sa(3, institutional_rule({RuleKind::SA, Rational(1, 2), std::nullopt}));
  EXPECT_TRUE(check_multi_aggregation_independence(ws, sa, 1, 4).holds);
}

TEST(ReconstructRanking, RecoversAnyStrictRanking) {
  const auto ws = fixtures::workers({10, 20, 30, 40, 50});
  const std::vector<WorkerIndex> ranking{3, 0, 4, 2, 1};
  EXPECT_EQ(reconstruct_ranking(ws, priority_rule(ranking)), ranking);
}
