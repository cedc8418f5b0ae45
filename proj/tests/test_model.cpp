#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "poolhire/model.hpp"

using namespace poolhire;
using fixtures::Ids;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("-3"), Rational(-3));
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("2.5"), Rational(5, 2));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Rational, CeilAndFloor) {
  EXPECT_EQ(poolhire::ceil(Rational(1, 2)), 1);
  EXPECT_EQ(poolhire::ceil(Rational(2)), 2);
  EXPECT_EQ(poolhire::ceil(Rational(-1, 2)), 0);
  EXPECT_EQ(poolhire::floor(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_times(Rational(1, 3), 4), 2);
  EXPECT_EQ(ceil_times(Rational(1, 2), 4), 2);
  EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
}

TEST(RuleKind, NamesRoundTrip) {
  for (auto rule : {RuleKind::SP, RuleKind::SM, RuleKind::SA, RuleKind::Brazil, RuleKind::FrenchP1,
                    RuleKind::FrenchP2, RuleKind::NSW}) {
    EXPECT_EQ(parse_rule_kind(to_string(rule)), rule);
  }
  EXPECT_EQ(parse_rule_kind("french-p1"), RuleKind::FrenchP1);
  EXPECT_EQ(parse_rule_kind("sa"), RuleKind::SA);
  EXPECT_FALSE(parse_rule_kind("XYZ"));
}

namespace {

ErrorCode code_of(Scenario s) {
  try {
    validate_scenario(std::move(s));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "scenario was accepted";
  return ErrorCode::InvalidValue;
}

}  // namespace

TEST(Validate, AcceptsExampleOne) {
  const auto v = validate_scenario(fixtures::load("example1.json"));
  EXPECT_EQ(v.size(), 5u);
  EXPECT_EQ(v.total_hires(), 4);
  EXPECT_TRUE(v.sufficient());
  EXPECT_EQ(v.find("w3"), WorkerIndex{2});
  EXPECT_FALSE(v.find("w9"));
}

TEST(Validate, RejectsDuplicateScores) {
  auto s = fixtures::scenario(fixtures::workers({90, 90}), RuleKind::SP, Rational(0), {1});
  try {
    validate_scenario(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateScore);
    EXPECT_NE(std::find(e.subjects().begin(), e.subjects().end(), "w1"), e.subjects().end());
    EXPECT_NE(std::find(e.subjects().begin(), e.subjects().end(), "w2"), e.subjects().end());
  }
}

TEST(Validate, RejectsOddNswRoundWithItsIndex) {
  auto s = fixtures::load("example4_nsw.json");
  s.sequence = {2, 3};
  try {
    validate_scenario(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OddNswRound);
    EXPECT_EQ(e.subjects(), std::vector<std::string>{"2"});
  }
}

TEST(Validate, StructuralErrors) {
  auto dup = fixtures::scenario(fixtures::workers({10, 20}), RuleKind::SP, Rational(0), {1});
  dup.workers[1].id = "w1";
  EXPECT_EQ(code_of(dup), ErrorCode::DuplicateId);

  auto bad_m = fixtures::scenario(fixtures::workers({10}), RuleKind::SP, Rational(3, 2), {1});
  EXPECT_EQ(code_of(bad_m), ErrorCode::InvalidValue);

  auto zero_round = fixtures::scenario(fixtures::workers({10}), RuleKind::SP, Rational(0), {0});
  EXPECT_EQ(code_of(zero_round), ErrorCode::InvalidValue);

  auto ghost_prior = fixtures::scenario(fixtures::workers({10}), RuleKind::SP, Rational(0), {1});
  ghost_prior.prior_hires = {"w7"};
  EXPECT_EQ(code_of(ghost_prior), ErrorCode::UnknownWorker);

  auto no_k = fixtures::load("example3_brazil.json");
  no_k.policy.k.reset();
  EXPECT_EQ(code_of(no_k), ErrorCode::MissingField);

  auto small_k = fixtures::load("brazil6.json");
  small_k.policy.k = 3;
  EXPECT_EQ(code_of(small_k), ErrorCode::KTooSmall);

  auto no_gender = fixtures::load("example4_nsw.json");
  no_gender.workers[0].gender.reset();
  EXPECT_EQ(code_of(no_gender), ErrorCode::MissingField);

  auto no_score = fixtures::scenario(fixtures::workers({10, 20}), RuleKind::SA, Rational(0), {1});
  no_score.workers[0].score.reset();
  EXPECT_EQ(code_of(no_score), ErrorCode::MissingField);

  auto pool_without_score = fixtures::load("french_example.json");
  pool_without_score.workers[0].disability_score.reset();
  EXPECT_EQ(code_of(pool_without_score), ErrorCode::MissingField);
}

TEST(Validate, FrenchScoresOnlyNeedToBeStrictWithinEachCompetition) {
  // w3 has 50 in both competitions; w1 also has 50 in the disability one.
  EXPECT_NO_THROW(validate_scenario(fixtures::load("french_example.json")));
  auto clash = fixtures::load("french_example.json");
  clash.workers[1].disability_score = Rational(50);
  EXPECT_EQ(code_of(clash), ErrorCode::DuplicateScore);
}

TEST(Validate, SufficiencyFlag) {
  auto s = fixtures::scenario(fixtures::workers({10, 20, 30}), RuleKind::SP, Rational(0), {2});
  s.prior_hires = {"w1"};
  EXPECT_TRUE(validate_scenario(s).sufficient());
  s.sequence = {3};
  EXPECT_FALSE(validate_scenario(s).sufficient());
}

TEST(TopQ, DescendingAndBounded) {
  const auto ws = fixtures::workers({100, 90, 80});
  const std::vector<WorkerIndex> pool{2, 0, 1};
  EXPECT_EQ(top_q(pool, ws, ScoreProfile::Main, 2), (std::vector<WorkerIndex>{0, 1}));
  EXPECT_TRUE(top_q(pool, ws, ScoreProfile::Main, 0).empty());
  EXPECT_EQ(top_q(pool, ws, ScoreProfile::Main, 5), (std::vector<WorkerIndex>{0, 1, 2}));
}

TEST(TopQ, PrefixUnderRequery) {
  const auto ws = fixtures::workers({15, 70, 30, 95, 40, 60});
  const std::vector<WorkerIndex> pool{0, 1, 2, 3, 4, 5};
  for (std::int64_t q = 0; q < 6; ++q) {
    const auto a = top_q(pool, ws, ScoreProfile::Main, q);
    const auto b = top_q(pool, ws, ScoreProfile::Main, q + 1);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
  }
}

TEST(Selection, HiredThroughFollowsTheLedger) {
  Selection sel;
  sel.ledger.push_back({1, 1, 0, {}, {3}, 0, 1});
  sel.ledger.push_back({2, 2, 1, {1}, {0}, 1, 3});
  sel.hired = {0, 1, 3};
  EXPECT_EQ(sel.hired_through(1), (std::vector<WorkerIndex>{3}));
  EXPECT_EQ(sel.hired_through(2), (std::vector<WorkerIndex>{0, 1, 3}));
}
