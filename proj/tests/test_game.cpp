#include <gtest/gtest.h>

#include <set>

#include "selfish/families.hpp"
#include "selfish/game.hpp"

using namespace selfish;

namespace {

GameDescription pd_description() {
  return {Orientation::PayoffMax,
          {{"1", {"C", "D"}}, {"2", {"C", "D"}}},
          {{2, 2}, {0, 3}, {3, 0}, {1, 1}}};
}

Errc error_of(const GameDescription& d) {
  auto err = validate(d);
  EXPECT_TRUE(err.has_value());
  return err ? err->code() : Errc::SyntaxError;
}

}  // namespace

TEST(Validate, WellFormedGameIsOk) { EXPECT_FALSE(validate(pd_description()).has_value()); }

TEST(Validate, ReportsFirstViolation) {
  auto d = pd_description();
  d.cells[1].push_back(5);
  EXPECT_EQ(error_of(d), Errc::DimensionMismatch);

  d = pd_description();
  d.cells.pop_back();
  EXPECT_EQ(error_of(d), Errc::DimensionMismatch);

  d = pd_description();
  d.players.pop_back();
  EXPECT_EQ(error_of(d), Errc::PlayerCountTooSmall);

  d = pd_description();
  d.players[1].strategies = {"C", "C"};
  EXPECT_EQ(error_of(d), Errc::DuplicateLabel);

  d = pd_description();
  d.players[0].strategies.clear();
  EXPECT_EQ(error_of(d), Errc::EmptyStrategySet);
}

TEST(Validate, ConstructorThrows) {
  auto d = pd_description();
  d.cells[0] = {1};
  EXPECT_THROW(Game{d}, Error);
}

TEST(Game, PayoffLookup) {
  const Game pd(pd_description());
  EXPECT_EQ(pd.payoff({0, 0}, 0), 2);
  EXPECT_EQ(pd.payoff({1, 0}, 0), 3);
  const Game mp = generate(MatchingPennies{});
  EXPECT_EQ(mp.payoff({0, 1}, 1), 1);
}

TEST(Game, OutOfRangeIndices) {
  const Game pd(pd_description());
  EXPECT_THROW(pd.payoff({0, 2}, 0), Error);
  EXPECT_THROW(pd.payoff({0, 0}, 2), Error);
  EXPECT_THROW(pd.payoff({0}, 0), Error);
  try {
    pd.social_value({5, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IndexOutOfRange);
  }
}

TEST(Game, SocialValueIsSumOfValues) {
  const Game pd(pd_description());
  EXPECT_EQ(pd.social_value({0, 0}), 4);
  for (const auto& s : generate(MatchingPennies{}).profiles()) EXPECT_EQ(generate(MatchingPennies{}).social_value(s), 0);
  const Game g = generate(PublicGoodsGrid{3, 2, make_rational(5, 2), 2});
  for (const auto& s : g.profiles()) {
    Rational sum = 0;
    for (std::size_t i = 0; i < 3; ++i) sum += g.payoff(s, i);
    EXPECT_EQ(g.social_value(s), sum);
  }
}

TEST(Game, CostGameKeepsStoredCosts) {
  const Game cs = generate(tight_instance(TightFamily::CostSharingSingleton, {{"c_max", 10}, {"c_min", 1}}));
  EXPECT_EQ(cs.orientation(), Orientation::CostMin);
  EXPECT_EQ(cs.social_value({0, 0}), 10);
  EXPECT_EQ(cs.payoff({0, 0}, 1), 5);
}

TEST(JointStrategies, LexicographicOrder) {
  const Game pd(pd_description());
  std::vector<JointStrategy> seen;
  for (const auto& s : joint_strategies(pd)) seen.push_back(s);
  EXPECT_EQ(seen, (std::vector<JointStrategy>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  for (std::size_t k = 0; k < pd.cell_count(); ++k) {
    EXPECT_EQ(pd.profile_at(k), seen[k]);
    EXPECT_EQ(pd.flat_index(seen[k]), k);
  }
}

TEST(JointStrategies, CountsAndDistinctness) {
  const Game td = generate(TravelersDilemma{});
  std::set<JointStrategy> seen;
  for (const auto& s : joint_strategies(td)) seen.insert(s);
  EXPECT_EQ(seen.size(), 9801u);
  std::size_t count = 0;
  for ([[maybe_unused]] const auto& s : joint_strategies(generate(PrisonersDilemmaN{3}))) ++count;
  EXPECT_EQ(count, 8u);
}

TEST(JointStrategies, MixedSizes) {
  std::size_t count = 0;
  JointStrategy last;
  for (const auto& s : ProfileRange({2, 3, 1})) {
    ++count;
    last = s;
  }
  EXPECT_EQ(count, 6u);
  EXPECT_EQ(last, (JointStrategy{1, 2, 0}));
}

TEST(JointStrategies, NondecreasingOrbits) {
  std::vector<JointStrategy> seen;
  for (const auto& s : ProfileRange({3, 3}, true)) seen.push_back(s);
  EXPECT_EQ(seen, (std::vector<JointStrategy>{{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}));
  EXPECT_THROW(ProfileRange({2, 3}, true), Error);
}

TEST(ImplicitGame, MaterializeMatchesAndGuards) {
  const auto ig = implicit_game(PrisonersDilemmaN{4});
  const Game g = materialize(ig);
  for (const auto& s : g.profiles()) {
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(g.payoff(s, i), ig.payoff(s, i));
    EXPECT_EQ(g.social_value(s), ig.social_value(s));
  }
  try {
    materialize(ig, 15);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ExplosionGuard);
  }
}

TEST(ImplicitGame, SatisfiesConcept) {
  static_assert(NormalFormGame<Game>);
  static_assert(NormalFormGame<ImplicitGame>);
}
