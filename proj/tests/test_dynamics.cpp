#include <gtest/gtest.h>

#include "oracles.hpp"
#include "selfish/analysis.hpp"
#include "selfish/dynamics.hpp"
#include "selfish/families.hpp"

using namespace selfish;

TEST(ImprovementGraph, PrisonersDilemma) {
  const Game g = generate(PrisonersDilemmaN{2});
  const auto graph = improvement_graph(g);
  EXPECT_EQ(graph.node_count(), 4u);
  EXPECT_EQ(graph.sinks(), (std::vector<std::size_t>{3}));
  // (C,C) -> (D,C), (C,D); (C,D) -> (D,D); (D,C) -> (D,D).
  EXPECT_EQ(graph.successors[0], (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(graph.successors[1], (std::vector<std::size_t>{3}));
  EXPECT_EQ(graph.successors[2], (std::vector<std::size_t>{3}));
}

TEST(ImprovementGraph, MatchingPenniesIsACycle) {
  const auto graph = improvement_graph(generate(MatchingPennies{}));
  EXPECT_TRUE(graph.sinks().empty());
  EXPECT_EQ(graph.edge_count(), 4u);
}

TEST(ImprovementGraph, BattleOfSexesSinks) {
  EXPECT_EQ(improvement_graph(generate(BattleOfSexes{})).sinks(), (std::vector<std::size_t>{0, 3}));
}

TEST(ImprovementGraph, Guard) {
  try {
    improvement_graph(generate(TravelersDilemma{}), 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ExplosionGuard);
  }
}

TEST(Fip, Examples) {
  EXPECT_TRUE(has_fip(generate(PrisonersDilemmaN{2})));
  EXPECT_FALSE(has_fip(generate(WeaklyAcyclic3x3{})));
  EXPECT_FALSE(has_fip(generate(MatchingPennies{})));
}

TEST(WeakAcyclicity, Examples) {
  EXPECT_TRUE(is_weakly_acyclic(generate(WeaklyAcyclic3x3{})));
  EXPECT_FALSE(is_weakly_acyclic(generate(MatchingPennies{})));
  EXPECT_TRUE(is_weakly_acyclic(generate(PrisonersDilemmaN{2})));
  EXPECT_EQ(selfishness_level(generate(WeaklyAcyclic3x3{})).kind, LevelKind::Infinite);
}

TEST(Potential, Certificates) {
  for (const Game& g : {generate(PrisonersDilemmaN{2}), generate(FLevelGame{2, 1}), generate(TravelersDilemma{})}) {
    const auto graph = improvement_graph(g);
    const auto p = ordinal_potential_certificate(graph);
    ASSERT_TRUE(p.has_value());
    EXPECT_TRUE(certifies(graph, *p));
  }
  EXPECT_FALSE(ordinal_potential_certificate(generate(MatchingPennies{})).has_value());
}

TEST(Dynamics, RandomGames) {
  oracle::RandomGames gen(404);
  for (int k = 0; k < 200; ++k) {
    const Game g = gen.next();
    const auto graph = improvement_graph(g);
    std::vector<JointStrategy> sinks;
    for (auto v : graph.sinks()) sinks.push_back(g.profile_at(v));
    EXPECT_EQ(sinks, oracle::nash(g));
    if (has_fip(graph)) {
      EXPECT_TRUE(is_weakly_acyclic(graph));
      EXPECT_TRUE(selfishness_level(g).is_finite());
      EXPECT_TRUE(certifies(graph, *ordinal_potential_certificate(graph)));
    }
  }
}

TEST(Dynamics, FacilityGamesHaveFip) {
  std::mt19937_64 rng(9);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = pick(2, 4), n = pick(2, 3);
    CostSharing cs;
    Congestion cg;
    for (std::size_t e = 0; e < m; ++e) {
      cs.costs.push_back(Rational(pick(1, 9)));
      cg.delays.push_back({Rational(pick(0, 3)), Rational(pick(0, 3))});
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<FacilitySet> sets;
      for (unsigned mask = 1; mask < (1u << m); ++mask) {
        if (pick(0, 2) != 0) continue;
        FacilitySet fs;
        for (std::size_t e = 0; e < m; ++e) {
          if (mask & (1u << e)) fs.push_back(e);
        }
        sets.push_back(fs);
      }
      if (sets.empty()) sets.push_back({0});
      cs.strategies.push_back(sets);
      cg.strategies.push_back(sets);
    }
    for (const Game& g : {generate(cs), generate(cg)}) {
      EXPECT_TRUE(has_fip(g));
      EXPECT_TRUE(selfishness_level(g).is_finite());
    }
  }
}
