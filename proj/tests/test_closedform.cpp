#include <gtest/gtest.h>

#include <random>

#include "selfish/analysis.hpp"
#include "selfish/closedform.hpp"
#include "selfish/families.hpp"

using namespace selfish;

namespace {

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return Errc::SyntaxError;
}

Rational value_of(const ClosedFormResult& r) { return r.value.value(); }

}  // namespace

TEST(ClosedForm, TableRows) {
  auto pd = closed_form_level(PrisonersDilemmaN{5});
  EXPECT_EQ(pd.kind, ClosedFormKind::Exact);
  EXPECT_EQ(value_of(pd), make_rational(1, 7));

  EXPECT_EQ(value_of(closed_form_level(PublicGoodsGrid{10, 1, 2, 1})), make_rational(4, 5));
  EXPECT_EQ(value_of(closed_form_level(PublicGoodsGrid{2, 1, 4, 1})), 0);
  EXPECT_EQ(value_of(closed_form_level(TravelersDilemma{})), make_rational(1, 2));
  EXPECT_EQ(value_of(closed_form_level(FLevelGame{3, 9})), 9);
  EXPECT_EQ(closed_form_level(MatchingPennies{}).kind, ClosedFormKind::Infinite);
  EXPECT_EQ(closed_form_level(Cournot::from_market(5, 1, 2)).kind, ClosedFormKind::Infinite);
  EXPECT_EQ(closed_form_level(Tragedy{3, std::nullopt}).kind, ClosedFormKind::Infinite);
  EXPECT_EQ(closed_form_level(Bertrand{2, 1, make_rational(1, 2)}).kind, ClosedFormKind::Infinite);
  EXPECT_EQ(value_of(closed_form_level(PublicGoodsCont{10, 1, 2})), make_rational(4, 5));
  EXPECT_EQ(error_of([] { closed_form_level(BattleOfSexes{}); }), Errc::ParamOutOfRange);
}

TEST(ClosedForm, IntegerCongestionBound) {
  // Two players who may use both facilities: not singleton, so the integer
  // bound applies with L = 2, delta_max = 3, delta_min = 1.
  Congestion cg{{{0, 3}, {1, 0}}, {{{0, 1}, {1}}, {{1}}}};
  auto r = closed_form_level(cg);
  EXPECT_EQ(r.kind, ClosedFormKind::UpperBound);
  EXPECT_EQ(value_of(r), 2);
  EXPECT_TRUE(r.tight);
}

TEST(ClosedForm, CostSharingBounds) {
  const auto singleton = tight_instance(TightFamily::CostSharingSingleton, {{"c_max", 10}, {"c_min", 1}});
  EXPECT_EQ(value_of(closed_form_level(singleton)), 4);
  const auto integer = tight_instance(TightFamily::CostSharingInteger, {{"L", 3}, {"c_max", 2}});
  EXPECT_EQ(value_of(closed_form_level(integer)), 2);
  // Rational costs are scaled by the lcm of denominators (here 10).
  const auto eps = epsilon_instance(10, 1, make_rational(1, 10));
  EXPECT_EQ(value_of(closed_form_level(eps)), Rational(2 * 10 * 10, 2) - 1);
  EXPECT_GE(value_of(closed_form_level(eps)), selfishness_level(generate(eps)).level());
}

TEST(ClosedForm, SingletonCongestionNeedsDiscrepancy) {
  const auto spec = tight_instance(TightFamily::CongestionSingleton, {{"delta", make_rational(1, 4)}, {"a", 2}});
  ClosedFormOptions no_derive;
  no_derive.derive_delta_max = false;
  EXPECT_EQ(error_of([&] { closed_form_level(spec, no_derive); }), Errc::MissingDiscrepancy);
  ClosedFormOptions given;
  given.delta_max = make_rational(1, 4);
  EXPECT_EQ(value_of(closed_form_level(spec, given)), make_rational(1, 3));
  EXPECT_EQ(value_of(closed_form_level(spec)), make_rational(1, 3));
  EXPECT_EQ(*derive_delta_max(std::get<Congestion>(spec)), make_rational(1, 4));
}

TEST(Discrepancy, Examples) {
  EXPECT_EQ(discrepancy(0, make_rational(5, 2), 1, 0, 1, 1), make_rational(1, 2));
  EXPECT_EQ(discrepancy(2, 1, 2, 1, 3, 3), 0);
  EXPECT_EQ(error_of([] { discrepancy(0, 1, 0, 2, 1, 1); }), Errc::ZeroLinearCoefficients);
}

TEST(Discrepancy, BoundaryOptimaLeaveUnitInterval) {
  // Delays 0 and x + 2 with two players: everyone on the free facility is
  // optimal, and the discrepancy is -2.
  Congestion cg{{{0, 0}, {1, 2}}, {{{0}, {1}}, {{0}, {1}}}};
  EXPECT_EQ(social_optima(generate(cg)), (std::vector<JointStrategy>{{0, 0}}));
  EXPECT_EQ(discrepancy(0, 0, 1, 2, 2, 0), -2);
}

TEST(Discrepancy, OneSidedBoundsAtSocialOptima) {
  // delta <= 1 when e is used, delta >= -1 when e' is used.
  std::mt19937_64 rng(5);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = pick(2, 4), n = pick(2, 4);
    Congestion cg;
    for (std::size_t e = 0; e < m; ++e) cg.delays.push_back({make_rational(pick(0, 4), pick(1, 2)), Rational(pick(0, 6))});
    std::vector<FacilitySet> all;
    for (std::size_t e = 0; e < m; ++e) all.push_back({e});
    cg.strategies.assign(n, all);
    for (const auto& s : social_optima(generate(cg))) {
      const auto load = facility_loads(cg, s);
      for (std::size_t e = 0; e < m; ++e) {
        for (std::size_t f = 0; f < m; ++f) {
          if (cg.delays[e].a + cg.delays[f].a == 0) continue;
          const auto d = discrepancy(cg.delays[e].a, cg.delays[e].b, cg.delays[f].a, cg.delays[f].b, load[e], load[f]);
          if (load[e] >= 1) {
            EXPECT_LE(d, 1);
          }
          if (load[f] >= 1) {
            EXPECT_GE(d, -1);
          }
        }
      }
    }
  }
}

TEST(AppealFactors, ClosedForms) {
  EXPECT_EQ(tragedy_af(make_rational(1, 4), make_rational(3, 8)), 1);
  EXPECT_EQ(cournot_af(1, 1, make_rational(1, 4), make_rational(3, 8)), 1);
  EXPECT_EQ(error_of([] { tragedy_af(make_rational(1, 4), make_rational(1, 5)); }), Errc::OutOfDeviationRange);
  EXPECT_EQ(error_of([] { cournot_af(1, 1, make_rational(1, 4), 1); }), Errc::OutOfDeviationRange);
  EXPECT_EQ(error_of([] { bertrand_af(2, 1, make_rational(1, 2), 2); }), Errc::OutOfDeviationRange);
}

TEST(AppealFactors, BertrandGrowsNearPeak) {
  // d = 5/4, peak profit 9/16; AF = W / (2 b h^2) - 1.
  const Rational a = 2, b = 1, c = make_rational(1, 2);
  EXPECT_EQ(bertrand_af(a, b, c, 1), Rational(9, 16) / (2 * Rational(1, 16)) - 1);
  EXPECT_GT(bertrand_af(a, b, c, Rational(5, 4) - Rational(1, 1000)), 1000);
}

TEST(AppealFactors, TragedyMatchesDirectComputation) {
  // n = 2, s = (a, 1/2 - a); deviation x of player 1.
  const Rational a = make_rational(1, 5), x = make_rational(3, 10);
  const Rational other = Rational(1, 2) - a;
  auto p1 = [&](const Rational& s1) { return Rational(s1 * (1 - s1 - other)); };
  auto sw = [&](const Rational& s1) { return Rational((s1 + other) * (1 - s1 - other)); };
  EXPECT_EQ(tragedy_af(a, x), (p1(x) - p1(a)) / (sw(a) - sw(x)));
}

TEST(Witness, ExceedsBound) {
  const std::vector<ContinuousFamilyParams> families{
      Tragedy{2, std::nullopt}, Tragedy{5, make_rational(1, 20)}, Cournot::from_market(5, 1, 2, 3),
      Cournot{1, 1, 2, make_rational(1, 4)}, Bertrand{2, 1, make_rational(1, 2)}, Bertrand{10, 3, 1}};
  for (const auto& f : families) {
    for (const Rational& M : {Rational(10), Rational(1000), Rational(1000000)}) {
      EXPECT_GT(witness_af(f, unbounded_witness(f, M)), M);
    }
  }
  EXPECT_EQ(unbounded_witness(Tragedy{2, make_rational(1, 4)}, 100), make_rational(1, 4) + make_rational(1, 4 * 102));
  EXPECT_EQ(error_of([] { unbounded_witness(Tragedy{2, std::nullopt}, 0); }), Errc::ParamOutOfRange);
  EXPECT_EQ(error_of([] { unbounded_witness(PublicGoodsCont{}, 5); }), Errc::ParamOutOfRange);
}
