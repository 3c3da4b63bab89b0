#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "selfish/error.hpp"
#include "selfish/game.hpp"
#include "selfish/rational.hpp"

namespace selfish {

// ---------------------------------------------------------------------------
// Family descriptions

/// n-player Prisoner's Dilemma, p_i(s) = 1 - s_i + 2 sum_{j != i} s_j with
/// strategy C = 1 (index 0) and D = 0 (index 1).
struct PrisonersDilemmaN {
  std::size_t n = 2;
};

/// Two-player dilemma with selfishness level alpha and price of stability
/// beta; x = alpha / (alpha + 1).
struct GeneralizedPD {
  Rational alpha;
  Rational beta;
};

/// Public goods game on the grid {j b / steps : j = 0..steps},
/// p_i(s) = b - s_i + c/n sum_j s_j.
struct PublicGoodsGrid {
  std::size_t n = 2;
  Rational b = 1;
  Rational c = 2;
  std::size_t steps = 1;
};

/// Strategies 2..100; s_i if equal, s_i + 2 for the lower claim, the lower
/// claim minus 2 for the higher one.
struct TravelersDilemma {};

struct MatchingPennies {};
struct BattleOfSexes {};
struct BadNash3x3 {};
struct NoNash2x2 {};
struct WeaklyAcyclic3x3 {};

/// Two strategies 0/1 per player; unique social optimum all-ones and
/// selfishness level exactly f.
struct FLevelGame {
  std::size_t n = 2;
  Rational f;
};

/// Sorted 0-based facility indices.
using FacilitySet = std::vector<std::size_t>;

/// Fair cost sharing: c_i(s) = sum_{e in s_i} c_e / x_e(s).
struct CostSharing {
  std::vector<Rational> costs;
  std::vector<std::vector<FacilitySet>> strategies;

  bool singleton() const {
    for (const auto& player : strategies) {
      for (const auto& set : player) {
        if (set.size() != 1) return false;
      }
    }
    return true;
  }
  std::size_t max_strategy_size() const {
    std::size_t out = 0;
    for (const auto& player : strategies) {
      for (const auto& set : player) out = std::max(out, set.size());
    }
    return out;
  }
};

/// Affine facility delay d_e(x) = a x + b.
struct AffineDelay {
  Rational a;
  Rational b;
};

/// Linear congestion game: c_i(s) = sum_{e in s_i} (a_e x_e(s) + b_e).
struct Congestion {
  std::vector<AffineDelay> delays;
  std::vector<std::vector<FacilitySet>> strategies;

  bool singleton() const {
    for (const auto& player : strategies) {
      for (const auto& set : player) {
        if (set.size() != 1) return false;
      }
    }
    return true;
  }
  bool symmetric() const {
    return std::all_of(strategies.begin(), strategies.end(),
                       [&](const auto& s) { return s == strategies.front(); });
  }
  std::size_t max_strategy_size() const {
    std::size_t out = 0;
    for (const auto& player : strategies) {
      for (const auto& set : player) out = std::max(out, set.size());
    }
    return out;
  }
};

using FamilySpec =
    std::variant<PrisonersDilemmaN, GeneralizedPD, PublicGoodsGrid, TravelersDilemma, MatchingPennies,
                 BattleOfSexes, BadNash3x3, NoNash2x2, FLevelGame, WeaklyAcyclic3x3, CostSharing, Congestion>;

// ---------------------------------------------------------------------------
// Validation

namespace detail {

inline void param_check(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::ParamOutOfRange, what);
}

inline void check_facility_strategies(const std::vector<std::vector<FacilitySet>>& strategies,
                                      std::size_t facilities) {
  param_check(strategies.size() >= 2, "need at least 2 players");
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    param_check(!strategies[i].empty(), "player " + std::to_string(i + 1) + " has no strategies");
    std::set<FacilitySet> seen;
    for (const auto& set : strategies[i]) {
      param_check(!set.empty(), "empty facility set");
      param_check(std::is_sorted(set.begin(), set.end()) &&
                      std::adjacent_find(set.begin(), set.end()) == set.end(),
                  "facility sets must be sorted and duplicate-free");
      param_check(set.back() < facilities, "facility index out of range");
      param_check(seen.insert(set).second, "player " + std::to_string(i + 1) + " repeats a facility set");
    }
  }
}

}  // namespace detail

inline void validate_family(const FamilySpec& spec) {
  using detail::param_check;
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PrisonersDilemmaN>) {
          param_check(f.n >= 2, "pd_n needs n >= 2");
        } else if constexpr (std::is_same_v<T, GeneralizedPD>) {
          param_check(f.alpha > 0 && f.beta > 1, "generalized PD needs alpha > 0 and beta > 1");
        } else if constexpr (std::is_same_v<T, PublicGoodsGrid>) {
          param_check(f.n >= 2 && f.b > 0 && f.c > 1 && f.steps >= 1,
                      "public goods needs n >= 2, b > 0, c > 1, steps >= 1");
        } else if constexpr (std::is_same_v<T, FLevelGame>) {
          param_check(f.n >= 2 && f.f >= 0, "f-level game needs n >= 2 and f >= 0");
        } else if constexpr (std::is_same_v<T, CostSharing>) {
          for (const auto& c : f.costs) param_check(c >= 0, "facility costs must be non-negative");
          detail::check_facility_strategies(f.strategies, f.costs.size());
        } else if constexpr (std::is_same_v<T, Congestion>) {
          for (const auto& d : f.delays) param_check(d.a >= 0 && d.b >= 0, "delay coefficients must be non-negative");
          detail::check_facility_strategies(f.strategies, f.delays.size());
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Generation

namespace detail {

inline std::vector<Player> numbered_players(std::size_t n, const std::vector<std::string>& labels) {
  std::vector<Player> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({std::to_string(i + 1), labels});
  return out;
}

inline Game table_game(std::vector<std::string> labels, const std::vector<std::pair<Rational, Rational>>& cells) {
  GameDescription d{Orientation::PayoffMax, numbered_players(2, labels), {}};
  for (const auto& [a, b] : cells) d.cells.push_back({a, b});
  return Game(std::move(d));
}

inline std::string facility_set_label(const FacilitySet& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += ',';
    out += 'e' + std::to_string(set[k] + 1);
  }
  return out + "}";
}

inline std::vector<Player> facility_players(const std::vector<std::vector<FacilitySet>>& strategies) {
  std::vector<Player> out;
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    Player p{std::to_string(i + 1), {}};
    for (const auto& set : strategies[i]) p.strategies.push_back(facility_set_label(set));
    out.push_back(std::move(p));
  }
  return out;
}

/// Expands a facility game to normal form; `cost(load, e)` is the cost one
/// user of facility e pays under load x_e.
template <class CostPerUser>
Game expand_facility_game(const std::vector<std::vector<FacilitySet>>& strategies, std::size_t facilities,
                          std::size_t cap, CostPerUser&& cost) {
  auto players = facility_players(strategies);
  std::vector<std::size_t> counts;
  for (const auto& p : strategies) counts.push_back(p.size());
  const auto cells = profile_count(counts);
  if (cells > cap) {
    throw Error(Errc::ExplosionGuard, std::to_string(cells) + " joint strategies exceed the cap of " +
                                          std::to_string(cap));
  }
  GameDescription d{Orientation::CostMin, std::move(players), {}};
  d.cells.reserve(cells);
  std::vector<std::size_t> load(facilities);
  for (const auto& s : ProfileRange(counts)) {
    std::fill(load.begin(), load.end(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (auto e : strategies[i][s[i]]) ++load[e];
    }
    std::vector<Rational> cell;
    cell.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      Rational c = 0;
      for (auto e : strategies[i][s[i]]) c += cost(load[e], e);
      cell.push_back(std::move(c));
    }
    d.cells.push_back(std::move(cell));
  }
  return Game(std::move(d));
}

}  // namespace detail

inline ImplicitGame implicit_game(const PrisonersDilemmaN& f) {
  validate_family(f);
  const std::size_t n = f.n;
  return ImplicitGame(
      Orientation::PayoffMax, detail::numbered_players(n, {"C", "D"}),
      [n](const JointStrategy& s, std::size_t i) {
        // Index 0 is C (contribute 1), index 1 is D (contribute 0).
        long long others = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i && s[j] == 0) ++others;
        }
        const long long own = s[i] == 0 ? 1 : 0;
        return Rational(1 - own + 2 * others);
      },
      true);
}

inline std::vector<Rational> public_goods_grid(const PublicGoodsGrid& f) {
  std::vector<Rational> out;
  for (std::size_t j = 0; j <= f.steps; ++j) {
    out.push_back(f.b * Rational(static_cast<long long>(j)) / Rational(static_cast<long long>(f.steps)));
  }
  return out;
}

inline ImplicitGame implicit_game(const PublicGoodsGrid& f) {
  validate_family(f);
  auto grid = public_goods_grid(f);
  std::vector<std::string> labels;
  for (const auto& v : grid) labels.push_back(to_string(v));
  const Rational share = f.c / Rational(static_cast<long long>(f.n));
  const Rational b = f.b;
  return ImplicitGame(
      Orientation::PayoffMax, detail::numbered_players(f.n, labels),
      [grid = std::move(grid), share, b](const JointStrategy& s, std::size_t i) {
        Rational total = 0;
        for (auto k : s) total += grid[k];
        return Rational(b - grid[s[i]] + share * total);
      },
      true);
}

inline ImplicitGame implicit_game(const TravelersDilemma&) {
  std::vector<std::string> labels;
  for (int v = 2; v <= 100; ++v) labels.push_back(std::to_string(v));
  return ImplicitGame(
      Orientation::PayoffMax, detail::numbered_players(2, labels),
      [](const JointStrategy& s, std::size_t i) {
        const long long own = static_cast<long long>(s[i]) + 2;
        const long long other = static_cast<long long>(s[1 - i]) + 2;
        if (own == other) return Rational(own);
        if (own < other) return Rational(own + 2);
        return Rational(other - 2);
      },
      true);
}

inline ImplicitGame implicit_game(const FLevelGame& f) {
  validate_family(f);
  const std::size_t n = f.n;
  const Rational high = f.f;
  const Rational low = -(f.f + 1) / Rational(static_cast<long long>(n - 1));
  return ImplicitGame(
      Orientation::PayoffMax, detail::numbered_players(n, {"0", "1"}),
      [n, high, low](const JointStrategy& s, std::size_t i) {
        // Index equals the strategy value.
        if (std::all_of(s.begin(), s.end(), [](auto v) { return v == 1; })) return Rational(0);
        if (s[i] == 0) {
          bool first_zero = true;
          for (std::size_t j = 0; j < i; ++j) first_zero = first_zero && s[j] == 1;
          if (first_zero) return high;
        }
        (void)n;
        return low;
      },
      false);
}

inline Game generate(const FamilySpec& spec, std::size_t cap = kDefaultCellCap) {
  validate_family(spec);
  return std::visit(
      [cap](const auto& f) -> Game {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PrisonersDilemmaN> || std::is_same_v<T, PublicGoodsGrid> ||
                      std::is_same_v<T, TravelersDilemma> || std::is_same_v<T, FLevelGame>) {
          return materialize(implicit_game(f), cap);
        } else if constexpr (std::is_same_v<T, GeneralizedPD>) {
          const Rational x = f.alpha / (f.alpha + 1);
          const Rational low = 1 / f.beta;
          return detail::table_game({"C", "D"}, {{1, 1}, {0, x + 1}, {x + 1, 0}, {low, low}});
        } else if constexpr (std::is_same_v<T, MatchingPennies>) {
          return detail::table_game({"H", "T"}, {{1, -1}, {-1, 1}, {-1, 1}, {1, -1}});
        } else if constexpr (std::is_same_v<T, BattleOfSexes>) {
          return detail::table_game({"F", "B"}, {{2, 1}, {0, 0}, {0, 0}, {1, 2}});
        } else if constexpr (std::is_same_v<T, NoNash2x2>) {
          return detail::table_game({"C", "D"}, {{2, 2}, {2, 0}, {3, 0}, {1, 1}});
        } else if constexpr (std::is_same_v<T, BadNash3x3>) {
          return detail::table_game({"H", "T", "E"}, {{1, -1}, {-1, 1}, {-1, -1},   //
                                                      {-1, 1}, {1, -1}, {-1, -1},   //
                                                      {-1, -1}, {-1, -1}, {-1, -1}});
        } else if constexpr (std::is_same_v<T, WeaklyAcyclic3x3>) {
          const Rational h = make_rational(-1, 2);
          return detail::table_game({"H", "T", "E"}, {{1, -1}, {-1, 1}, {-1, h},  //
                                                      {-1, 1}, {1, -1}, {-1, h},  //
                                                      {h, -1}, {h, -1}, {h, h}});
        } else if constexpr (std::is_same_v<T, CostSharing>) {
          return detail::expand_facility_game(f.strategies, f.costs.size(), cap,
                                              [&](std::size_t load, std::size_t e) {
                                                return Rational(f.costs[e] / Rational(static_cast<long long>(load)));
                                              });
        } else {
          static_assert(std::is_same_v<T, Congestion>);
          return detail::expand_facility_game(f.strategies, f.delays.size(), cap,
                                              [&](std::size_t load, std::size_t e) {
                                                const auto& d = f.delays[e];
                                                return Rational(d.a * Rational(static_cast<long long>(load)) + d.b);
                                              });
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Named parameters, tight instances

using ParamMap = std::map<std::string, Rational>;

namespace detail {

inline Rational require_param(const ParamMap& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(Errc::ParamOutOfRange, "missing parameter '" + key + "'");
  return it->second;
}

inline Rational param_or(const ParamMap& params, const std::string& key, Rational fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

inline std::size_t as_count(const Rational& q, const std::string& key) {
  param_check(is_integer(q) && q >= 0 && q <= 1'000'000, "parameter '" + key + "' must be a small non-negative integer");
  return static_cast<std::size_t>(numerator_of(q));
}

inline void allow_only(const ParamMap& params, std::initializer_list<std::string_view> keys) {
  for (const auto& [key, value] : params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw Error(Errc::ParamOutOfRange, "unknown parameter '" + key + "'");
    }
  }
}

}  // namespace detail

enum class TightFamily { CostSharingSingleton, CostSharingInteger, CongestionSingleton, CongestionInteger };

/// Instances on which the corresponding closed-form upper bound is attained.
///   CostSharingSingleton {c_max, c_min}: c_min > 0, c_max > 2 c_min
///   CostSharingInteger   {L, c_max}:     positive integers
///   CongestionSingleton  {delta, a}:     0 <= delta < 1, a > 0
///   CongestionInteger    {L, delta_max, delta_min}: positive integers with
///       (2n - 1) delta_min = L delta_max + 1 for an integer n >= 3
inline FamilySpec tight_instance(TightFamily family, const ParamMap& params) {
  using detail::as_count;
  using detail::param_check;
  using detail::require_param;
  switch (family) {
    case TightFamily::CostSharingSingleton: {
      detail::allow_only(params, {"c_max", "c_min"});
      const auto c_max = require_param(params, "c_max");
      const auto c_min = require_param(params, "c_min");
      param_check(c_min > 0 && c_max > 2 * c_min, "need c_min > 0 and c_max > 2 c_min");
      return CostSharing{{c_max, c_min}, {{{0}}, {{0}, {1}}}};
    }
    case TightFamily::CostSharingInteger: {
      detail::allow_only(params, {"L", "c_max"});
      const auto L = as_count(require_param(params, "L"), "L");
      const auto c_max = require_param(params, "c_max");
      param_check(L >= 1 && is_integer(c_max) && c_max >= 1, "need integers L >= 1 and c_max >= 1");
      const std::size_t n = L + 1;
      CostSharing cs;
      cs.costs.assign(n - 1, c_max);
      cs.costs.push_back(1);
      FacilitySet bundle;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        cs.strategies.push_back({{i}});
        bundle.push_back(i);
      }
      cs.strategies.push_back({bundle, {n - 1}});
      return cs;
    }
    case TightFamily::CongestionSingleton: {
      detail::allow_only(params, {"delta", "a"});
      const auto delta = require_param(params, "delta");
      const auto a = require_param(params, "a");
      param_check(delta >= 0 && delta < 1 && a > 0, "need 0 <= delta < 1 and a > 0");
      const std::vector<FacilitySet> both{{0}, {1}};
      return Congestion{{{0, (2 + delta) * a}, {a, 0}}, {both, both}};
    }
    case TightFamily::CongestionInteger: {
      detail::allow_only(params, {"L", "delta_max", "delta_min"});
      const auto L = as_count(require_param(params, "L"), "L");
      const auto dmax = require_param(params, "delta_max");
      const auto dmin = require_param(params, "delta_min");
      param_check(L >= 1 && is_integer(dmax) && is_integer(dmin) && dmin >= 1 && dmax >= dmin,
                  "need integers L >= 1 and delta_max >= delta_min >= 1");
      // (2n - 1) delta_min = L delta_max + 1
      const Rational lhs = Rational(static_cast<long long>(L)) * dmax + 1;
      const Rational two_n_minus_one = lhs / dmin;
      if (!is_integer(two_n_minus_one) || numerator_of(two_n_minus_one) % 2 == 0 || two_n_minus_one < 5) {
        throw Error(Errc::InfeasibleParams, "no integer n >= 3 with (2n-1) delta_min = L delta_max + 1");
      }
      const auto n = static_cast<std::size_t>((numerator_of(two_n_minus_one) + 1) / 2);
      Congestion cg;
      FacilitySet bundle;
      for (std::size_t e = 0; e < L; ++e) {
        cg.delays.push_back({0, dmax});
        bundle.push_back(e);
      }
      cg.delays.push_back({dmin, 0});
      for (std::size_t i = 0; i + 1 < n; ++i) cg.strategies.push_back({{L}});
      cg.strategies.push_back({bundle, {L}});
      return cg;
    }
  }
  throw Error(Errc::ParamOutOfRange, "unknown tight family");
}

/// Three-facility cost-sharing instance with costs c_max, c_min + eps and
/// c_min whose level is c_max / (2 eps) - 1, independent of c_max / c_min.
inline CostSharing epsilon_instance(const Rational& c_max, const Rational& c_min, const Rational& eps) {
  detail::param_check(c_min >= 0 && eps > 0 && c_max > 2 * eps, "need c_min >= 0, eps > 0, c_max > 2 eps");
  return CostSharing{{c_max, c_min + eps, c_min}, {{{0}}, {{0, 2}, {1}}}};
}

/// Builds a family from its command-line name and `key=value` parameters.
inline FamilySpec make_family(std::string_view name, const ParamMap& params) {
  using detail::allow_only;
  using detail::as_count;
  using detail::param_or;
  using detail::require_param;
  if (name == "pd_n" || name == "prisoners_dilemma") {
    allow_only(params, {"n"});
    return PrisonersDilemmaN{as_count(param_or(params, "n", 2), "n")};
  }
  if (name == "generalized_pd") {
    allow_only(params, {"alpha", "beta"});
    return GeneralizedPD{require_param(params, "alpha"), require_param(params, "beta")};
  }
  if (name == "public_goods") {
    allow_only(params, {"n", "b", "c", "k"});
    return PublicGoodsGrid{as_count(require_param(params, "n"), "n"), param_or(params, "b", 1),
                           require_param(params, "c"), as_count(param_or(params, "k", 1), "k")};
  }
  if (name == "travelers") {
    allow_only(params, {});
    return TravelersDilemma{};
  }
  if (name == "matching_pennies") {
    allow_only(params, {});
    return MatchingPennies{};
  }
  if (name == "battle_of_sexes") {
    allow_only(params, {});
    return BattleOfSexes{};
  }
  if (name == "bad_nash") {
    allow_only(params, {});
    return BadNash3x3{};
  }
  if (name == "no_nash") {
    allow_only(params, {});
    return NoNash2x2{};
  }
  if (name == "weakly_acyclic") {
    allow_only(params, {});
    return WeaklyAcyclic3x3{};
  }
  if (name == "f_level") {
    allow_only(params, {"n", "f"});
    return FLevelGame{as_count(require_param(params, "n"), "n"), require_param(params, "f")};
  }
  if (name == "cs_singleton_tight") return tight_instance(TightFamily::CostSharingSingleton, params);
  if (name == "cs_integer_tight") return tight_instance(TightFamily::CostSharingInteger, params);
  if (name == "congestion_singleton_tight") return tight_instance(TightFamily::CongestionSingleton, params);
  if (name == "congestion_integer_tight") return tight_instance(TightFamily::CongestionInteger, params);
  if (name == "cs_epsilon") {
    allow_only(params, {"c_max", "c_min", "eps"});
    return epsilon_instance(require_param(params, "c_max"), require_param(params, "c_min"),
                            require_param(params, "eps"));
  }
  throw Error(Errc::ParamOutOfRange, "unknown family '" + std::string(name) + "'");
}

}  // namespace selfish
