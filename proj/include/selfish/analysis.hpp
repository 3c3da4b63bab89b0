#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selfish/error.hpp"
#include "selfish/game.hpp"
#include "selfish/rational.hpp"
#include "selfish/transforms.hpp"

namespace selfish {

/// How the analysis walks joint strategies. `SymmetricOrbits` visits only
/// profiles with non-decreasing indices (one per orbit under player
/// permutation); it is exact only for symmetric games and then returns orbit
/// representatives instead of full lists.
enum class Scan { Full, SymmetricOrbits };

/// A unilateral deviation of `player` from `from` to `to_strategy`, with all
/// quantities in the game's native orientation (for cost games the gain is a
/// cost decrease and the welfare drop a social-cost increase).
struct DeviationRecord {
  std::size_t player = 0;
  JointStrategy from;
  std::size_t to_strategy = 0;
  Rational payoff_gain;
  Rational welfare_drop;
  Rational appeal_factor;

  bool operator==(const DeviationRecord&) const = default;
};

struct UpperContourSet {
  std::size_t player = 0;
  JointStrategy base;
  std::vector<std::size_t> strategies;
};

/// alpha(s) of a stable social optimum: the largest appeal factor over all
/// improving deviations, or zero when nobody can improve.
struct OptimumAlpha {
  std::optional<DeviationRecord> argmax;

  bool is_zero() const { return !argmax.has_value(); }
  Rational value() const { return argmax ? argmax->appeal_factor : Rational(0); }
};

enum class LevelKind { Zero, Finite, Infinite };
enum class InfiniteReason { NoStableSocialOptimum };

/// Selfishness level of a finite game. For finite games the minimum over
/// stable social optima is attained, so the level is never of the
/// "infimum not attained" kind.
struct LevelResult {
  LevelKind kind = LevelKind::Infinite;
  std::optional<Rational> value;                 // Finite only
  std::optional<JointStrategy> witness_optimum;  // Zero and Finite
  std::optional<DeviationRecord> witness_deviation;  // Finite only
  std::optional<InfiniteReason> infinite_reason;     // Infinite only

  bool is_finite() const { return kind != LevelKind::Infinite; }
  Rational level() const {
    if (kind == LevelKind::Infinite) throw Error(Errc::ParamOutOfRange, "level is infinite");
    return kind == LevelKind::Zero ? Rational(0) : *value;
  }
};

/// "0", "p/q" or "inf".
inline std::string to_string(const LevelResult& r) {
  return r.is_finite() ? to_string(r.level()) : std::string("inf");
}

namespace detail {

/// Payoff for maximization games, negated cost for minimization games.
template <NormalFormGame G>
Rational utility(const G& g, const JointStrategy& s, std::size_t i) {
  Rational v = g.payoff(s, i);
  return g.orientation() == Orientation::CostMin ? Rational(-v) : v;
}

template <NormalFormGame G>
Rational welfare(const G& g, const JointStrategy& s) {
  Rational v = g.social_value(s);
  return g.orientation() == Orientation::CostMin ? Rational(-v) : v;
}

template <NormalFormGame G>
ProfileRange scan_range(const G& g, Scan scan) {
  return ProfileRange(g.strategy_counts(), scan == Scan::SymmetricOrbits);
}

template <NormalFormGame G>
bool is_nash(const G& g, const JointStrategy& s) {
  JointStrategy t = s;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const Rational base = utility(g, s, i);
    for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
      if (k == s[i]) continue;
      t[i] = k;
      if (utility(g, t, i) > base) return false;
    }
    t[i] = s[i];
  }
  return true;
}

/// Best welfare and the profiles attaining it, in one pass.
template <NormalFormGame G>
std::pair<Rational, std::vector<JointStrategy>> optima(const G& g, Scan scan) {
  std::optional<Rational> best;
  std::vector<JointStrategy> argmax;
  for (const auto& s : scan_range(g, scan)) {
    Rational w = welfare(g, s);
    if (!best || w > *best) {
      best = std::move(w);
      argmax.clear();
      argmax.push_back(s);
    } else if (w == *best) {
      argmax.push_back(s);
    }
  }
  return {*best, std::move(argmax)};
}

template <NormalFormGame G>
bool is_stable(const G& g, const JointStrategy& s, const Rational& best) {
  JointStrategy t = s;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const Rational base = utility(g, s, i);
    for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
      if (k == s[i]) continue;
      t[i] = k;
      if (welfare(g, t) == best && utility(g, t, i) > base) return false;
    }
    t[i] = s[i];
  }
  return true;
}

template <NormalFormGame G>
void check_profile(const G& g, const JointStrategy& s) {
  if (s.size() != g.player_count()) throw Error(Errc::IndexOutOfRange, "joint strategy arity");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.strategy_count(i)) throw Error(Errc::IndexOutOfRange, "strategy index");
  }
}

template <NormalFormGame G>
void require_stable_optimum(const G& g, const JointStrategy& s) {
  check_profile(g, s);
  const auto [best, ignored] = optima(g, Scan::Full);
  if (welfare(g, s) != best || !is_stable(g, s, best)) {
    throw Error(Errc::NotStableOptimum, "joint strategy is not a stable social optimum");
  }
}

/// Deviation record without precondition checks; `s` must be a stable
/// social optimum and `k` in U_i(s).
template <NormalFormGame G>
DeviationRecord deviation(const G& g, const JointStrategy& s, std::size_t i, std::size_t k) {
  JointStrategy t = s;
  t[i] = k;
  DeviationRecord r;
  r.player = i;
  r.from = s;
  r.to_strategy = k;
  r.payoff_gain = utility(g, t, i) - utility(g, s, i);
  r.welfare_drop = welfare(g, s) - welfare(g, t);
  r.appeal_factor = r.payoff_gain / r.welfare_drop;
  return r;
}

template <NormalFormGame G>
OptimumAlpha alpha_unchecked(const G& g, const JointStrategy& s) {
  OptimumAlpha out;
  JointStrategy t = s;
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    const Rational base = utility(g, s, i);
    for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
      if (k == s[i]) continue;
      t[i] = k;
      if (utility(g, t, i) <= base) continue;
      auto rec = deviation(g, s, i, k);
      if (!out.argmax || rec.appeal_factor > out.argmax->appeal_factor) out.argmax = std::move(rec);
    }
    t[i] = s[i];
  }
  return out;
}

}  // namespace detail

/// All pure Nash equilibria in lexicographic order.
template <NormalFormGame G>
std::vector<JointStrategy> pure_nash(const G& g, Scan scan = Scan::Full) {
  std::vector<JointStrategy> out;
  for (const auto& s : detail::scan_range(g, scan)) {
    if (detail::is_nash(g, s)) out.push_back(s);
  }
  return out;
}

/// All welfare-maximizing (cost-minimizing) profiles, exact ties included.
template <NormalFormGame G>
std::vector<JointStrategy> social_optima(const G& g, Scan scan = Scan::Full) {
  return detail::optima(g, scan).second;
}

/// Social optima from which no player gains by moving unilaterally to
/// another social optimum.
template <NormalFormGame G>
std::vector<JointStrategy> stable_social_optima(const G& g, Scan scan = Scan::Full) {
  auto [best, optima] = detail::optima(g, scan);
  std::vector<JointStrategy> out;
  for (auto& s : optima) {
    if (detail::is_stable(g, s, best)) out.push_back(std::move(s));
  }
  return out;
}

/// U_i(s): player i's strictly improving unilateral deviations at s.
template <NormalFormGame G>
UpperContourSet upper_contour(const G& g, const JointStrategy& s, std::size_t i) {
  detail::check_profile(g, s);
  if (i >= g.player_count()) throw Error(Errc::IndexOutOfRange, "player index");
  UpperContourSet out{i, s, {}};
  const Rational base = detail::utility(g, s, i);
  JointStrategy t = s;
  for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
    if (k == s[i]) continue;
    t[i] = k;
    if (detail::utility(g, t, i) > base) out.strategies.push_back(k);
  }
  return out;
}

/// AF_i(s', s) = gain of player i / resulting welfare drop.
template <NormalFormGame G>
DeviationRecord appeal_factor(const G& g, const JointStrategy& s, std::size_t i, std::size_t s_prime) {
  detail::require_stable_optimum(g, s);
  if (i >= g.player_count() || s_prime >= g.strategy_count(i)) {
    throw Error(Errc::IndexOutOfRange, "deviation index");
  }
  JointStrategy t = s;
  t[i] = s_prime;
  if (detail::utility(g, t, i) <= detail::utility(g, s, i)) {
    throw Error(Errc::NotImproving, "strategy " + std::to_string(s_prime) + " does not improve player " +
                                        std::to_string(i + 1));
  }
  return detail::deviation(g, s, i, s_prime);
}

/// alpha(s) = max appeal factor over all improving deviations at a stable
/// social optimum; the argmax is the lexicographically first (player,
/// strategy) pair attaining it.
template <NormalFormGame G>
OptimumAlpha alpha_of_optimum(const G& g, const JointStrategy& s) {
  detail::require_stable_optimum(g, s);
  return detail::alpha_unchecked(g, s);
}

/// min over stable social optima of alpha(s), or Infinite when there is no
/// stable social optimum. Ties resolve to the lexicographically first
/// optimum.
template <NormalFormGame G>
LevelResult selfishness_level(const G& g, Scan scan = Scan::Full) {
  const auto stable = stable_social_optima(g, scan);
  LevelResult r;
  if (stable.empty()) {
    r.kind = LevelKind::Infinite;
    r.infinite_reason = InfiniteReason::NoStableSocialOptimum;
    return r;
  }
  std::optional<OptimumAlpha> best;
  const JointStrategy* best_s = nullptr;
  for (const auto& s : stable) {
    auto a = detail::alpha_unchecked(g, s);
    if (!best || a.value() < best->value()) {
      best = std::move(a);
      best_s = &s;
    }
    if (best->is_zero()) break;
  }
  r.witness_optimum = *best_s;
  if (best->is_zero()) {
    r.kind = LevelKind::Zero;
  } else {
    r.kind = LevelKind::Finite;
    r.value = best->value();
    r.witness_deviation = best->argmax;
  }
  return r;
}

/// True iff some social optimum of G is a pure Nash equilibrium of G(alpha).
/// Checks the altruistic payoffs directly, without appeal factors.
template <NormalFormGame G>
bool is_alpha_selfish(const G& g, const Rational& alpha) {
  if (alpha < 0) throw Error(Errc::NegativeAlpha, "alpha = " + to_string(alpha));
  const auto optima = social_optima(g);
  for (const auto& s : optima) {
    const Rational sw = detail::welfare(g, s);
    bool nash = true;
    JointStrategy t = s;
    for (std::size_t i = 0; i < g.player_count() && nash; ++i) {
      const Rational base = detail::utility(g, s, i) + alpha * sw;
      for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
        if (k == s[i]) continue;
        t[i] = k;
        if (detail::utility(g, t, i) + alpha * detail::welfare(g, t) > base) {
          nash = false;
          break;
        }
      }
      t[i] = s[i];
    }
    if (nash) return true;
  }
  return false;
}

namespace detail {

enum class EquilibriumPick { Best, Worst };

/// Efficiency ratio >= 1 against the best or worst pure equilibrium;
/// undefined without equilibria or with a non-positive denominator.
template <NormalFormGame G>
std::optional<Rational> efficiency_ratio(const G& g, EquilibriumPick pick) {
  const auto nash = pure_nash(g);
  if (nash.empty()) return std::nullopt;
  const bool cost = g.orientation() == Orientation::CostMin;
  // In welfare terms (negated cost for cost games) the best equilibrium is
  // the one with the highest welfare.
  std::optional<Rational> chosen;
  for (const auto& s : nash) {
    Rational w = welfare(g, s);
    if (!chosen || (pick == EquilibriumPick::Best ? w > *chosen : w < *chosen)) chosen = std::move(w);
  }
  const Rational optimum = optima(g, Scan::Full).first;
  if (!cost) {
    if (*chosen <= 0) return std::nullopt;
    return Rational(optimum / *chosen);
  }
  const Rational optimum_cost = -optimum;
  if (optimum_cost <= 0) return std::nullopt;
  return Rational(-*chosen / optimum_cost);
}

}  // namespace detail

/// SW(SO)/SW(best NE) for payoff games, SC(best NE)/SC(SO) for cost games.
template <NormalFormGame G>
std::optional<Rational> price_of_stability(const G& g) {
  return detail::efficiency_ratio(g, detail::EquilibriumPick::Best);
}

/// As price_of_stability against the worst pure equilibrium.
template <NormalFormGame G>
std::optional<Rational> price_of_anarchy(const G& g) {
  return detail::efficiency_ratio(g, detail::EquilibriumPick::Worst);
}

/// f_G(alpha) = price of stability of G(alpha), for each alpha in order.
inline std::vector<std::pair<Rational, std::optional<Rational>>> selfishness_function(
    const Game& g, const std::vector<Rational>& alphas) {
  std::vector<std::pair<Rational, std::optional<Rational>>> out;
  out.reserve(alphas.size());
  for (const auto& a : alphas) out.emplace_back(a, price_of_stability(altruistic(g, a)));
  return out;
}

}  // namespace selfish
