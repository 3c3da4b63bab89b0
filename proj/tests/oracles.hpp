#pragma once

// Reference implementations used only by the tests. They read the payoff
// table directly and share no code with the analysis module beyond the
// Game container and the altruistic transform.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "selfish/game.hpp"
#include "selfish/rational.hpp"
#include "selfish/transforms.hpp"

namespace oracle {

using selfish::Game;
using selfish::JointStrategy;
using selfish::Orientation;
using selfish::Rational;

/// +1 for payoff games, -1 for cost games: multiply to get "higher is better".
inline int sign(const Game& g) { return g.orientation() == Orientation::PayoffMax ? 1 : -1; }

inline std::vector<JointStrategy> all_profiles(const Game& g) {
  std::vector<JointStrategy> out;
  for (std::size_t k = 0; k < g.cell_count(); ++k) out.push_back(g.profile_at(k));
  return out;
}

inline bool is_nash(const Game& g, const JointStrategy& s) {
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
      JointStrategy t = s;
      t[i] = k;
      if (sign(g) * g.payoff(t, i) > sign(g) * g.payoff(s, i)) return false;
    }
  }
  return true;
}

inline std::vector<JointStrategy> nash(const Game& g) {
  std::vector<JointStrategy> out;
  for (const auto& s : all_profiles(g)) {
    if (is_nash(g, s)) out.push_back(s);
  }
  return out;
}

inline std::vector<JointStrategy> social_optima(const Game& g) {
  const auto profiles = all_profiles(g);
  Rational best = sign(g) * g.social_value(profiles.front());
  for (const auto& s : profiles) best = std::max(best, Rational(sign(g) * g.social_value(s)));
  std::vector<JointStrategy> out;
  for (const auto& s : profiles) {
    if (sign(g) * g.social_value(s) == best) out.push_back(s);
  }
  return out;
}

/// Definition check: some social optimum of G is a Nash equilibrium of G(alpha).
inline bool alpha_selfish(const Game& g, const Rational& alpha) {
  const Game ga = selfish::altruistic(g, alpha);
  for (const auto& s : social_optima(g)) {
    if (is_nash(ga, s)) return true;
  }
  return false;
}

/// Every positive ratio gain / welfare-drop over all unilateral moves. The
/// selfishness level, when finite and positive, is one of them.
inline std::vector<Rational> candidate_alphas(const Game& g) {
  std::set<Rational> out{Rational(0)};
  for (const auto& s : all_profiles(g)) {
    for (std::size_t i = 0; i < g.player_count(); ++i) {
      for (std::size_t k = 0; k < g.strategy_count(i); ++k) {
        JointStrategy t = s;
        t[i] = k;
        const Rational gain = sign(g) * (g.payoff(t, i) - g.payoff(s, i));
        const Rational drop = sign(g) * (g.social_value(s) - g.social_value(t));
        if (gain > 0 && drop > 0) out.insert(gain / drop);
      }
    }
  }
  return {out.begin(), out.end()};
}

/// Least candidate alpha with alpha_selfish, by binary search (selfishness is
/// monotone in alpha); nothing when even the largest candidate fails.
inline std::optional<Rational> level_by_search(const Game& g) {
  const auto cands = candidate_alphas(g);
  if (!alpha_selfish(g, cands.back())) return std::nullopt;
  std::size_t lo = 0, hi = cands.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (alpha_selfish(g, cands[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return cands[lo];
}

/// Small random games: 2 or 3 players, 1 to 3 strategies each, values p/q
/// with |p| <= 4 and q in {1, 2, 3}. Coarse values make ties common.
class RandomGames {
 public:
  explicit RandomGames(std::uint64_t seed) : rng_(seed) {}

  Game next(bool allow_cost = true) {
    const std::size_t n = pick(2, 3);
    selfish::GameDescription d;
    d.orientation = allow_cost && pick(0, 3) == 0 ? Orientation::CostMin : Orientation::PayoffMax;
    std::size_t cells = 1;
    for (std::size_t i = 0; i < n; ++i) {
      selfish::Player p{"p" + std::to_string(i + 1), {}};
      const std::size_t m = pick(n == 3 ? 1 : 2, 3);
      for (std::size_t k = 0; k < m; ++k) p.strategies.push_back("s" + std::to_string(k));
      cells *= m;
      d.players.push_back(std::move(p));
    }
    for (std::size_t c = 0; c < cells; ++c) {
      std::vector<Rational> cell;
      for (std::size_t i = 0; i < n; ++i) cell.push_back(value());
      d.cells.push_back(std::move(cell));
    }
    return Game(std::move(d));
  }

  Rational value() {
    const long long num = static_cast<long long>(pick(0, 8)) - 4;
    const long long den = static_cast<long long>(pick(1, 3));
    return selfish::make_rational(num, den);
  }

  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
