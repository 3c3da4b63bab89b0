#pragma once

#include <cstddef>
#include <string>

#include "selfish/error.hpp"
#include "selfish/game.hpp"
#include "selfish/rational.hpp"

namespace selfish {

// All transforms below are linear in (own value, social value), so the same
// formulas serve payoff games and cost games: for a cost game, altruistic()
// yields c_i + alpha * SC, the negation of the payoff-side transform of -c.

namespace detail {

inline void require_nonnegative_alpha(const Rational& alpha) {
  if (alpha < 0) throw Error(Errc::NegativeAlpha, "alpha = " + to_string(alpha));
}

}  // namespace detail

/// G(alpha): r_i(s) = p_i(s) + alpha * SW(s).
inline Game altruistic(const Game& g, const Rational& alpha) {
  detail::require_nonnegative_alpha(alpha);
  return g.map_values([&](auto cell, const Rational& sw, std::size_t i) { return Rational(cell[i] + alpha * sw); });
}

/// G + a.
inline Game shift(const Game& g, const Rational& a) {
  return g.map_values([&](auto cell, const Rational&, std::size_t i) { return Rational(cell[i] + a); });
}

/// a * G, a > 0.
inline Game scale(const Game& g, const Rational& a) {
  if (a <= 0) throw Error(Errc::NonPositiveScale, "scale factor " + to_string(a));
  return g.map_values([&](auto cell, const Rational&, std::size_t i) { return Rational(cell[i] * a); });
}

/// The game G' with G'(alpha) = G:
/// p'_i(s) = p_i(s) - alpha / (1 + n alpha) * SW(s).
inline Game inverse_altruistic(const Game& g, const Rational& alpha) {
  detail::require_nonnegative_alpha(alpha);
  const Rational n(static_cast<long long>(g.player_count()));
  const Rational weight = alpha / (1 + n * alpha);
  return g.map_values([&](auto cell, const Rational& sw, std::size_t i) { return Rational(cell[i] - weight * sw); });
}

/// Checks G(alpha + beta) == G(alpha)(beta / (1 + n alpha)) value for value.
inline bool compose_check(const Game& g, const Rational& alpha, const Rational& beta) {
  const Rational n(static_cast<long long>(g.player_count()));
  const Game direct = altruistic(g, alpha + beta);
  const Game staged = altruistic(altruistic(g, alpha), beta / (1 + n * alpha));
  return direct == staged;
}

enum class AltruismModel { A, B, C, D };

inline std::string to_string(AltruismModel m) {
  switch (m) {
    case AltruismModel::A: return "A";
    case AltruismModel::B: return "B";
    case AltruismModel::C: return "C";
    case AltruismModel::D: return "D";
  }
  return "?";
}

/// Altruism parameter of one of the four perceived-payoff models:
///   A: p_i + alpha SW                     (alpha >= 0)
///   B: (1 - beta) p_i + beta/n SW         (beta in [0, 1])
///   C: (1 - gamma) p_i + gamma SW         (gamma in [0, 1])
///   D: (1 - delta) p_i + delta (SW - p_i) (delta in [0, 1]; equivalent to A on [0, 1/2])
struct AltruismParam {
  AltruismModel model = AltruismModel::A;
  Rational value;
};

inline void check_range(const AltruismParam& p) {
  const bool ok = p.model == AltruismModel::A ? p.value >= 0 : (p.value >= 0 && p.value <= 1);
  if (!ok) {
    throw Error(Errc::ParamOutOfRange, "model " + to_string(p.model) + " parameter " + to_string(p.value));
  }
}

/// Maps a model-A parameter to the equivalent parameter of `target`
/// (beta = alpha n / (1 + alpha n), gamma = alpha / (1 + alpha),
/// delta = alpha / (1 + 2 alpha)). `players` is only read for model B.
inline AltruismParam convert_param(const Rational& alpha, AltruismModel target, std::size_t players) {
  if (alpha < 0) throw Error(Errc::ParamOutOfRange, "alpha = " + to_string(alpha));
  const Rational n(static_cast<long long>(players));
  switch (target) {
    case AltruismModel::A: return {target, alpha};
    case AltruismModel::B:
      if (players < 2) throw Error(Errc::ParamOutOfRange, "model B needs the player count");
      return {target, alpha * n / (1 + alpha * n)};
    case AltruismModel::C: return {target, alpha / (1 + alpha)};
    case AltruismModel::D: return {target, alpha / (1 + 2 * alpha)};
  }
  return {target, alpha};
}

inline Game altruistic_model(const Game& g, const AltruismParam& p) {
  check_range(p);
  const Rational n(static_cast<long long>(g.player_count()));
  const Rational& x = p.value;
  switch (p.model) {
    case AltruismModel::A: return altruistic(g, x);
    case AltruismModel::B:
      return g.map_values([&](auto cell, const Rational& sw, std::size_t i) {
        return Rational((1 - x) * cell[i] + x / n * sw);
      });
    case AltruismModel::C:
      return g.map_values([&](auto cell, const Rational& sw, std::size_t i) {
        return Rational((1 - x) * cell[i] + x * sw);
      });
    case AltruismModel::D:
      return g.map_values([&](auto cell, const Rational& sw, std::size_t i) {
        return Rational((1 - x) * cell[i] + x * (sw - cell[i]));
      });
  }
  return g;
}

}  // namespace selfish
