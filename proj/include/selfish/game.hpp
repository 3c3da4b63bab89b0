#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "selfish/error.hpp"
#include "selfish/rational.hpp"

namespace selfish {

enum class Orientation { PayoffMax, CostMin };

/// One strategy index per player.
using JointStrategy = std::vector<std::size_t>;

/// Upper bound on the number of joint strategies a dense game may hold.
inline constexpr std::size_t kDefaultCellCap = 10'000'000;

struct Player {
  std::string name;
  std::vector<std::string> strategies;

  bool operator==(const Player&) const = default;
};

/// Unchecked game data. `cells` is indexed by flat joint-strategy index in
/// lexicographic order (player 0 varies slowest); each cell holds one value
/// per player.
struct GameDescription {
  Orientation orientation = Orientation::PayoffMax;
  std::vector<Player> players;
  std::vector<std::vector<Rational>> cells;
};

/// Product of strategy counts, saturating at SIZE_MAX.
inline std::size_t profile_count(std::span<const std::size_t> counts) {
  std::size_t total = 1;
  for (auto c : counts) {
    if (c != 0 && total > std::numeric_limits<std::size_t>::max() / c) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= c;
  }
  return total;
}

/// Returns the first violated invariant, or nothing when the data is a
/// well-formed game.
inline std::optional<Error> validate(const GameDescription& d) {
  const std::size_t n = d.players.size();
  if (n < 2) {
    return Error(Errc::PlayerCountTooSmall, "a game needs at least 2 players, got " + std::to_string(n));
  }
  std::vector<std::size_t> counts;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& labels = d.players[i].strategies;
    if (labels.empty()) {
      return Error(Errc::EmptyStrategySet, "player " + std::to_string(i + 1) + " has no strategies");
    }
    std::set<std::string> seen;
    for (const auto& label : labels) {
      if (!seen.insert(label).second) {
        return Error(Errc::DuplicateLabel,
                     "player " + std::to_string(i + 1) + " repeats strategy '" + label + "'");
      }
    }
    counts.push_back(labels.size());
  }
  const std::size_t expected = profile_count(counts);
  if (d.cells.size() != expected) {
    return Error(Errc::DimensionMismatch, "expected " + std::to_string(expected) + " cells, got " +
                                              std::to_string(d.cells.size()));
  }
  for (std::size_t k = 0; k < d.cells.size(); ++k) {
    if (d.cells[k].size() != n) {
      return Error(Errc::DimensionMismatch, "cell " + std::to_string(k) + " holds " +
                                                std::to_string(d.cells[k].size()) + " values for " +
                                                std::to_string(n) + " players");
    }
  }
  return std::nullopt;
}

/// Odometer over joint strategies in lexicographic order. With
/// `nondecreasing` set it only visits profiles whose indices never decrease,
/// i.e. one representative per orbit of a symmetric game.
class ProfileRange {
 public:
  class iterator {
   public:
    using value_type = JointStrategy;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ProfileRange* range, bool done) : range_(range), done_(done) {
      if (!done_) current_.assign(range_->counts_.size(), 0);
    }

    const JointStrategy& operator*() const { return current_; }
    const JointStrategy* operator->() const { return &current_; }

    iterator& operator++() {
      advance();
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      advance();
      return copy;
    }

    bool operator==(const iterator& other) const {
      if (done_ || other.done_) return done_ == other.done_;
      return current_ == other.current_;
    }

   private:
    void advance() {
      const auto& counts = range_->counts_;
      for (std::size_t pos = counts.size(); pos-- > 0;) {
        if (current_[pos] + 1 < counts[pos]) {
          ++current_[pos];
          for (std::size_t k = pos + 1; k < counts.size(); ++k) {
            current_[k] = range_->nondecreasing_ ? current_[pos] : 0;
          }
          return;
        }
      }
      done_ = true;
    }

    const ProfileRange* range_ = nullptr;
    JointStrategy current_;
    bool done_ = true;
  };

  explicit ProfileRange(std::vector<std::size_t> counts, bool nondecreasing = false)
      : counts_(std::move(counts)), nondecreasing_(nondecreasing) {
    if (nondecreasing_ && !counts_.empty() &&
        !std::all_of(counts_.begin(), counts_.end(), [&](auto c) { return c == counts_.front(); })) {
      throw Error(Errc::DimensionMismatch, "orbit enumeration needs equal strategy counts");
    }
  }

  iterator begin() const {
    bool empty = counts_.empty() || std::any_of(counts_.begin(), counts_.end(), [](auto c) { return c == 0; });
    return iterator(this, empty);
  }
  iterator end() const { return iterator(this, true); }

 private:
  std::vector<std::size_t> counts_;
  bool nondecreasing_;
};

/// Finite normal-form game with an exact payoff (or cost) tensor. Immutable
/// once constructed; construction validates and throws the first violation.
class Game {
 public:
  explicit Game(GameDescription d) {
    if (auto err = validate(d)) throw *err;
    orientation_ = d.orientation;
    players_ = std::move(d.players);
    const std::size_t n = players_.size();
    strides_.assign(n, 1);
    for (std::size_t i = n - 1; i-- > 0;) strides_[i] = strides_[i + 1] * players_[i + 1].strategies.size();
    values_.reserve(d.cells.size() * n);
    welfare_.reserve(d.cells.size());
    for (auto& cell : d.cells) {
      Rational sum = 0;
      for (auto& v : cell) {
        sum += v;
        values_.push_back(std::move(v));
      }
      welfare_.push_back(std::move(sum));
    }
  }

  Orientation orientation() const { return orientation_; }
  std::size_t player_count() const { return players_.size(); }
  std::size_t strategy_count(std::size_t i) const { return player(i).strategies.size(); }
  std::vector<std::size_t> strategy_counts() const {
    std::vector<std::size_t> out;
    for (const auto& p : players_) out.push_back(p.strategies.size());
    return out;
  }
  const std::vector<Player>& players() const { return players_; }
  const Player& player(std::size_t i) const {
    if (i >= players_.size()) throw Error(Errc::IndexOutOfRange, "player " + std::to_string(i));
    return players_[i];
  }
  std::size_t cell_count() const { return welfare_.size(); }

  std::size_t flat_index(const JointStrategy& s) const {
    if (s.size() != players_.size()) {
      throw Error(Errc::IndexOutOfRange, "joint strategy has " + std::to_string(s.size()) + " entries");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= players_[i].strategies.size()) {
        throw Error(Errc::IndexOutOfRange,
                    "strategy " + std::to_string(s[i]) + " of player " + std::to_string(i + 1));
      }
      flat += s[i] * strides_[i];
    }
    return flat;
  }

  JointStrategy profile_at(std::size_t flat) const {
    JointStrategy s(players_.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = flat / strides_[i];
      flat %= strides_[i];
    }
    return s;
  }

  /// p_i(s) for payoff games, c_i(s) for cost games; no sign change.
  const Rational& payoff(const JointStrategy& s, std::size_t i) const {
    const auto flat = flat_index(s);
    if (i >= players_.size()) throw Error(Errc::IndexOutOfRange, "player " + std::to_string(i));
    return values_[flat * players_.size() + i];
  }

  std::span<const Rational> values_at(std::size_t flat) const {
    return {values_.data() + flat * players_.size(), players_.size()};
  }
  std::span<const Rational> values(const JointStrategy& s) const { return values_at(flat_index(s)); }

  /// Sum of all players' values: social welfare or social cost.
  const Rational& social_value(const JointStrategy& s) const { return welfare_[flat_index(s)]; }
  const Rational& social_value_at(std::size_t flat) const { return welfare_[flat]; }

  ProfileRange profiles() const { return ProfileRange(strategy_counts()); }

  /// Same shape, labels and orientation; every value replaced by
  /// `f(cell_values, social_value, player)`.
  template <class F>
  Game map_values(F&& f) const {
    GameDescription d{orientation_, players_, {}};
    d.cells.reserve(cell_count());
    for (std::size_t k = 0; k < cell_count(); ++k) {
      auto cell = values_at(k);
      std::vector<Rational> next;
      next.reserve(cell.size());
      for (std::size_t i = 0; i < cell.size(); ++i) next.push_back(f(cell, welfare_[k], i));
      d.cells.push_back(std::move(next));
    }
    return Game(std::move(d));
  }

  GameDescription description() const {
    GameDescription d{orientation_, players_, {}};
    d.cells.reserve(cell_count());
    for (std::size_t k = 0; k < cell_count(); ++k) {
      auto cell = values_at(k);
      d.cells.emplace_back(cell.begin(), cell.end());
    }
    return d;
  }

  bool operator==(const Game& other) const {
    return orientation_ == other.orientation_ && players_ == other.players_ && values_ == other.values_;
  }

 private:
  Orientation orientation_ = Orientation::PayoffMax;
  std::vector<Player> players_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> values_;
  std::vector<Rational> welfare_;
};

inline ProfileRange joint_strategies(const Game& g) { return g.profiles(); }

inline const Rational& payoff(const Game& g, const JointStrategy& s, std::size_t i) { return g.payoff(s, i); }

inline const Rational& social_value(const Game& g, const JointStrategy& s) { return g.social_value(s); }

/// Anything the analysis algorithms can query: orientation, shape, and the
/// per-player value of a joint strategy.
template <class G>
concept NormalFormGame = requires(const G& g, const JointStrategy& s, std::size_t i) {
  { g.orientation() } -> std::same_as<Orientation>;
  { g.player_count() } -> std::convertible_to<std::size_t>;
  { g.strategy_count(i) } -> std::convertible_to<std::size_t>;
  { g.strategy_counts() } -> std::convertible_to<std::vector<std::size_t>>;
  { g.payoff(s, i) } -> std::convertible_to<Rational>;
  { g.social_value(s) } -> std::convertible_to<Rational>;
  { g.players() } -> std::convertible_to<std::vector<Player>>;
};

/// A game whose values are computed on demand. Used for families too large
/// to tabulate; `symmetric()` is the generator's promise that permuting
/// players permutes payoffs.
class ImplicitGame {
 public:
  using PayoffFn = std::function<Rational(const JointStrategy&, std::size_t)>;

  ImplicitGame(Orientation orientation, std::vector<Player> players, PayoffFn fn, bool symmetric)
      : orientation_(orientation), players_(std::move(players)), fn_(std::move(fn)), symmetric_(symmetric) {
    if (players_.size() < 2) throw Error(Errc::PlayerCountTooSmall, "a game needs at least 2 players");
    for (const auto& p : players_) {
      if (p.strategies.empty()) throw Error(Errc::EmptyStrategySet, "player '" + p.name + "'");
    }
  }

  Orientation orientation() const { return orientation_; }
  std::size_t player_count() const { return players_.size(); }
  std::size_t strategy_count(std::size_t i) const { return players_.at(i).strategies.size(); }
  std::vector<std::size_t> strategy_counts() const {
    std::vector<std::size_t> out;
    for (const auto& p : players_) out.push_back(p.strategies.size());
    return out;
  }
  const std::vector<Player>& players() const { return players_; }
  bool symmetric() const { return symmetric_; }
  std::size_t cell_count() const { return profile_count(strategy_counts()); }

  Rational payoff(const JointStrategy& s, std::size_t i) const { return fn_(s, i); }
  Rational social_value(const JointStrategy& s) const {
    Rational sum = 0;
    for (std::size_t i = 0; i < players_.size(); ++i) sum += fn_(s, i);
    return sum;
  }

  ProfileRange profiles() const { return ProfileRange(strategy_counts()); }

 private:
  Orientation orientation_;
  std::vector<Player> players_;
  PayoffFn fn_;
  bool symmetric_;
};

/// Tabulates an implicit game; throws ExplosionGuard when it has more than
/// `cap` joint strategies.
inline Game materialize(const ImplicitGame& g, std::size_t cap = kDefaultCellCap) {
  const auto cells = g.cell_count();
  if (cells > cap) {
    throw Error(Errc::ExplosionGuard,
                std::to_string(cells) + " joint strategies exceed the cap of " + std::to_string(cap));
  }
  GameDescription d{g.orientation(), g.players(), {}};
  d.cells.reserve(cells);
  for (const auto& s : g.profiles()) {
    std::vector<Rational> cell;
    cell.reserve(g.player_count());
    for (std::size_t i = 0; i < g.player_count(); ++i) cell.push_back(g.payoff(s, i));
    d.cells.push_back(std::move(cell));
  }
  return Game(std::move(d));
}

/// Brute-force check of the symmetric-game condition
/// p_i(s_1..s_n) = p_{pi(i)}(s_{pi(1)}..s_{pi(n)}) over adjacent transpositions,
/// which generate every permutation.
inline bool is_symmetric(const Game& g) {
  const auto n = g.player_count();
  for (std::size_t i = 1; i < n; ++i) {
    if (g.players()[i].strategies != g.players()[0].strategies) return false;
  }
  for (const auto& s : g.profiles()) {
    for (std::size_t k = 0; k + 1 < n; ++k) {
      JointStrategy t = s;
      std::swap(t[k], t[k + 1]);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i == k ? k + 1 : i == k + 1 ? k : i;
        if (g.payoff(s, i) != g.payoff(t, j)) return false;
      }
    }
  }
  return true;
}

}  // namespace selfish
