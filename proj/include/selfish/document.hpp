#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "selfish/analysis.hpp"
#include "selfish/closedform.hpp"
#include "selfish/dynamics.hpp"
#include "selfish/error.hpp"
#include "selfish/families.hpp"
#include "selfish/game.hpp"
#include "selfish/rational.hpp"

// Game documents and reports are JSON. A game document looks like
//
//   { "orientation": "payoff",
//     "players": [ {"name": "1", "strategies": ["C", "D"]}, ... ],
//     "payoffs": [[["2","2"], ["0","3"]], [["3","0"], ["1","1"]]] }
//
// with `payoffs` either dense (one nesting level per player, innermost the
// n values) or sparse: [ {"profile": ["C","D"], "values": ["0","3"]}, ... ].
// Values are JSON integers or strings "p", "p/q" or decimals; they are always
// written back as lowest-terms strings.

namespace selfish {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void syntax_error(const std::string& what) { throw Error(Errc::SyntaxError, what); }

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) syntax_error(where + " must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) syntax_error(where + " lacks \"" + key + "\"");
  return *it;
}

}  // namespace detail

/// Parses JSON text, reporting malformed input as SyntaxError at line:column.
inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    const auto [line, column] = detail::line_column(text, offset);
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(Errc::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
  }
}

inline Json rational_to_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Rational(Integer(j.get<std::uint64_t>())) : Rational(Integer(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) detail::syntax_error("non-integer numbers must be quoted, e.g. \"1/2\" or \"0.5\"");
  detail::syntax_error("expected a rational, got " + j.dump());
}

inline Json optional_rational(const std::optional<Rational>& q) { return q ? rational_to_json(*q) : Json(nullptr); }

// ---------------------------------------------------------------------------
// Games

inline std::vector<std::string> profile_labels(const std::vector<Player>& players, const JointStrategy& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back(players[i].strategies[s[i]]);
  return out;
}

inline Json profile_list(const std::vector<Player>& players, const std::vector<JointStrategy>& profiles) {
  Json out = Json::array();
  for (const auto& s : profiles) out.push_back(profile_labels(players, s));
  return out;
}

inline Json game_to_json(const Game& g) {
  Json doc;
  doc["orientation"] = g.orientation() == Orientation::PayoffMax ? "payoff" : "cost";
  Json players = Json::array();
  for (const auto& p : g.players()) players.push_back({{"name", p.name}, {"strategies", p.strategies}});
  doc["players"] = std::move(players);

  // Dense nesting: build from the innermost player outwards.
  std::vector<Json> level;
  level.reserve(g.cell_count());
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    Json cell = Json::array();
    for (const auto& v : g.values_at(k)) cell.push_back(rational_to_json(v));
    level.push_back(std::move(cell));
  }
  for (std::size_t i = g.player_count(); i-- > 0;) {
    const std::size_t width = g.strategy_count(i);
    std::vector<Json> next;
    next.reserve(level.size() / width);
    for (std::size_t k = 0; k < level.size(); k += width) {
      Json group = Json::array();
      for (std::size_t j = 0; j < width; ++j) group.push_back(std::move(level[k + j]));
      next.push_back(std::move(group));
    }
    level = std::move(next);
  }
  doc["payoffs"] = std::move(level.front());
  return doc;
}

inline std::string render_game(const Game& g) { return game_to_json(g).dump(2) + "\n"; }

namespace detail {

inline void read_dense(const Json& node, const std::vector<Player>& players, std::size_t depth,
                       std::vector<std::vector<Rational>>& cells) {
  if (depth == players.size()) {
    if (!node.is_array()) syntax_error("payoff cell must be an array of values");
    std::vector<Rational> cell;
    for (const auto& v : node) cell.push_back(rational_from_json(v));
    cells.push_back(std::move(cell));
    return;
  }
  if (!node.is_array()) syntax_error("dense payoffs must nest one array per player");
  if (node.size() != players[depth].strategies.size()) {
    throw Error(Errc::DimensionMismatch, "payoffs at depth " + std::to_string(depth + 1) + " have " +
                                             std::to_string(node.size()) + " entries for " +
                                             std::to_string(players[depth].strategies.size()) + " strategies");
  }
  for (const auto& child : node) read_dense(child, players, depth + 1, cells);
}

inline std::string join_labels(const std::vector<std::string>& labels) {
  std::string out = "(";
  for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? "," : "") + labels[k];
  return out + ")";
}

inline std::vector<std::vector<Rational>> read_sparse(const Json& entries, const std::vector<Player>& players) {
  std::vector<std::size_t> counts;
  std::vector<std::map<std::string, std::size_t>> index(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    counts.push_back(players[i].strategies.size());
    for (std::size_t k = 0; k < players[i].strategies.size(); ++k) index[i].emplace(players[i].strategies[k], k);
  }
  const auto total = profile_count(counts);
  std::vector<std::optional<std::vector<Rational>>> cells(total);

  // Flat index of a label tuple; same layout as Game.
  auto flat_of = [&](const Json& profile) {
    if (!profile.is_array() || profile.size() != players.size()) {
      syntax_error("profile must list one strategy label per player");
    }
    std::size_t flat = 0;
    for (std::size_t i = 0; i < players.size(); ++i) {
      if (!profile[i].is_string()) syntax_error("profile entries must be strategy labels");
      auto it = index[i].find(profile[i].get<std::string>());
      if (it == index[i].end()) {
        syntax_error("player " + players[i].name + " has no strategy '" + profile[i].get<std::string>() + "'");
      }
      flat = flat * counts[i] + it->second;
    }
    return flat;
  };

  for (const auto& entry : entries) {
    const auto& profile = member(entry, "profile", "sparse payoff entry");
    const auto& values = member(entry, "values", "sparse payoff entry");
    const auto flat = flat_of(profile);
    if (cells[flat]) {
      throw Error(Errc::DuplicateProfile, join_labels(profile.get<std::vector<std::string>>()) + " listed twice");
    }
    if (!values.is_array()) syntax_error("\"values\" must be an array");
    std::vector<Rational> cell;
    for (const auto& v : values) cell.push_back(rational_from_json(v));
    cells[flat] = std::move(cell);
  }

  std::vector<std::vector<Rational>> out;
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    if (!cells[flat]) {
      JointStrategy s(players.size());
      std::size_t rest = flat;
      for (std::size_t i = players.size(); i-- > 0;) {
        s[i] = rest % counts[i];
        rest /= counts[i];
      }
      throw Error(Errc::MissingProfile, join_labels(profile_labels(players, s)) + " has no payoffs");
    }
    out.push_back(std::move(*cells[flat]));
  }
  return out;
}

}  // namespace detail

inline Game game_from_json(const Json& doc) {
  using detail::member;
  using detail::syntax_error;
  GameDescription d;
  const auto& orientation = member(doc, "orientation", "game document");
  if (orientation == "payoff") {
    d.orientation = Orientation::PayoffMax;
  } else if (orientation == "cost") {
    d.orientation = Orientation::CostMin;
  } else {
    syntax_error("orientation must be \"payoff\" or \"cost\"");
  }

  const auto& players = member(doc, "players", "game document");
  if (!players.is_array()) syntax_error("\"players\" must be an array");
  for (const auto& p : players) {
    Player player;
    const auto& name = member(p, "name", "player");
    if (!name.is_string()) syntax_error("player name must be a string");
    player.name = name.get<std::string>();
    const auto& strategies = member(p, "strategies", "player");
    if (!strategies.is_array()) syntax_error("\"strategies\" must be an array");
    for (const auto& label : strategies) {
      if (!label.is_string()) syntax_error("strategy labels must be strings");
      player.strategies.push_back(label.get<std::string>());
    }
    d.players.push_back(std::move(player));
  }
  // Structural checks first so the payoff readers can rely on the shape.
  {
    GameDescription shape{d.orientation, d.players, {}};
    if (auto err = validate(shape); err && err->code() != Errc::DimensionMismatch) throw *err;
  }

  const auto& payoffs = member(doc, "payoffs", "game document");
  if (!payoffs.is_array()) syntax_error("\"payoffs\" must be an array");
  const bool sparse = payoffs.empty() || payoffs.front().is_object();
  if (sparse) {
    d.cells = detail::read_sparse(payoffs, d.players);
  } else {
    detail::read_dense(payoffs, d.players, 0, d.cells);
  }
  return Game(std::move(d));
}

inline Game parse_game(std::string_view text) { return game_from_json(parse_json(text)); }

// ---------------------------------------------------------------------------
// Compact facility games:
//   {"kind": "cost_sharing", "costs": ["4", "1"], "strategies": [[[1]], [[1], [2]]]}
//   {"kind": "congestion", "delays": [{"a": "1", "b": "0"}], "strategies": ...}
// Facilities are numbered from 1 in documents.

namespace detail {

inline std::vector<std::vector<FacilitySet>> read_facility_strategies(const Json& j) {
  if (!j.is_array()) syntax_error("\"strategies\" must be an array per player");
  std::vector<std::vector<FacilitySet>> out;
  for (const auto& player : j) {
    if (!player.is_array()) syntax_error("each player's strategies must be an array of facility lists");
    std::vector<FacilitySet> sets;
    for (const auto& set : player) {
      if (!set.is_array()) syntax_error("a strategy must be an array of facility numbers");
      FacilitySet fs;
      for (const auto& e : set) {
        if (!e.is_number_unsigned() || e.get<std::size_t>() == 0) syntax_error("facilities are numbered from 1");
        fs.push_back(e.get<std::size_t>() - 1);
      }
      std::sort(fs.begin(), fs.end());
      sets.push_back(std::move(fs));
    }
    out.push_back(std::move(sets));
  }
  return out;
}

inline Json write_facility_strategies(const std::vector<std::vector<FacilitySet>>& strategies) {
  Json out = Json::array();
  for (const auto& player : strategies) {
    Json sets = Json::array();
    for (const auto& set : player) {
      Json fs = Json::array();
      for (auto e : set) fs.push_back(e + 1);
      sets.push_back(std::move(fs));
    }
    out.push_back(std::move(sets));
  }
  return out;
}

}  // namespace detail

inline FamilySpec facility_game_from_json(const Json& doc) {
  using detail::member;
  const auto& kind = member(doc, "kind", "facility game");
  if (kind == "cost_sharing") {
    CostSharing cs;
    for (const auto& c : member(doc, "costs", "cost sharing game")) cs.costs.push_back(rational_from_json(c));
    cs.strategies = detail::read_facility_strategies(member(doc, "strategies", "cost sharing game"));
    validate_family(cs);
    return cs;
  }
  if (kind == "congestion") {
    Congestion cg;
    for (const auto& d : member(doc, "delays", "congestion game")) {
      cg.delays.push_back({rational_from_json(member(d, "a", "delay")), rational_from_json(member(d, "b", "delay"))});
    }
    cg.strategies = detail::read_facility_strategies(member(doc, "strategies", "congestion game"));
    validate_family(cg);
    return cg;
  }
  detail::syntax_error("facility game kind must be \"cost_sharing\" or \"congestion\"");
}

inline Json facility_game_to_json(const CostSharing& cs) {
  Json doc;
  doc["kind"] = "cost_sharing";
  Json costs = Json::array();
  for (const auto& c : cs.costs) costs.push_back(rational_to_json(c));
  doc["costs"] = std::move(costs);
  doc["strategies"] = detail::write_facility_strategies(cs.strategies);
  return doc;
}

inline Json facility_game_to_json(const Congestion& cg) {
  Json doc;
  doc["kind"] = "congestion";
  Json delays = Json::array();
  for (const auto& d : cg.delays) delays.push_back({{"a", rational_to_json(d.a)}, {"b", rational_to_json(d.b)}});
  doc["delays"] = std::move(delays);
  doc["strategies"] = detail::write_facility_strategies(cg.strategies);
  return doc;
}

// ---------------------------------------------------------------------------
// Reports

inline Json deviation_to_json(const Game& g, const DeviationRecord& r) {
  return {{"player", g.player(r.player).name},
          {"from", profile_labels(g.players(), r.from)},
          {"to", g.player(r.player).strategies[r.to_strategy]},
          {"payoff_gain", rational_to_json(r.payoff_gain)},
          {"welfare_drop", rational_to_json(r.welfare_drop)},
          {"appeal_factor", rational_to_json(r.appeal_factor)}};
}

inline Json level_to_json(const Game& g, const LevelResult& r) {
  Json out;
  switch (r.kind) {
    case LevelKind::Zero: out["kind"] = "zero"; break;
    case LevelKind::Finite: out["kind"] = "finite"; break;
    case LevelKind::Infinite: out["kind"] = "infinite"; break;
  }
  out["value"] = to_string(r);
  if (r.witness_optimum) out["witness_optimum"] = profile_labels(g.players(), *r.witness_optimum);
  if (r.witness_deviation) out["witness_deviation"] = deviation_to_json(g, *r.witness_deviation);
  if (r.infinite_reason) out["reason"] = "no stable social optimum";
  return out;
}

inline Json analyze_report(const Game& g) {
  Json out;
  out["game"] = game_to_json(g);
  out["pure_nash"] = profile_list(g.players(), pure_nash(g));
  out["social_optima"] = profile_list(g.players(), social_optima(g));
  out["stable_social_optima"] = profile_list(g.players(), stable_social_optima(g));
  out["selfishness_level"] = level_to_json(g, selfishness_level(g));
  out["price_of_stability"] = optional_rational(price_of_stability(g));
  out["price_of_anarchy"] = optional_rational(price_of_anarchy(g));
  return out;
}

inline Json dynamics_report(const Game& g, std::size_t cap = kDefaultCellCap) {
  const auto graph = improvement_graph(g, cap);
  std::vector<JointStrategy> sinks;
  for (auto v : graph.sinks()) sinks.push_back(g.profile_at(v));
  Json out;
  out["profiles"] = graph.node_count();
  out["improvement_edges"] = graph.edge_count();
  out["sinks"] = profile_list(g.players(), sinks);
  out["fip"] = has_fip(graph);
  out["weakly_acyclic"] = is_weakly_acyclic(graph);
  out["ordinal_potential"] = ordinal_potential_certificate(graph).has_value();
  return out;
}

inline Json sweep_report(const Game& g, const std::vector<Rational>& alphas) {
  Json rows = Json::array();
  for (const auto& [alpha, pos] : selfishness_function(g, alphas)) {
    rows.push_back({{"alpha", rational_to_json(alpha)}, {"price_of_stability", optional_rational(pos)}});
  }
  return {{"selfishness_function", std::move(rows)}};
}

inline Json closed_form_to_json(const ClosedFormResult& r) {
  Json out;
  out["kind"] = to_string(r.kind);
  out["value"] = r.value ? rational_to_json(*r.value) : Json("inf");
  if (r.kind == ClosedFormKind::UpperBound) out["tight"] = r.tight;
  return out;
}

inline std::string render_report(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace selfish
