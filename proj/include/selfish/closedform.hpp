#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "selfish/analysis.hpp"
#include "selfish/error.hpp"
#include "selfish/families.hpp"
#include "selfish/game.hpp"
#include "selfish/rational.hpp"

namespace selfish {

enum class ClosedFormKind { Exact, UpperBound, Infinite };

inline std::string to_string(ClosedFormKind k) {
  switch (k) {
    case ClosedFormKind::Exact: return "exact";
    case ClosedFormKind::UpperBound: return "upper_bound";
    case ClosedFormKind::Infinite: return "infinite";
  }
  return "?";
}

struct ClosedFormResult {
  ClosedFormKind kind = ClosedFormKind::Infinite;
  std::optional<Rational> value;  // Exact and UpperBound
  bool tight = false;             // UpperBound only

  static ClosedFormResult exact(Rational v) { return {ClosedFormKind::Exact, std::move(v), false}; }
  static ClosedFormResult bound(Rational v, bool tight) { return {ClosedFormKind::UpperBound, std::move(v), tight}; }
  static ClosedFormResult infinite() { return {}; }
};

// Continuous families. Each keeps the parameters its appeal-factor formula
// reads; the optional entries pick the stable social optimum used by
// unbounded_witness (a symmetric one when absent).

/// p_i(s) = max(0, s_i (1 - sum_j s_j)) on [0, 1]; `a` is s_i at the optimum.
struct Tragedy {
  std::size_t n = 2;
  std::optional<Rational> a;
};

/// p_i(s) = s_i (d - b sum_j s_j) with d = a - c; `y` is s_i at the optimum.
struct Cournot {
  Rational d;
  Rational b;
  std::size_t n = 2;
  std::optional<Rational> y;

  static Cournot from_market(const Rational& a, const Rational& c, const Rational& b, std::size_t n = 2) {
    if (!(a > c && c >= 0 && b > 0)) throw Error(Errc::ParamOutOfRange, "cournot needs a > c >= 0 and b > 0");
    return Cournot{a - c, b, n, std::nullopt};
  }
};

/// Two firms pricing on [c, a/b); the only stable optimum is (d, d) with
/// d = (a + b c) / (2 b).
struct Bertrand {
  Rational a;
  Rational b;
  Rational c;

  Rational d() const { return (a + b * c) / (2 * b); }
};

/// Continuous public goods game p_i(s) = b - s_i + c/n sum_j s_j on [0, b].
struct PublicGoodsCont {
  std::size_t n = 2;
  Rational b = 1;
  Rational c = 2;
};

using ContinuousFamilyParams = std::variant<Tragedy, Cournot, Bertrand, PublicGoodsCont>;

inline void validate_continuous(const ContinuousFamilyParams& params) {
  using detail::param_check;
  std::visit(
      [](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Tragedy>) {
          param_check(f.n >= 2, "tragedy needs n >= 2");
          if (f.a) param_check(*f.a >= 0 && *f.a < Rational(1, 2), "tragedy needs 0 <= a < 1/2");
        } else if constexpr (std::is_same_v<T, Cournot>) {
          param_check(f.d > 0 && f.b > 0 && f.n >= 2, "cournot needs d = a - c > 0, b > 0, n >= 2");
          if (f.y) param_check(*f.y >= 0 && *f.y < f.d / (2 * f.b), "cournot needs 0 <= y < d/(2b)");
        } else if constexpr (std::is_same_v<T, Bertrand>) {
          param_check(f.b > 0 && f.c > 0 && f.b * f.c < f.a, "bertrand needs b > 0, c > 0, b c < a");
        } else {
          param_check(f.n >= 2 && f.b > 0 && f.c > 1, "public goods needs n >= 2, b > 0, c > 1");
        }
      },
      params);
}

// ---------------------------------------------------------------------------
// Discrepancy

/// delta(x_e, x_e') = ((2 a_e x_e + b_e) - (2 a_e' x_e' + b_e')) / (a_e + a_e').
inline Rational discrepancy(const Rational& a_e, const Rational& b_e, const Rational& a_e2, const Rational& b_e2,
                            std::size_t x_e, std::size_t x_e2) {
  const Rational denom = a_e + a_e2;
  if (denom == 0) throw Error(Errc::ZeroLinearCoefficients, "a_e + a_e' = 0");
  const Rational xe(static_cast<long long>(x_e));
  const Rational xe2(static_cast<long long>(x_e2));
  return ((2 * a_e * xe + b_e) - (2 * a_e2 * xe2 + b_e2)) / denom;
}

/// Facility loads x_e(s) of a congestion instance at joint strategy s.
inline std::vector<std::size_t> facility_loads(const Congestion& cg, const JointStrategy& s) {
  std::vector<std::size_t> load(cg.delays.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (auto e : cg.strategies[i][s[i]]) ++load[e];
  }
  return load;
}

/// max over distinct pairs e != e' with a_e + a_e' > 0 and delta < 1 of
/// delta(x_e(s), x_e'(s)); nothing when no pair qualifies.
inline std::optional<Rational> max_discrepancy(const Congestion& cg, const JointStrategy& s) {
  const auto load = facility_loads(cg, s);
  std::optional<Rational> best;
  for (std::size_t e = 0; e < cg.delays.size(); ++e) {
    for (std::size_t f = 0; f < cg.delays.size(); ++f) {
      if (e == f || cg.delays[e].a + cg.delays[f].a == 0) continue;
      auto d = discrepancy(cg.delays[e].a, cg.delays[e].b, cg.delays[f].a, cg.delays[f].b, load[e], load[f]);
      if (d < 1 && (!best || d > *best)) best = std::move(d);
    }
  }
  return best;
}

/// delta_max over all stable social optima, computed by brute force.
inline std::optional<Rational> derive_delta_max(const Congestion& cg, std::size_t cap = kDefaultCellCap) {
  const Game g = generate(cg, cap);
  std::optional<Rational> best;
  for (const auto& s : stable_social_optima(g)) {
    auto d = max_discrepancy(cg, s);
    if (d && (!best || *d > *best)) best = std::move(d);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Table 1

struct ClosedFormOptions {
  /// delta_max for the symmetric singleton congestion bound.
  std::optional<Rational> delta_max;
  /// Derive delta_max from the brute-forced stable optima when not given.
  bool derive_delta_max = true;
  std::size_t cap = kDefaultCellCap;
};

namespace detail {

inline Rational clamp_zero(Rational v) { return v < 0 ? Rational(0) : v; }

/// Least common multiple of the denominators; 1 for integer data.
inline Integer denominator_lcm(const std::vector<Rational>& values) {
  Integer q = 1;
  for (const auto& v : values) q = lcm(q, denominator_of(v));
  return q;
}

inline ClosedFormResult cost_sharing_bound(const CostSharing& cs) {
  const auto [lo, hi] = std::minmax_element(cs.costs.begin(), cs.costs.end());
  const Rational c_min = cs.costs.empty() ? Rational(0) : *lo;
  const Rational c_max = cs.costs.empty() ? Rational(0) : *hi;
  if (cs.singleton() && c_min > 0) return ClosedFormResult::bound(clamp_zero(c_max / (2 * c_min) - 1), true);
  // Integer costs, after scaling by the lcm of denominators if needed.
  const Rational q(denominator_lcm(cs.costs));
  const Rational L(static_cast<long long>(cs.max_strategy_size()));
  return ClosedFormResult::bound(clamp_zero(L * q * c_max / 2 - 1), true);
}

inline ClosedFormResult congestion_integer_bound(const Congestion& cg) {
  std::vector<Rational> coefficients;
  for (const auto& d : cg.delays) {
    coefficients.push_back(d.a);
    coefficients.push_back(d.b);
  }
  const Rational q(denominator_lcm(coefficients));
  Rational d_max = cg.delays.front().a + cg.delays.front().b;
  Rational d_min = d_max;
  for (const auto& d : cg.delays) {
    d_max = std::max(d_max, Rational(d.a + d.b));
    d_min = std::min(d_min, Rational(d.a + d.b));
  }
  const Rational L(static_cast<long long>(cg.max_strategy_size()));
  return ClosedFormResult::bound(clamp_zero((L * q * d_max - q * d_min - 1) / 2), true);
}

inline ClosedFormResult congestion_bound(const Congestion& cg, const ClosedFormOptions& opt) {
  if (!cg.symmetric() || !cg.singleton()) return congestion_integer_bound(cg);

  std::optional<Rational> a_min;
  Rational d_max = cg.delays.front().a + cg.delays.front().b;
  Rational d_min = d_max;
  for (const auto& d : cg.delays) {
    if (d.a > 0 && (!a_min || d.a < *a_min)) a_min = d.a;
    d_max = std::max(d_max, Rational(d.a + d.b));
    d_min = std::min(d_min, Rational(d.a + d.b));
  }
  std::optional<Rational> delta = opt.delta_max;
  if (!delta) {
    if (!opt.derive_delta_max) throw Error(Errc::MissingDiscrepancy, "delta_max neither given nor derivable");
    delta = derive_delta_max(cg, opt.cap);
  }
  // Without a qualifying facility pair the singleton bound says nothing;
  // fall back to the general integer-coefficient bound.
  if (!a_min || !delta) return congestion_integer_bound(cg);
  if (*delta >= 1) throw Error(Errc::ParamOutOfRange, "delta_max must be < 1");
  return ClosedFormResult::bound(clamp_zero((d_max - d_min) / (2 * (1 - *delta) * *a_min) - Rational(1, 2)), true);
}

}  // namespace detail

inline Rational public_goods_level(std::size_t n, const Rational& c) {
  const Rational nn(static_cast<long long>(n));
  return detail::clamp_zero((1 - c / nn) / (c - 1));
}

/// Closed-form selfishness level of a finite family.
inline ClosedFormResult closed_form_level(const FamilySpec& spec, const ClosedFormOptions& opt = {}) {
  validate_family(spec);
  return std::visit(
      [&](const auto& f) -> ClosedFormResult {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, PrisonersDilemmaN>) {
          return ClosedFormResult::exact(Rational(1, 2 * static_cast<long long>(f.n) - 3));
        } else if constexpr (std::is_same_v<T, PublicGoodsGrid>) {
          return ClosedFormResult::exact(public_goods_level(f.n, f.c));
        } else if constexpr (std::is_same_v<T, TravelersDilemma>) {
          return ClosedFormResult::exact(Rational(1, 2));
        } else if constexpr (std::is_same_v<T, FLevelGame>) {
          return ClosedFormResult::exact(f.f);
        } else if constexpr (std::is_same_v<T, GeneralizedPD>) {
          return ClosedFormResult::exact(f.alpha);
        } else if constexpr (std::is_same_v<T, MatchingPennies> || std::is_same_v<T, BadNash3x3> ||
                             std::is_same_v<T, WeaklyAcyclic3x3>) {
          return ClosedFormResult::infinite();
        } else if constexpr (std::is_same_v<T, CostSharing>) {
          return detail::cost_sharing_bound(f);
        } else if constexpr (std::is_same_v<T, Congestion>) {
          return detail::congestion_bound(f, opt);
        } else {
          throw Error(Errc::ParamOutOfRange, "no closed form for this family");
        }
      },
      spec);
}

/// Closed-form selfishness level of a continuous family.
inline ClosedFormResult closed_form_level(const ContinuousFamilyParams& params) {
  validate_continuous(params);
  if (const auto* pg = std::get_if<PublicGoodsCont>(&params)) {
    return ClosedFormResult::exact(public_goods_level(pg->n, pg->c));
  }
  return ClosedFormResult::infinite();
}

// ---------------------------------------------------------------------------
// Appeal factors of the continuous games

/// Tragedy of the commons, deviation a -> x with a < x < 1/2 from an optimum
/// where the others hold 1/2 - a: (x - 1/2) / (a - x).
inline Rational tragedy_af(const Rational& a, const Rational& x) {
  if (!(a >= 0 && a < x && x < Rational(1, 2))) {
    throw Error(Errc::OutOfDeviationRange, "tragedy needs 0 <= a < x < 1/2");
  }
  return (x - Rational(1, 2)) / (a - x);
}

/// Cournot, deviation y -> x with y < x < d/(2b): -(x - d/(2b)) / (x - y).
inline Rational cournot_af(const Rational& d, const Rational& b, const Rational& y, const Rational& x) {
  if (!(b > 0)) throw Error(Errc::ParamOutOfRange, "cournot needs b > 0");
  const Rational peak = d / (2 * b);
  if (!(y < x && x < peak)) throw Error(Errc::OutOfDeviationRange, "cournot needs y < x < d/(2b)");
  return -(x - peak) / (x - y);
}

/// Bertrand, deviation d -> s_i with c < s_i < d from the optimum (d, d).
inline Rational bertrand_af(const Rational& a, const Rational& b, const Rational& c, const Rational& s_i) {
  const Bertrand m{a, b, c};
  validate_continuous(m);
  const Rational d = m.d();
  if (!(c < s_i && s_i < d)) throw Error(Errc::OutOfDeviationRange, "bertrand needs c < s_i < d");
  auto profit = [&](const Rational& p) { return Rational((p - c) * (a - b * p)); };
  // The lower price takes the whole market; at (d, d) it is split.
  const Rational gain = profit(s_i) - profit(d) / 2;
  const Rational drop = profit(d) - profit(s_i);
  return gain / drop;
}

namespace detail {

/// Smallest k >= 1 with k^2 >= v.
inline Integer ceil_sqrt(const Rational& v) {
  if (v <= 0) return 1;
  const Integer target = numerator_of(v) / denominator_of(v) + 1;
  Integer k = boost::multiprecision::sqrt(target);
  while (k * k < target) ++k;
  return k < 1 ? Integer(1) : k;
}

}  // namespace detail

/// A deviation whose appeal factor, recomputed by the matching *_af
/// function, strictly exceeds M. The result is x for Tragedy and Cournot
/// and the price s_i for Bertrand.
inline Rational unbounded_witness(const ContinuousFamilyParams& params, const Rational& M) {
  validate_continuous(params);
  if (!(M > 0)) throw Error(Errc::ParamOutOfRange, "M must be positive");
  return std::visit(
      [&](const auto& f) -> Rational {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Tragedy>) {
          // AF = -1 + (1/2 - a)/(x - a) = M + 1.
          const Rational a = f.a.value_or(Rational(1, 2 * static_cast<long long>(f.n)));
          return a + (Rational(1, 2) - a) / (M + 2);
        } else if constexpr (std::is_same_v<T, Cournot>) {
          const Rational peak = f.d / (2 * f.b);
          const Rational y = f.y.value_or(peak / Rational(static_cast<long long>(f.n)));
          return y + (peak - y) / (M + 2);
        } else if constexpr (std::is_same_v<T, Bertrand>) {
          // With h = d - s_i the profit is W - b h^2 (W the peak profit), so
          // AF = W / (2 b h^2) - 1; take h = 1/k with k^2 >= 2 b (M + 2) / W.
          const Rational d = f.d();
          const Rational W = (d - f.c) * (f.a - f.b * d);
          Integer k = detail::ceil_sqrt(2 * f.b * (M + 2) / W);
          const Integer room = detail::ceil_sqrt(1 / ((d - f.c) * (d - f.c))) + 1;
          if (k < room) k = room;
          return d - Rational(Integer(1), k);
        } else {
          throw Error(Errc::ParamOutOfRange, "public goods has a finite level");
        }
      },
      params);
}

/// Appeal factor of the deviation returned by unbounded_witness.
inline Rational witness_af(const ContinuousFamilyParams& params, const Rational& x) {
  return std::visit(
      [&](const auto& f) -> Rational {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Tragedy>) {
          return tragedy_af(f.a.value_or(Rational(1, 2 * static_cast<long long>(f.n))), x);
        } else if constexpr (std::is_same_v<T, Cournot>) {
          const Rational peak = f.d / (2 * f.b);
          return cournot_af(f.d, f.b, f.y.value_or(peak / Rational(static_cast<long long>(f.n))), x);
        } else if constexpr (std::is_same_v<T, Bertrand>) {
          return bertrand_af(f.a, f.b, f.c, x);
        } else {
          throw Error(Errc::ParamOutOfRange, "public goods has a finite level");
        }
      },
      params);
}

/// Continuous families by command-line name: tragedy {n, a}, cournot
/// {a, c, b, n, y}, bertrand {a, b, c}, public_goods_cont {n, b, c}.
inline std::optional<ContinuousFamilyParams> make_continuous(std::string_view name, const ParamMap& params) {
  using detail::allow_only;
  using detail::as_count;
  using detail::param_or;
  using detail::require_param;
  auto optional_param = [&](const std::string& key) -> std::optional<Rational> {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
  };
  std::optional<ContinuousFamilyParams> out;
  if (name == "tragedy") {
    allow_only(params, {"n", "a"});
    out = Tragedy{as_count(param_or(params, "n", 2), "n"), optional_param("a")};
  } else if (name == "cournot") {
    allow_only(params, {"a", "c", "b", "n", "y"});
    auto m = Cournot::from_market(require_param(params, "a"), param_or(params, "c", 0), param_or(params, "b", 1),
                                  as_count(param_or(params, "n", 2), "n"));
    m.y = optional_param("y");
    out = m;
  } else if (name == "bertrand") {
    allow_only(params, {"a", "b", "c"});
    out = Bertrand{require_param(params, "a"), param_or(params, "b", 1), require_param(params, "c")};
  } else if (name == "public_goods_cont") {
    allow_only(params, {"n", "b", "c"});
    out = PublicGoodsCont{as_count(require_param(params, "n"), "n"), param_or(params, "b", 1),
                          require_param(params, "c")};
  }
  if (out) validate_continuous(*out);
  return out;
}

}  // namespace selfish
