#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "collusion/game.hpp"
#include "collusion/history.hpp"
#include "collusion/rng.hpp"

namespace collusion {

struct EpsilonGreedyConfig {
  double epsilon;
  TieBreakRule tie_break;

  explicit EpsilonGreedyConfig(double epsilon_, TieBreakRule tb = TieBreakRule::UniformRandom)
      : epsilon(epsilon_), tie_break(tb) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
      throw std::invalid_argument("epsilon must lie in (0,1) (got " + std::to_string(epsilon_) + ")");
    }
  }
};

// Geometric exploration schedule eps(t) = eta^t with eps(0) = 1.
struct EpsilonDecayConfig {
  double eta;
  TieBreakRule tie_break;

  explicit EpsilonDecayConfig(double eta_, TieBreakRule tb = TieBreakRule::UniformRandom)
      : eta(eta_), tie_break(tb) {
    if (!(eta > 0.0 && eta < 1.0)) {
      throw std::invalid_argument("eta must lie in (0,1) (got " + std::to_string(eta_) + ")");
    }
  }
};

// delta is the confidence-width parameter; the bonus uses the natural log.
struct UcbConfig {
  double delta;
  TieBreakRule tie_break;

  explicit UcbConfig(double delta_, TieBreakRule tb = TieBreakRule::UniformRandom)
      : delta(delta_), tie_break(tb) {
    if (!(delta > 0.0 && delta <= 1.0)) {
      throw std::invalid_argument("delta must lie in (0,1] (got " + std::to_string(delta_) + ")");
    }
  }
};

// Per-action view an algorithm is allowed to see: empirical value (0 when
// unsampled), play count, and the round index. Both the history-backed agents
// and the exact state-space chain evaluate policies through this view, so the
// two routes cannot drift apart.
struct ArmView {
  double value = 0.0;
  int64_t count = 0;
};

struct AgentView {
  ArmView arm_h;
  ArmView arm_l;
  int64_t round = 0;

  const ArmView& arm(Action a) const { return a == Action::H ? arm_h : arm_l; }
};

inline AgentView view_of(const History& h, int64_t round) {
  AgentView v;
  v.arm_h = {h.value_estimate(Action::H), h.count(Action::H)};
  v.arm_l = {h.value_estimate(Action::L), h.count(Action::L)};
  v.round = round;
  return v;
}

namespace detail {

// Greedy action under the view, or the tie marker. Random tie-breaking is
// never resolved here; callers either marginalize over it (distributions) or
// draw (selection).
struct GreedyResult {
  bool tied;
  Action action;  // meaningful only when !tied
};

inline GreedyResult greedy_of(const AgentView& v) {
  if (values_tied(v.arm_h.value, v.arm_l.value)) return {true, Action::H};
  return {false, v.arm_h.value > v.arm_l.value ? Action::H : Action::L};
}

// Epsilon mixing: the greedy action keeps 1 - eps + eps/|A|, the other gets
// eps/|A|. With a random tie the two mixings average to the uniform policy.
inline BehaviorPolicy epsilon_mix(const AgentView& v, double eps, TieBreakRule tb) {
  const GreedyResult g = greedy_of(v);
  Action greedy = g.action;
  if (g.tied) {
    if (tb == TieBreakRule::UniformRandom) return BehaviorPolicy{{0.5, 0.5}};
    greedy = resolve_tie(tb, nullptr);
  }
  BehaviorPolicy p;
  p.prob[action_index(greedy)] = 1.0 - eps + eps / 2.0;
  p.prob[action_index(other_action(greedy))] = eps / 2.0;
  return p;
}

}  // namespace detail

// ---- epsilon-greedy ----

inline BehaviorPolicy eg_distribution(const AgentView& v, const EpsilonGreedyConfig& cfg) {
  return detail::epsilon_mix(v, cfg.epsilon, cfg.tie_break);
}

inline BehaviorPolicy eg_distribution(const History& h, const EpsilonGreedyConfig& cfg) {
  return eg_distribution(view_of(h, h.length()), cfg);
}

// ---- epsilon-decay ----

inline double epsilon_at(const EpsilonDecayConfig& cfg, int64_t t) {
  return std::pow(cfg.eta, static_cast<double>(t));
}

inline BehaviorPolicy ed_distribution(const AgentView& v, const EpsilonDecayConfig& cfg) {
  return detail::epsilon_mix(v, epsilon_at(cfg, v.round), cfg.tie_break);
}

inline BehaviorPolicy ed_distribution(const History& h, const EpsilonDecayConfig& cfg, int64_t t) {
  return ed_distribution(view_of(h, t), cfg);
}

// ---- UCB ----

// Optimistic index: value + sqrt(2 ln(1/delta) / count), +inf when unsampled.
inline double ucb_score(const ArmView& arm, const UcbConfig& cfg) {
  if (arm.count == 0) return std::numeric_limits<double>::infinity();
  return arm.value + std::sqrt(2.0 * std::log(1.0 / cfg.delta) / static_cast<double>(arm.count));
}

inline double ucb_score(const History& h, Action a, const UcbConfig& cfg) {
  return ucb_score(ArmView{h.value_estimate(a), h.count(a)}, cfg);
}

// Markov object for UCB: degenerate on the unique maximizer, or the
// tie-break marginal when both scores are maximal (two infinities, or finite
// scores within kTieTolerance).
inline BehaviorPolicy ucb_distribution(const AgentView& v, const UcbConfig& cfg) {
  const double s_h = ucb_score(v.arm_h, cfg);
  const double s_l = ucb_score(v.arm_l, cfg);
  bool tied;
  if (std::isinf(s_h) || std::isinf(s_l)) {
    tied = std::isinf(s_h) && std::isinf(s_l);
    if (!tied) return BehaviorPolicy::degenerate_on(std::isinf(s_h) ? Action::H : Action::L);
  } else {
    tied = values_tied(s_h, s_l);
  }
  if (tied) {
    if (cfg.tie_break == TieBreakRule::UniformRandom) return BehaviorPolicy{{0.5, 0.5}};
    return BehaviorPolicy::degenerate_on(resolve_tie(cfg.tie_break, nullptr));
  }
  return BehaviorPolicy::degenerate_on(s_h > s_l ? Action::H : Action::L);
}

inline Action ucb_select(const History& h, const UcbConfig& cfg, RandomSource& rng) {
  const double s_h = ucb_score(h, Action::H, cfg);
  const double s_l = ucb_score(h, Action::L, cfg);
  const bool both_inf = std::isinf(s_h) && std::isinf(s_l);
  if (both_inf || (!std::isinf(s_h) && !std::isinf(s_l) && values_tied(s_h, s_l))) {
    return resolve_tie(cfg.tie_break, &rng);
  }
  return s_h > s_l ? Action::H : Action::L;
}

// ---- collusion bounds on delta ----

// Proposition-level bound: symmetric UCB is guaranteed to settle on the
// collusive comparison when delta < exp(-gamma^2 / 2).
inline double ucb_collusion_delta_bound(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0,1) (got " + std::to_string(gamma) + ")");
  }
  return std::exp(-gamma * gamma / 2.0);
}

// Refined per-count bound: the sampling guarantee needed while the mutual-H
// count is still small. Below the threshold gamma/(beta-gamma) the bound is
//   exp(-(gamma - s0*beta/(s0+1))^2 * (s0+1)/2),
// above it any delta in (0,1] suffices. Nondecreasing in s0; the s0 = 0 case
// reproduces ucb_collusion_delta_bound.
inline double ucb_delta_bound_detailed(const PayoffParams& p, int64_t s0) {
  if (s0 < 0) throw std::invalid_argument("s0 must be nonnegative");
  const double threshold = p.gamma / (p.beta - p.gamma);
  if (static_cast<double>(s0) > threshold) return 1.0;
  const double v = p.gamma - static_cast<double>(s0) * p.beta / static_cast<double>(s0 + 1);
  return std::exp(-v * v * static_cast<double>(s0 + 1) / 2.0);
}

}  // namespace collusion
