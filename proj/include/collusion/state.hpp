#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>

#include "collusion/agent.hpp"
#include "collusion/game.hpp"
#include "collusion/history.hpp"
#include "collusion/policies.hpp"

namespace collusion {

// Joint outcome counts (s0..s3 in the canonical outcome order). The round
// index is the count sum; for path-invariant agents this vector is a Markov
// state for the whole game.
struct StateVector {
  std::array<int64_t, 4> counts{0, 0, 0, 0};

  int64_t round() const { return counts[0] + counts[1] + counts[2] + counts[3]; }

  friend constexpr bool operator==(const StateVector&, const StateVector&) = default;
  friend constexpr auto operator<=>(const StateVector&, const StateVector&) = default;
};

inline StateVector state_update(StateVector s, Outcome o) {
  ++s.counts[outcome_index(o)];
  return s;
}

// Closed-form value estimates from the joint state:
//   v0(H) = beta*s0/(s0+s1)        v0(L) = (s2 + gamma*s3)/(s2+s3)
//   v1(H) = beta*s0/(s0+s2)        v1(L) = (s1 + gamma*s3)/(s1+s3)
// Undefined (nullopt) when the action's play count for that player is zero.
inline std::optional<double> state_value(int player, Action a, const StateVector& s,
                                         const PayoffParams& p) {
  const auto& c = s.counts;
  if (player == 0) {
    if (a == Action::H) {
      const int64_t n = c[0] + c[1];
      if (n == 0) return std::nullopt;
      return p.beta * static_cast<double>(c[0]) / static_cast<double>(n);
    }
    const int64_t n = c[2] + c[3];
    if (n == 0) return std::nullopt;
    return (static_cast<double>(c[2]) + p.gamma * static_cast<double>(c[3])) / static_cast<double>(n);
  }
  if (a == Action::H) {
    const int64_t n = c[0] + c[2];
    if (n == 0) return std::nullopt;
    return p.beta * static_cast<double>(c[0]) / static_cast<double>(n);
  }
  const int64_t n = c[1] + c[3];
  if (n == 0) return std::nullopt;
  return (static_cast<double>(c[1]) + p.gamma * static_cast<double>(c[3])) / static_cast<double>(n);
}

// True iff the state-based estimates agree with the history-based ones for
// every action the player has sampled. Distinguishes "unsampled" from
// "sampled with mean 0": a sampled action whose state denominator is zero is
// an inconsistency, not a fallback.
inline bool state_history_consistency(const History& h, const StateVector& s, int player,
                                      const PayoffParams& p, double tol = 1e-10) {
  for (Action a : kActions) {
    const std::optional<double> sv = state_value(player, a, s, p);
    if (h.count(a) == 0) {
      if (sv.has_value()) return false;
      continue;
    }
    if (!sv.has_value()) return false;
    if (std::abs(*sv - h.value_estimate(a)) > tol) return false;
  }
  return true;
}

// Distribution over the four successor states s + e_k, as the product of the
// two players' independent action draws.
struct TransitionDistribution {
  std::array<double, 4> prob{0.0, 0.0, 0.0, 0.0};
};

inline TransitionDistribution transition_distribution(const StateVector&, const BehaviorPolicy& p0,
                                                      const BehaviorPolicy& p1) {
  TransitionDistribution t;
  for (int k = 0; k < 4; ++k) {
    const Outcome o = outcome_from_index(k);
    t.prob[k] = p0.prob_of(o.a0) * p1.prob_of(o.a1);
  }
  return t;
}

// Per-player view reconstructed from the joint state. Mirrors view_of on a
// history built from the same game: unsampled actions carry value 0.
inline AgentView state_agent_view(int player, const StateVector& s, const PayoffParams& p) {
  const auto& c = s.counts;
  AgentView v;
  if (player == 0) {
    v.arm_h.count = c[0] + c[1];
    v.arm_l.count = c[2] + c[3];
  } else {
    v.arm_h.count = c[0] + c[2];
    v.arm_l.count = c[1] + c[3];
  }
  v.arm_h.value = v.arm_h.count == 0 ? 0.0 : *state_value(player, Action::H, s, p);
  v.arm_l.value = v.arm_l.count == 0 ? 0.0 : *state_value(player, Action::L, s, p);
  v.round = s.round();
  return v;
}

// Terminal classification used by both the exact chain and the simulator:
// both players' H estimates strictly exceed their L estimates, with
// unsampled actions valued 0.
inline bool state_comparison_collusive(const StateVector& s, const PayoffParams& p) {
  for (int player = 0; player < 2; ++player) {
    const AgentView v = state_agent_view(player, s, p);
    if (!(v.arm_h.value > v.arm_l.value)) return false;
  }
  return true;
}

inline constexpr int64_t kExactDpMaxHorizon = 30;

// Exact forward propagation of the outcome-count chain: the probability that
// the terminal state classifies as collusive. All shipped algorithms are
// path-invariant (epsilon-decay only through the round counter, which equals
// the state's round), so the behavior policies are functions of the state.
// Refuses horizons past kExactDpMaxHorizon rather than approximating.
inline double exact_collusion_probability(const PayoffParams& params, const AgentSpec& agent0,
                                          const AgentSpec& agent1, int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (horizon > kExactDpMaxHorizon) {
    throw std::invalid_argument("exact chain supports horizon <= " +
                                std::to_string(kExactDpMaxHorizon) + " (got " +
                                std::to_string(horizon) + ")");
  }
  std::map<StateVector, double> dist{{StateVector{}, 1.0}};
  for (int64_t t = 0; t < horizon; ++t) {
    std::map<StateVector, double> next;
    for (const auto& [s, mass] : dist) {
      const BehaviorPolicy p0 = behavior_distribution(agent0.policy, state_agent_view(0, s, params));
      const BehaviorPolicy p1 = behavior_distribution(agent1.policy, state_agent_view(1, s, params));
      const TransitionDistribution tr = transition_distribution(s, p0, p1);
      for (int k = 0; k < 4; ++k) {
        if (tr.prob[k] == 0.0) continue;
        next[state_update(s, outcome_from_index(k))] += mass * tr.prob[k];
      }
    }
    dist.swap(next);
  }
  double collusive = 0.0;
  for (const auto& [s, mass] : dist) {
    if (state_comparison_collusive(s, params)) collusive += mass;
  }
  return collusive;
}

}  // namespace collusion
