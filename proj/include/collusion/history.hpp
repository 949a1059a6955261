#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "collusion/game.hpp"
#include "collusion/rng.hpp"

namespace collusion {

// Two value estimates are treated as tied when they differ by no more than
// this. Identical reward multisets must compare as ties in double precision,
// and the opening-round analysis relies on exact ties; anything closer than
// 1e-12 is indistinguishable from accumulated rounding in a 10^4-round mean.
inline constexpr double kTieTolerance = 1e-12;

enum class TieBreakRule : uint8_t {
  PreferFirst,    // pick the lowest-index action (H)
  PreferLast,     // pick the highest-index action (L)
  UniformRandom,  // pick uniformly among the tied actions
};

inline const char* tie_break_name(TieBreakRule r) {
  switch (r) {
    case TieBreakRule::PreferFirst: return "first";
    case TieBreakRule::PreferLast: return "last";
    default: return "random";
  }
}

inline TieBreakRule tie_break_from_name(const std::string& s) {
  if (s == "first") return TieBreakRule::PreferFirst;
  if (s == "last") return TieBreakRule::PreferLast;
  if (s == "random") return TieBreakRule::UniformRandom;
  throw std::invalid_argument("tie_break must be one of first|last|random (got '" + s + "')");
}

// Everything one agent ever observes: which action it played each round and
// the reward it received. The full sequences are kept (not just sufficient
// statistics) so that path-equivalence and replay stay testable; per-action
// reward sums and play counts are cached for O(1) value estimates.
class History {
 public:
  History() = default;

  void reserve(size_t n) {
    actions_.reserve(n);
    rewards_.reserve(n);
  }

  // Appends one round. Rewards outside [0,1] cannot arise from the stage
  // game, so they are rejected rather than silently absorbed into the means.
  void record(Action a, double reward) {
    if (!(reward >= 0.0 && reward <= 1.0)) {
      throw std::invalid_argument("reward must lie in [0,1] (got " + std::to_string(reward) + ")");
    }
    actions_.push_back(a);
    rewards_.push_back(reward);
    reward_sum_[action_index(a)] += reward;
    ++play_count_[action_index(a)];
  }

  int64_t length() const { return static_cast<int64_t>(actions_.size()); }
  int64_t count(Action a) const { return play_count_[action_index(a)]; }
  double reward_sum(Action a) const { return reward_sum_[action_index(a)]; }
  Action action_at(int64_t i) const { return actions_[static_cast<size_t>(i)]; }
  double reward_at(int64_t i) const { return rewards_[static_cast<size_t>(i)]; }

  // Empirical mean reward of the rounds in which `a` was played; 0 when the
  // action has never been played.
  double value_estimate(Action a) const {
    const int k = action_index(a);
    return play_count_[k] == 0 ? 0.0 : reward_sum_[k] / static_cast<double>(play_count_[k]);
  }

 private:
  std::vector<Action> actions_;
  std::vector<double> rewards_;
  std::array<double, 2> reward_sum_{0.0, 0.0};
  std::array<int64_t, 2> play_count_{0, 0};
};

inline double value_estimate(const History& h, Action a) { return h.value_estimate(a); }

// Snapshot of the cached sufficient statistics.
struct ValueTable {
  std::array<double, 2> value{0.0, 0.0};
  std::array<int64_t, 2> count{0, 0};
};

inline ValueTable value_table(const History& h) {
  ValueTable t;
  for (Action a : kActions) {
    t.value[action_index(a)] = h.value_estimate(a);
    t.count[action_index(a)] = h.count(a);
  }
  return t;
}

// A distribution over the two actions. prob[0] is the probability of H.
struct BehaviorPolicy {
  std::array<double, 2> prob{0.0, 0.0};

  double prob_of(Action a) const { return prob[action_index(a)]; }
  bool degenerate() const { return prob[0] == 1.0 || prob[1] == 1.0; }

  static BehaviorPolicy degenerate_on(Action a) {
    BehaviorPolicy p;
    p.prob[action_index(a)] = 1.0;
    return p;
  }
};

// Resolves a tie between the two actions. When the rule is UniformRandom but
// no stream is supplied (e.g. deterministic regime labelling), falls back to
// the first index.
inline Action resolve_tie(TieBreakRule rule, RandomSource* rng) {
  switch (rule) {
    case TieBreakRule::PreferFirst: return Action::H;
    case TieBreakRule::PreferLast: return Action::L;
    default:
      if (rng == nullptr) return Action::H;
      return rng->next_double() < 0.5 ? Action::H : Action::L;
  }
}

// Strict argmax of two values, or nullopt-like signal via tie flag.
inline bool values_tied(double v_h, double v_l) {
  const double d = v_h - v_l;
  return d <= kTieTolerance && d >= -kTieTolerance;
}

// The target policy: the action the agent currently believes best.
inline Action target_policy(const History& h, TieBreakRule rule, RandomSource* rng = nullptr) {
  const double v_h = h.value_estimate(Action::H);
  const double v_l = h.value_estimate(Action::L);
  if (values_tied(v_h, v_l)) return resolve_tie(rule, rng);
  return v_h > v_l ? Action::H : Action::L;
}

// Path equivalence: equal per-action play counts and per-action reward sums.
// Counts compare exactly; the reward dot products are recomputed from the
// stored sequences and compared within kTieTolerance.
inline bool path_equivalent(const History& h0, const History& h1) {
  for (Action a : kActions) {
    if (h0.count(a) != h1.count(a)) return false;
  }
  std::array<double, 2> dot0{0.0, 0.0}, dot1{0.0, 0.0};
  for (int64_t i = 0; i < h0.length(); ++i) dot0[action_index(h0.action_at(i))] += h0.reward_at(i);
  for (int64_t i = 0; i < h1.length(); ++i) dot1[action_index(h1.action_at(i))] += h1.reward_at(i);
  for (int k = 0; k < 2; ++k) {
    const double d = dot0[k] - dot1[k];
    if (d > kTieTolerance || d < -kTieTolerance) return false;
  }
  return true;
}

}  // namespace collusion
