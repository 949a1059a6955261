#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "collusion/history.hpp"
#include "collusion/policies.hpp"
#include "collusion/rng.hpp"

namespace collusion {

// Deterministic reference bandit: plays each unsampled action once in index
// order, then the greedy action with a deterministic tie-break. Exists to
// exercise the always-collude guarantee beyond UCB; not exposed on the CLI.
struct ExploreThenGreedyConfig {
  TieBreakRule tie_break = TieBreakRule::PreferFirst;
};

// Degenerate agent that always plays one action. Test fixture only.
struct AlwaysConfig {
  Action action = Action::H;
};

using PolicyConfig = std::variant<EpsilonGreedyConfig, EpsilonDecayConfig, UcbConfig,
                                  ExploreThenGreedyConfig, AlwaysConfig>;

inline BehaviorPolicy behavior_distribution(const PolicyConfig& cfg, const AgentView& v) {
  return std::visit(
      [&](const auto& c) -> BehaviorPolicy {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, EpsilonGreedyConfig>) {
          return eg_distribution(v, c);
        } else if constexpr (std::is_same_v<T, EpsilonDecayConfig>) {
          return ed_distribution(v, c);
        } else if constexpr (std::is_same_v<T, UcbConfig>) {
          return ucb_distribution(v, c);
        } else if constexpr (std::is_same_v<T, ExploreThenGreedyConfig>) {
          if (v.arm_h.count == 0) return BehaviorPolicy::degenerate_on(Action::H);
          if (v.arm_l.count == 0) return BehaviorPolicy::degenerate_on(Action::L);
          const detail::GreedyResult g = detail::greedy_of(v);
          return BehaviorPolicy::degenerate_on(g.tied ? resolve_tie(c.tie_break, nullptr) : g.action);
        } else {
          return BehaviorPolicy::degenerate_on(c.action);
        }
      },
      cfg);
}

// True iff the behavior policy is degenerate for every reachable history.
inline bool is_deterministic(const PolicyConfig& cfg) {
  return std::visit(
      [](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, UcbConfig> || std::is_same_v<T, ExploreThenGreedyConfig>) {
          return c.tie_break != TieBreakRule::UniformRandom;
        } else if constexpr (std::is_same_v<T, AlwaysConfig>) {
          return true;
        } else {
          return false;  // epsilon-greedy/decay mix over both actions at every finite t
        }
      },
      cfg);
}

inline std::string algorithm_name(const PolicyConfig& cfg) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, EpsilonGreedyConfig>) return "epsilon_greedy";
        else if constexpr (std::is_same_v<T, EpsilonDecayConfig>) return "epsilon_decay";
        else if constexpr (std::is_same_v<T, UcbConfig>) return "ucb";
        else if constexpr (std::is_same_v<T, ExploreThenGreedyConfig>) return "explore_then_greedy";
        else return std::string("always_") + action_char(c.action);
      },
      cfg);
}

inline TieBreakRule tie_break_of(const PolicyConfig& cfg) {
  return std::visit(
      [](const auto& c) -> TieBreakRule {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, AlwaysConfig>) return TieBreakRule::PreferFirst;
        else return c.tie_break;
      },
      cfg);
}

// One configured player: algorithm choice plus its private random stream.
struct AgentSpec {
  PolicyConfig policy;
  uint64_t seed = 0;
};

// Runtime wrapper used by the engine. An agent sees exactly its own history
// and the round index; the opponent's play reaches it only through the
// reward passed to observe().
class Agent {
 public:
  explicit Agent(const AgentSpec& spec, int64_t horizon_hint = 0)
      : spec_(spec), rng_(spec.seed) {
    if (horizon_hint > 0) history_.reserve(static_cast<size_t>(horizon_hint));
  }

  Action act(int64_t round) {
    const BehaviorPolicy pi = behavior_distribution(spec_.policy, view_of(history_, round));
    const double p_h = pi.prob[0];
    if (p_h >= 1.0) return Action::H;
    if (p_h <= 0.0) return Action::L;
    return rng_.next_double() < p_h ? Action::H : Action::L;
  }

  void observe(Action played, double reward) { history_.record(played, reward); }

  const History& history() const { return history_; }
  const AgentSpec& spec() const { return spec_; }

 private:
  AgentSpec spec_;
  History history_;
  RandomSource rng_;
};

}  // namespace collusion
