#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "collusion/agent.hpp"
#include "collusion/game.hpp"
#include "collusion/history.hpp"
#include "collusion/rng.hpp"
#include "collusion/state.hpp"

namespace collusion {

// Both players' target policies at a point in time.
struct Regime {
  Action target0;
  Action target1;

  friend constexpr bool operator==(const Regime&, const Regime&) = default;
};

inline std::string regime_string(Regime r) {
  return {action_char(r.target0), action_char(r.target1)};
}

inline constexpr Regime kRegimeHH{Action::H, Action::H};

// Target-policy pair for two histories under one tie-break rule. Pass a
// stream to realize random tie-breaks; without one, exact ties label as the
// first index so that regime timelines stay deterministic.
inline Regime classify_regime(const History& h0, const History& h1, TieBreakRule rule,
                              RandomSource* rng = nullptr) {
  return Regime{target_policy(h0, rule, rng), target_policy(h1, rule, rng)};
}

enum class RecordGranularity : uint8_t {
  EveryRound,  // full per-round record (plots, oracle checks)
  Endpoints,   // final statistics only (parameter sweeps)
};

struct GameConfig {
  PayoffParams params;
  std::array<AgentSpec, 2> agents;
  int64_t horizon = 10000;
  RecordGranularity granularity = RecordGranularity::EveryRound;

  GameConfig(PayoffParams p, AgentSpec a0, AgentSpec a1, int64_t horizon_ = 10000,
             RecordGranularity g = RecordGranularity::EveryRound)
      : params(p), agents{std::move(a0), std::move(a1)}, horizon(horizon_), granularity(g) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  }
};

// Derives the two per-agent streams from one master seed. Documented mix:
// agent i's seed is seed_mix(master, i).
inline GameConfig make_game(const PayoffParams& p, PolicyConfig policy0, PolicyConfig policy1,
                            int64_t horizon, uint64_t master_seed,
                            RecordGranularity g = RecordGranularity::EveryRound) {
  AgentSpec a0{std::move(policy0), seed_mix(master_seed, 0)};
  AgentSpec a1{std::move(policy1), seed_mix(master_seed, 1)};
  return GameConfig(p, std::move(a0), std::move(a1), horizon, g);
}

// Full record of one game. values[t] and regimes[t] are taken after round
// t's rewards have been absorbed, i.e. they describe the estimates the
// agents carry into round t+1.
struct Trajectory {
  int64_t horizon = 0;
  std::vector<Outcome> outcomes;                 // EveryRound only
  std::vector<std::array<double, 4>> values;     // v0H, v0L, v1H, v1L per round
  std::vector<Regime> regimes;                   // target-policy pair per round
  StateVector final_state;
  std::array<double, 4> final_values{0, 0, 0, 0};
  bool collusive_ending = false;
  std::optional<int64_t> onset;                  // first round from which the regime stays (H,H)

  bool every_round() const { return !outcomes.empty(); }
};

// True iff at the final round both agents' H estimates strictly exceed their
// L estimates. Exact ties are not collusive.
inline bool is_collusive_ending(const Trajectory& tr) {
  return tr.final_values[0] > tr.final_values[1] && tr.final_values[2] > tr.final_values[3];
}

// Smallest T such that the regime is (H,H) at every recorded round in
// [T, horizon); absent when the game does not end in that regime.
inline std::optional<int64_t> collusion_onset(const Trajectory& tr) {
  if (tr.regimes.empty() || tr.regimes.back() != kRegimeHH) return std::nullopt;
  int64_t t = static_cast<int64_t>(tr.regimes.size()) - 1;
  while (t > 0 && tr.regimes[static_cast<size_t>(t - 1)] == kRegimeHH) --t;
  return t;
}

// Simultaneous-move loop. Each agent draws from its behavior policy given
// only its own history and the round index, then observes its own reward.
inline Trajectory play_game(const GameConfig& cfg) {
  Agent agents[2] = {Agent(cfg.agents[0], cfg.horizon), Agent(cfg.agents[1], cfg.horizon)};
  const bool full = cfg.granularity == RecordGranularity::EveryRound;

  Trajectory tr;
  tr.horizon = cfg.horizon;
  if (full) {
    tr.outcomes.reserve(static_cast<size_t>(cfg.horizon));
    tr.values.reserve(static_cast<size_t>(cfg.horizon));
    tr.regimes.reserve(static_cast<size_t>(cfg.horizon));
  }

  StateVector state;
  for (int64_t t = 0; t < cfg.horizon; ++t) {
    const Outcome o{agents[0].act(t), agents[1].act(t)};
    const RewardPair r = reward(cfg.params, o);
    agents[0].observe(o.a0, r.r0);
    agents[1].observe(o.a1, r.r1);
    state = state_update(state, o);
    if (full) {
      tr.outcomes.push_back(o);
      tr.values.push_back({agents[0].history().value_estimate(Action::H),
                           agents[0].history().value_estimate(Action::L),
                           agents[1].history().value_estimate(Action::H),
                           agents[1].history().value_estimate(Action::L)});
      tr.regimes.push_back(Regime{target_policy(agents[0].history(), tie_break_of(cfg.agents[0].policy)),
                                  target_policy(agents[1].history(), tie_break_of(cfg.agents[1].policy))});
    }
  }

  tr.final_state = state;
  tr.final_values = {agents[0].history().value_estimate(Action::H),
                     agents[0].history().value_estimate(Action::L),
                     agents[1].history().value_estimate(Action::H),
                     agents[1].history().value_estimate(Action::L)};
  tr.collusive_ending = is_collusive_ending(tr);
  tr.onset = collusion_onset(tr);
  return tr;
}

// 17 significant digits: doubles survive a text round trip bit-exactly.
inline std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// One record per round: t,a0,a1,r0,r1,v0H,v0L,v1H,v1L,regime.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const PayoffParams& params) {
  if (!tr.every_round()) {
    throw std::invalid_argument("trajectory export requires every-round recording");
  }
  os << "t,a0,a1,r0,r1,v0H,v0L,v1H,v1L,regime\n";
  for (size_t t = 0; t < tr.outcomes.size(); ++t) {
    const Outcome o = tr.outcomes[t];
    const RewardPair r = reward(params, o);
    os << t << ',' << action_char(o.a0) << ',' << action_char(o.a1) << ',' << format_full(r.r0)
       << ',' << format_full(r.r1);
    for (double v : tr.values[t]) os << ',' << format_full(v);
    os << ',' << regime_string(tr.regimes[t]) << '\n';
  }
}

}  // namespace collusion
