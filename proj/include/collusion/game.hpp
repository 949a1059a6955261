#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace collusion {

// The two stage-game actions: H is the cooperative (high-price) action, L the
// competitive (low-price) one. H sorts before L; every index in the library
// follows this order.
enum class Action : uint8_t { H = 0, L = 1 };

inline constexpr std::array<Action, 2> kActions{Action::H, Action::L};

inline constexpr int action_index(Action a) { return static_cast<int>(a); }

inline constexpr Action other_action(Action a) {
  return a == Action::H ? Action::L : Action::H;
}

inline constexpr char action_char(Action a) { return a == Action::H ? 'H' : 'L'; }

inline Action action_from_char(char c) {
  if (c == 'H') return Action::H;
  if (c == 'L') return Action::L;
  throw std::invalid_argument(std::string("unknown action '") + c + "'");
}

// A joint outcome of one round: player 0's action and player 1's action.
struct Outcome {
  Action a0;
  Action a1;

  friend constexpr bool operator==(const Outcome&, const Outcome&) = default;
};

// Canonical outcome order: (H,H)=0, (H,L)=1, (L,H)=2, (L,L)=3.
inline constexpr int outcome_index(Outcome o) {
  return 2 * action_index(o.a0) + action_index(o.a1);
}

inline constexpr Outcome outcome_from_index(int k) {
  return Outcome{static_cast<Action>((k >> 1) & 1), static_cast<Action>(k & 1)};
}

inline std::string outcome_string(Outcome o) {
  return {action_char(o.a0), action_char(o.a1)};
}

// Normalized Prisoner's Dilemma payoffs. beta is the mutual-cooperation
// reward, gamma the mutual-defection reward; the off-diagonal payoffs are
// pinned to 0 and 1. Requires 1 > beta > gamma > 0 strictly: every
// monotonicity and dominance argument in the analysis relies on the strict
// ordering.
struct PayoffParams {
  double beta;
  double gamma;

  PayoffParams(double beta_, double gamma_) : beta(beta_), gamma(gamma_) {
    if (!(1.0 > beta && beta > gamma && gamma > 0.0)) {
      throw std::invalid_argument("requires 1 > beta > gamma > 0 (got beta=" +
                                  std::to_string(beta_) + ", gamma=" + std::to_string(gamma_) + ")");
    }
  }
};

struct RewardPair {
  double r0;
  double r1;

  friend constexpr bool operator==(const RewardPair&, const RewardPair&) = default;
};

// Stage-game payoff matrix:
//   (H,H) -> (beta, beta)   (H,L) -> (0, 1)
//   (L,H) -> (1, 0)         (L,L) -> (gamma, gamma)
inline constexpr RewardPair reward(const PayoffParams& p, Outcome o) {
  switch (outcome_index(o)) {
    case 0: return {p.beta, p.beta};
    case 1: return {0.0, 1.0};
    case 2: return {1.0, 0.0};
    default: return {p.gamma, p.gamma};
  }
}

}  // namespace collusion
