#include <catch2/catch_amalgamated.hpp>

#include "collusion/game.hpp"
#include "collusion/rng.hpp"

using namespace collusion;

TEST_CASE("payoff matrix matches the normalized form") {
  const PayoffParams p(0.6, 0.3);
  CHECK(reward(p, {Action::H, Action::H}) == RewardPair{0.6, 0.6});
  CHECK(reward(p, {Action::H, Action::L}) == RewardPair{0.0, 1.0});
  CHECK(reward(p, {Action::L, Action::H}) == RewardPair{1.0, 0.0});
  CHECK(reward(p, {Action::L, Action::L}) == RewardPair{0.3, 0.3});
}

TEST_CASE("payoff params reject non-strict orderings") {
  CHECK_THROWS_AS(PayoffParams(0.3, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(PayoffParams(0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(PayoffParams(1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(PayoffParams(0.6, 0.0), std::invalid_argument);
  CHECK_NOTHROW(PayoffParams(0.999, 0.001));
}

TEST_CASE("outcome_index is the canonical bijection") {
  CHECK(outcome_index({Action::H, Action::H}) == 0);
  CHECK(outcome_index({Action::H, Action::L}) == 1);
  CHECK(outcome_index({Action::L, Action::H}) == 2);
  CHECK(outcome_index({Action::L, Action::L}) == 3);
  for (int k = 0; k < 4; ++k) CHECK(outcome_index(outcome_from_index(k)) == k);
}

TEST_CASE("rewards are bounded, dominant in L, and Pareto-ranked") {
  RandomSource rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const double gamma = 0.001 + 0.997 * rng.next_double();
    const double beta = gamma + (0.999 - gamma) * (0.001 + 0.998 * rng.next_double());
    const PayoffParams p(beta, gamma);

    for (int k = 0; k < 4; ++k) {
      const RewardPair r = reward(p, outcome_from_index(k));
      CHECK(r.r0 >= 0.0);
      CHECK(r.r0 <= 1.0);
      CHECK(r.r1 >= 0.0);
      CHECK(r.r1 <= 1.0);
    }
    // defecting strictly beats cooperating against each fixed opponent action
    CHECK(reward(p, {Action::L, Action::H}).r0 > reward(p, {Action::H, Action::H}).r0);
    CHECK(reward(p, {Action::L, Action::L}).r0 > reward(p, {Action::H, Action::L}).r0);
    CHECK(reward(p, {Action::H, Action::L}).r1 > reward(p, {Action::H, Action::H}).r1);
    CHECK(reward(p, {Action::L, Action::L}).r1 > reward(p, {Action::L, Action::H}).r1);
    // mutual cooperation Pareto-dominates mutual defection
    CHECK(reward(p, {Action::H, Action::H}).r0 > reward(p, {Action::L, Action::L}).r0);
    CHECK(reward(p, {Action::H, Action::H}).r1 > reward(p, {Action::L, Action::L}).r1);
  }
}
