#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <numeric>
#include <vector>

#include "collusion/history.hpp"

using namespace collusion;

namespace {

History make_history(const std::vector<std::pair<Action, double>>& plays) {
  History h;
  for (auto [a, r] : plays) h.record(a, r);
  return h;
}

}  // namespace

TEST_CASE("record appends and keeps counts consistent") {
  History h;
  h.record(Action::H, 0.6);
  CHECK(h.count(Action::H) == 1);
  CHECK(h.count(Action::L) == 0);
  CHECK(h.length() == 1);
  CHECK(h.reward_at(0) == 0.6);

  h.record(Action::L, 0.3);
  CHECK(h.count(Action::L) == 1);
  CHECK(h.length() == 2);

  SECTION("reward sum is the action-play dot product") {
    History g = make_history({{Action::H, 0.6}, {Action::H, 0.6}, {Action::H, 0.0}});
    CHECK(g.reward_sum(Action::H) == Catch::Approx(1.2).margin(1e-15));
  }

  SECTION("rewards outside [0,1] are rejected") {
    CHECK_THROWS_AS(h.record(Action::H, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(h.record(Action::H, -0.1), std::invalid_argument);
    CHECK(h.length() == 2);
  }
}

TEST_CASE("value estimates are per-action empirical means") {
  CHECK(History().value_estimate(Action::H) == 0.0);

  History h = make_history({{Action::H, 0.6}, {Action::H, 0.6}, {Action::H, 0.0}});
  CHECK(h.value_estimate(Action::H) == Catch::Approx(0.4).margin(1e-15));
  CHECK(h.value_estimate(Action::L) == 0.0);

  History g = make_history({{Action::L, 1.0}, {Action::L, 0.3}});
  CHECK(g.value_estimate(Action::L) == Catch::Approx(0.65).margin(1e-15));
}

TEST_CASE("running-mean recurrence") {
  RandomSource rng(7);
  History h;
  for (int i = 0; i < 500; ++i) {
    const Action a = rng.next_double() < 0.5 ? Action::H : Action::L;
    const double r = rng.next_double();
    const double v = h.value_estimate(a);
    const double n = static_cast<double>(h.count(a)) + 1.0;
    h.record(a, r);
    CHECK(h.value_estimate(a) == Catch::Approx(v + (r - v) / n).margin(1e-12));
  }
}

TEST_CASE("target policy and tie handling") {
  History h = make_history({{Action::H, 0.6}, {Action::L, 0.3}});
  CHECK(target_policy(h, TieBreakRule::PreferLast) == Action::H);

  SECTION("fresh history ties resolve by rule") {
    History fresh;
    CHECK(target_policy(fresh, TieBreakRule::PreferFirst) == Action::H);
    CHECK(target_policy(fresh, TieBreakRule::PreferLast) == Action::L);

    RandomSource rng(99);
    int h_picks = 0;
    for (int i = 0; i < 2000; ++i) {
      if (target_policy(fresh, TieBreakRule::UniformRandom, &rng) == Action::H) ++h_picks;
    }
    CHECK(h_picks > 850);
    CHECK(h_picks < 1150);
  }

  SECTION("differences inside the tolerance count as ties") {
    History a = make_history({{Action::H, 0.3}, {Action::L, 0.3}});
    CHECK(values_tied(a.value_estimate(Action::H), a.value_estimate(Action::L) + 1e-15));
    CHECK(target_policy(a, TieBreakRule::PreferLast) == Action::L);
  }
}

TEST_CASE("path equivalence compares counts and reward sums only") {
  CHECK(path_equivalent(make_history({{Action::H, 0.6}, {Action::L, 0.3}}),
                        make_history({{Action::L, 0.3}, {Action::H, 0.6}})));
  CHECK_FALSE(path_equivalent(make_history({{Action::H, 0.6}}), make_history({{Action::H, 0.0}})));
  // equal sums and counts, different reward multisets: still equivalent
  CHECK(path_equivalent(make_history({{Action::H, 0.6}, {Action::H, 0.0}}),
                        make_history({{Action::H, 0.3}, {Action::H, 0.3}})));
  CHECK_FALSE(path_equivalent(make_history({{Action::H, 0.6}}),
                              make_history({{Action::H, 0.6}, {Action::L, 0.3}})));
}

TEST_CASE("value estimates are path-invariant under round reordering") {
  RandomSource rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<Action, double>> plays;
    const int n = 3 + static_cast<int>(rng.next_double() * 40);
    for (int i = 0; i < n; ++i) {
      plays.emplace_back(rng.next_double() < 0.5 ? Action::H : Action::L, rng.next_double());
    }
    History h = make_history(plays);

    std::vector<size_t> perm(plays.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    for (size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[static_cast<size_t>(rng.next_double() * static_cast<double>(i))]);
    }
    std::vector<std::pair<Action, double>> shuffled;
    for (size_t i : perm) shuffled.push_back(plays[i]);
    History g = make_history(shuffled);

    CHECK(path_equivalent(h, g));
    for (Action a : kActions) {
      CHECK(g.value_estimate(a) == Catch::Approx(h.value_estimate(a)).margin(1e-12));
      CHECK(g.count(a) == h.count(a));
    }
  }
}

TEST_CASE("value table mirrors the cached statistics") {
  History h = make_history({{Action::H, 0.6}, {Action::H, 0.0}, {Action::L, 1.0}});
  const ValueTable t = value_table(h);
  CHECK(t.count[0] == 2);
  CHECK(t.count[1] == 1);
  CHECK(t.value[0] == Catch::Approx(0.3).margin(1e-15));
  CHECK(t.value[1] == 1.0);
  CHECK(t.count[0] + t.count[1] == h.length());
}
