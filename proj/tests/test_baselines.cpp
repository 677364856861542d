#include <doctest.h>

#include <cmath>
#include <random>

#include "smile/baselines.hpp"
#include "smile/errors.hpp"

using namespace smile;

TEST_CASE("fixed gamma delta rule") {
  FixedGammaEstimator e(0.0, 0.25);
  e = fixed_gamma_step(e, 8.0);
  CHECK(e.mean() == doctest::Approx(2.0));
  e = fixed_gamma_step(e, 2.0);
  CHECK(e.mean() == doctest::Approx(2.0));
  CHECK(fixed_gamma_step(FixedGammaEstimator(5.0, 1.0), -3.0).mean() == -3.0);
  CHECK(fixed_gamma_step(FixedGammaEstimator(5.0, 0.0), -3.0).mean() == 5.0);
  CHECK_THROWS_AS(FixedGammaEstimator(0.0, 1.5), ValidationError);
  CHECK_THROWS_AS(fixed_gamma_step(e, NAN), ValidationError);
}

TEST_CASE("naive Bayes counts") {
  NaiveBayesTable t(4);
  CHECK(t.count(0, 1) == 1.0);
  t.observe(0, 1);
  t.observe(0, 1);
  t.observe(0, 3);
  CHECK(t.count(0, 1) == 3.0);
  CHECK(t.count(0, 3) == 2.0);
  CHECK(t.count(0, 2) == 1.0);
  CHECK(t.count(1, 0) == 1.0);
  const auto u = naive_bayes_maze_step(t, 2, 1);
  CHECK(u.count(2, 1) == 2.0);
  CHECK(t.count(2, 1) == 1.0);
  CHECK_THROWS_AS(t.observe(1, 1), ValidationError);
}

TEST_CASE("online EM init") {
  const auto st = online_em_init(0.1, 0.05, 2000, 16, 0.01, 3, 0);
  CHECK_NOTHROW(st.validate());
  CHECK(st.p(0, 1) == 0.1);
  CHECK(st.p(1, 1) == 0.9);
  CHECK(st.t(0, 4, 4) == 0.0);
  CHECK(st.t(0, 4, 5) == doctest::Approx(1.0 / 15).epsilon(0.02));
  CHECK(st.t(0, 4, 5) != st.t(1, 4, 5));
  const auto same = online_em_init(0.1, 0.05, 2000, 16, 0.01, 3, 0);
  CHECK(same.t_hat == st.t_hat);
  CHECK_THROWS_AS(online_em_init(0.0), ConfigError);
  CHECK_THROWS_AS(online_em_init(0.1, 0.0), ConfigError);
  CHECK_THROWS_AS(online_em_init(0.1, 0.05, -1), ConfigError);
}

TEST_CASE("online EM single step by hand") {
  // Three states, no jitter: every row is uniform over the two other states,
  // so the first transition is equally likely under both environments.
  auto st = online_em_init(0.1, 0.05, 0, 3, 0.0);
  online_em_step_inplace(st, 0, 1);
  CHECK(st.q_hat[0] == doctest::Approx(0.5));
  CHECK(st.phi[st.phi_index(0, 0, 0, 1, 0)] == doctest::Approx(0.05 * 0.5 * 0.9));
  CHECK(st.phi[st.phi_index(0, 1, 0, 1, 1)] == doctest::Approx(0.05 * 0.5 * 0.1));
  CHECK(st.phi[st.phi_index(0, 1, 0, 1, 0)] == 0.0);
  // Burn-in 0: parameters re-estimated right away.
  CHECK(st.p(0, 0) == doctest::Approx(0.9));
  CHECK(st.t(0, 0, 1) == doctest::Approx(1.0));
  CHECK(st.t(0, 0, 2) == 0.0);
  // Rows without statistics keep their values.
  CHECK(st.t(0, 1, 0) == doctest::Approx(0.5));
  CHECK_FALSE(st.last_step_degenerate);
}

TEST_CASE("burn-in holds the parameters") {
  auto st = online_em_init(0.1, 0.05, 10, 3, 0.0);
  const auto t0 = st.t_hat;
  for (int i = 0; i < 10; ++i) online_em_step_inplace(st, i % 3, (i + 1) % 3);
  CHECK(st.t_hat == t0);
  online_em_step_inplace(st, 1, 2);
  CHECK(st.t_hat != t0);
}

TEST_CASE("degenerate denominator") {
  auto st = online_em_init(0.1, 0.05, 0, 3, 0.0);
  // Make 0 -> 1 impossible in both environments.
  for (std::size_t e = 0; e < 2; ++e) {
    st.t_hat[(e * 3 + 0) * 3 + 1] = 0.0;
    st.t_hat[(e * 3 + 0) * 3 + 2] = 1.0;
  }
  const auto q = st.q_hat;
  online_em_step_inplace(st, 0, 1);
  CHECK(st.last_step_degenerate);
  CHECK(st.degenerate_steps == 1);
  CHECK(std::isfinite(st.q_hat[0]));
  CHECK(st.q_hat[0] == doctest::Approx(q[0] * 0.9 + q[1] * 0.1));
}

TEST_CASE("property: stochastic invariants along a random stream") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> pick(0, 15);
  auto st = online_em_init(0.1, 0.05, 50, 16, 0.01, 1, 0);
  std::size_t s = 0;
  for (int t = 0; t < 2000; ++t) {
    std::size_t next = pick(rng);
    if (next == s) next = (s + 1) % 16;
    online_em_step_inplace(st, s, next);
    s = next;
    if (t % 100 == 0) {
      CHECK_NOTHROW(st.validate(1e-9));
      CHECK(em_predictive_matrix(st).is_row_stochastic(1e-9));
      CHECK(std::isfinite(st.q_hat[0]));
    }
  }
  // Transitions never seen during burn-in get zero probability in both
  // environments; meeting one later is a flagged degenerate step.
  CHECK(st.degenerate_steps > 0);
}

TEST_CASE("online EM recovers a two-environment chain") {
  // A cycles 0 -> 1 -> 2 -> 0, B cycles the other way; switches are rare.
  // A small eta is needed for the switch rate; eta = 0.05 averages over too
  // few switches to pin it down.
  std::mt19937_64 rng(52);
  std::bernoulli_distribution flip(0.01);
  auto st = online_em_init(0.1, 0.002, 500, 3, 0.05, 2, 0);
  int env = 0;
  std::size_t s = 0;
  double p_sum = 0.0;
  const int steps = 100000;
  for (int t = 0; t < steps; ++t) {
    if (flip(rng)) env = 1 - env;
    const std::size_t next = env == 0 ? (s + 1) % 3 : (s + 2) % 3;
    online_em_step_inplace(st, s, next);
    s = next;
    if (t >= steps / 2) p_sum += 0.5 * (st.p(0, 1) + st.p(1, 0));
  }
  // Environment labels are not identifiable; match by the 0 -> 1 entry.
  const std::size_t a = st.t(0, 0, 1) > st.t(1, 0, 1) ? 0 : 1;
  const std::size_t b = 1 - a;
  for (std::size_t r = 0; r < 3; ++r) {
    CHECK(st.t(a, r, (r + 1) % 3) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(st.t(b, r, (r + 2) % 3) == doctest::Approx(1.0).epsilon(0.05));
  }
  const double p_avg = p_sum / (steps / 2);
  CHECK(p_avg > 0.005);
  CHECK(p_avg < 0.02);
}
