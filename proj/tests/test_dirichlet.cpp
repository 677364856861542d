#include <doctest.h>

#include <cmath>
#include <random>

#include "smile/dirichlet.hpp"
#include "smile/errors.hpp"

using namespace smile;

TEST_CASE("KL and entropy on frozen values") {
  const std::vector<double> a{2.0, 3.0, 1.5};
  const std::vector<double> b{1.0, 1.0, 2.0};
  CHECK(kl_dirichlet(a, b) == doctest::Approx(1.0662673400106672438).epsilon(1e-13));
  CHECK(kl_dirichlet(b, a) == doctest::Approx(1.7848956856289468927).epsilon(1e-13));
  CHECK(dirichlet_entropy(a) == doctest::Approx(-1.1016054528173658232).epsilon(1e-13));
  CHECK(dirichlet_entropy(DirichletParams::flat(15)) ==
        doctest::Approx(-25.1912211827386815).epsilon(1e-13));
  CHECK(kl_dirichlet(a, a) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("surprise of one observation") {
  // KL[Dir(2, 3, 1.5) || Dir(1, 2, 1)].
  const DirichletParams a({2.0, 3.0, 1.5});
  CHECK(dirichlet_surprise(a, 1).nats() ==
        doctest::Approx(0.17997297889077662492).epsilon(1e-13));
  const auto obs = observation_params(3, 1);
  CHECK(obs == DirichletParams({1.0, 2.0, 1.0}));
}

TEST_CASE("update is a convex combination of parameters") {
  const DirichletParams a({2.0, 3.0, 1.5});
  const auto q = dirichlet_smile_update(a, 2, 0.25);
  CHECK(q[0] == doctest::Approx(0.75 * 2.0 + 0.25 * 1.0));
  CHECK(q[1] == doctest::Approx(0.75 * 3.0 + 0.25 * 1.0));
  CHECK(q[2] == doctest::Approx(0.75 * 1.5 + 0.25 * 2.0));
  CHECK(dirichlet_smile_update(a, 2, 0.0) == a);
  CHECK(dirichlet_smile_update(a, 2, 1.0) == observation_params(3, 2));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(DirichletParams({1.0}), ValidationError);
  CHECK_THROWS_AS(DirichletParams({0.5, 2.0}), ValidationError);
  CHECK_THROWS_AS(dirichlet_surprise(DirichletParams::flat(3), 3), ValidationError);
  CHECK_THROWS_AS(dirichlet_smile_update(DirichletParams::flat(3), 0, 1.2),
                  ValidationError);
  CHECK_THROWS_AS(TransitionBeliefTable(2), ValidationError);
  TransitionBeliefTable t(4);
  CHECK_THROWS_AS(t.component(1, 1), ValidationError);
  CHECK_THROWS_AS(t.component(4, 0), ValidationError);
  CHECK_THROWS_AS(t.set_row(0, DirichletParams::flat(4)), DimensionMismatch);
  CHECK_THROWS_AS(estimate_transition_matrix(t, 0.0), ValidationError);
}

TEST_CASE("component mapping skips the diagonal") {
  TransitionBeliefTable t(5);
  CHECK(t.component(2, 0) == 0);
  CHECK(t.component(2, 1) == 1);
  CHECK(t.component(2, 3) == 2);
  CHECK(t.component(2, 4) == 3);
  for (std::size_t s = 0; s < 5; ++s) {
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(t.component(s, t.state_of(s, k)) == k);
    }
  }
}

TEST_CASE("estimator") {
  TransitionBeliefTable t(4);
  // Flat rows give a uniform estimate over the other states.
  const auto flat = estimate_transition_matrix(t);
  CHECK(flat(0, 0) == 0.0);
  CHECK(flat(0, 1) == doctest::Approx(1.0 / 3));
  t.set_row(0, DirichletParams({3.0, 1.0, 2.0}));
  const double eps = 1e-6;
  const auto est = estimate_transition_matrix(t, eps);
  const double z = 2 + eps + eps + 1 + eps;
  CHECK(est(0, 1) == doctest::Approx((2 + eps) / z));
  CHECK(est(0, 2) == doctest::Approx(eps / z));
  CHECK(est(0, 3) == doctest::Approx((1 + eps) / z));
  CHECK(est.is_row_stochastic(1e-12));
}

TEST_CASE("maze step touches only the visited row") {
  TransitionBeliefTable t(16);
  const auto r = maze_smile_step(t, 3, 7);
  for (std::size_t s = 0; s < 16; ++s) {
    if (s != 3) CHECK(r.belief.row(s) == t.row(s));
  }
  const auto& row = r.belief.row(3);
  const double g = r.diagnostics.gamma;
  CHECK(g > 0.0);
  CHECK(row[t.component(3, 7)] == doctest::Approx(1.0 + g));
  CHECK(row[t.component(3, 0)] == doctest::Approx(1.0));

  TransitionBeliefTable inplace(16);
  const auto d = maze_smile_step_inplace(inplace, 3, 7);
  CHECK(inplace == r.belief);
  CHECK(d.gamma == g);
}

TEST_CASE("belief_entropy_total sums the rows") {
  TransitionBeliefTable t(4);
  CHECK(belief_entropy_total(t) ==
        doctest::Approx(4 * dirichlet_entropy(DirichletParams::flat(3))));
}

TEST_CASE("property: parameters stay >= 1 and the update is plausible") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(1.0, 30.0);
  std::uniform_real_distribution<double> um(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const std::size_t k = 2 + i % 14;
    std::vector<double> a(k);
    for (auto& x : a) x = u(rng);
    const DirichletParams p(a);
    const std::size_t obs = static_cast<std::size_t>(i) % k;
    SmileConfig cfg;
    cfg.m = um(rng);
    const auto r = smile_step_generic<DirichletFamily>(p, {obs}, cfg);
    for (double v : r.belief.alpha()) CHECK(v >= 1.0);
    CHECK(dirichlet_surprise(r.belief, obs).nats() <=
          dirichlet_surprise(p, obs).nats() + 1e-12);
    CHECK(kl_dirichlet(r.belief, p).nats() ==
          doctest::Approx(r.diagnostics.bound).epsilon(1e-9).scale(1.0));
    double prev = 0.0;
    for (int j = 0; j <= 10; ++j) {
      const double kl = kl_dirichlet(dirichlet_smile_update(p, obs, 0.1 * j), p).nats();
      CHECK(kl >= prev - 1e-12);
      prev = kl;
    }
  }
}

TEST_CASE("property: solver hits the bound") {
  const DirichletParams a({4.0, 1.0, 2.0, 7.0});
  const double upper = kl_dirichlet(observation_params(4, 1), a).nats();
  for (double frac : {0.1, 0.5, 0.9}) {
    const double g = solve_gamma_dirichlet(a, 1, frac * upper);
    CHECK(kl_dirichlet(dirichlet_smile_update(a, 1, g), a).nats() ==
          doctest::Approx(frac * upper).epsilon(1e-9));
  }
}
