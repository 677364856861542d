#pragma once

// Comparison learners: a delta rule with a constant learning rate, a naive
// Bayesian transition counter, and online EM for the two-environment hidden
// Markov model of the maze.

#include <array>
#include <cstdint>
#include <vector>

#include "smile/dirichlet.hpp"
#include "smile/environments.hpp"
#include "smile/transition_matrix.hpp"

namespace smile {

// ---------------------------------------------------------------------------
// Delta rule.

class FixedGammaEstimator {
 public:
  FixedGammaEstimator(double mean, double gamma);

  double mean() const noexcept { return mean_; }
  double gamma() const noexcept { return gamma_; }

 private:
  double mean_;
  double gamma_;
};

// mean <- gamma x + (1 - gamma) mean.
FixedGammaEstimator fixed_gamma_step(const FixedGammaEstimator& est, double x);

// ---------------------------------------------------------------------------
// Naive Bayes: Dirichlet counts that never forget.

class NaiveBayesTable {
 public:
  explicit NaiveBayesTable(std::size_t num_states = kDefaultNumStates);
  explicit NaiveBayesTable(TransitionBeliefTable counts);

  const TransitionBeliefTable& counts() const noexcept { return counts_; }
  std::size_t num_states() const noexcept { return counts_.num_states(); }
  double count(std::size_t s, std::size_t next) const;

  // count(s, next) += 1.
  void observe(std::size_t s, std::size_t next);

  bool operator==(const NaiveBayesTable&) const = default;

 private:
  TransitionBeliefTable counts_;
};

NaiveBayesTable naive_bayes_maze_step(const NaiveBayesTable& table,
                                      std::size_t s, std::size_t next);

// ---------------------------------------------------------------------------
// Online EM.

inline constexpr std::size_t kNumEnvironments = 2;
inline constexpr double kEmDenominatorFloor = 1e-300;
inline constexpr double kDefaultEta = 0.05;
inline constexpr int kDefaultBurnIn = 2000;
inline constexpr double kDefaultSwitchHint = 0.1;
inline constexpr double kDefaultInitJitter = 0.01;

// Environments are indexed 0 and 1. t_hat is [env][s][s'], phi is
// [i][j][s][s'][h] flattened in that order.
struct OnlineEmState {
  std::size_t num_states = kDefaultNumStates;
  std::array<double, 4> p_hat{};  // [i][j]
  std::vector<double> t_hat;
  std::array<double, kNumEnvironments> q_hat{0.5, 0.5};
  std::vector<double> phi;
  double eta = kDefaultEta;
  std::int64_t step_count = 0;
  std::int64_t burn_in = kDefaultBurnIn;
  bool last_step_degenerate = false;
  std::int64_t degenerate_steps = 0;

  double p(std::size_t i, std::size_t j) const { return p_hat[i * 2 + j]; }
  double t(std::size_t env, std::size_t s, std::size_t next) const {
    return t_hat[(env * num_states + s) * num_states + next];
  }
  std::size_t phi_index(std::size_t i, std::size_t j, std::size_t s,
                        std::size_t next, std::size_t h) const {
    return (((i * 2 + j) * num_states + s) * num_states + next) * 2 + h;
  }

  // Throws ValidationError when a stochasticity invariant is broken.
  void validate(double tol = 1e-10) const;
};

// P off-diagonals = switch_hint; T rows uniform over the other states times
// (1 + jitter * U(-1, 1)) and renormalized; q = (0.5, 0.5); phi = 0. The
// jitter comes from the learner stream of (seed, index).
OnlineEmState online_em_init(double switch_hint = kDefaultSwitchHint,
                             double eta = kDefaultEta,
                             std::int64_t burn_in = kDefaultBurnIn,
                             std::size_t num_states = kDefaultNumStates,
                             double jitter = kDefaultInitJitter,
                             std::uint64_t seed = 0, std::uint64_t index = 0);

// One observed transition s_prev -> s_curr: auxiliary variables from the
// previous parameters, then q, then the sufficient statistics, then (after
// burn-in) the parameters.
OnlineEmState online_em_step(const OnlineEmState& state, std::size_t s_prev,
                             std::size_t s_curr);
void online_em_step_inplace(OnlineEmState& state, std::size_t s_prev,
                            std::size_t s_curr);

// Transition matrix of one environment.
TransitionMatrix em_transition_matrix(const OnlineEmState& state,
                                      std::size_t env);

// Next-step prediction: sum_h (sum_l q_l P_lh) T_h.
TransitionMatrix em_predictive_matrix(const OnlineEmState& state);

}  // namespace smile
