#include "smile/baselines.hpp"

#include <cmath>
#include <string>

#include "smile/errors.hpp"

namespace smile {

FixedGammaEstimator::FixedGammaEstimator(double mean, double gamma)
    : mean_(mean), gamma_(gamma) {
  if (!std::isfinite(mean)) throw ValidationError("mean must be finite");
  if (std::isnan(gamma) || gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("gamma must lie in [0, 1]");
  }
}

FixedGammaEstimator fixed_gamma_step(const FixedGammaEstimator& est, double x) {
  if (!std::isfinite(x)) throw ValidationError("sample must be finite");
  const double g = est.gamma();
  if (g == 1.0) return {x, g};
  return {g * x + (1.0 - g) * est.mean(), g};
}

NaiveBayesTable::NaiveBayesTable(std::size_t num_states) : counts_(num_states) {}

NaiveBayesTable::NaiveBayesTable(TransitionBeliefTable counts)
    : counts_(std::move(counts)) {}

double NaiveBayesTable::count(std::size_t s, std::size_t next) const {
  return counts_.row(s)[counts_.component(s, next)];
}

void NaiveBayesTable::observe(std::size_t s, std::size_t next) {
  const std::size_t k = counts_.component(s, next);
  std::vector<double> alpha(counts_.row(s).alpha().begin(),
                            counts_.row(s).alpha().end());
  alpha[k] += 1.0;
  counts_.set_row(s, DirichletParams(std::move(alpha)));
}

NaiveBayesTable naive_bayes_maze_step(const NaiveBayesTable& table,
                                      std::size_t s, std::size_t next) {
  NaiveBayesTable out = table;
  out.observe(s, next);
  return out;
}

// ---------------------------------------------------------------------------

void OnlineEmState::validate(double tol) const {
  const std::size_t n = num_states;
  if (t_hat.size() != kNumEnvironments * n * n ||
      phi.size() != 4 * n * n * 2) {
    throw ValidationError("online EM state has inconsistent sizes");
  }
  if (std::abs(q_hat[0] + q_hat[1] - 1.0) > tol || q_hat[0] < 0.0 ||
      q_hat[1] < 0.0) {
    throw ValidationError("environment posterior is not a distribution");
  }
  for (std::size_t i = 0; i < 2; ++i) {
    if (std::abs(p(i, 0) + p(i, 1) - 1.0) > tol) {
      throw ValidationError("switch matrix row " + std::to_string(i) +
                            " does not sum to one");
    }
  }
  for (std::size_t e = 0; e < kNumEnvironments; ++e) {
    for (std::size_t s = 0; s < n; ++s) {
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += t(e, s, k);
      if (std::abs(sum - 1.0) > tol) {
        throw ValidationError("transition row does not sum to one");
      }
    }
  }
  for (double v : phi) {
    if (!(v >= 0.0)) throw ValidationError("negative sufficient statistic");
  }
}

OnlineEmState online_em_init(double switch_hint, double eta,
                             std::int64_t burn_in, std::size_t num_states,
                             double jitter, std::uint64_t seed,
                             std::uint64_t index) {
  if (!(switch_hint > 0.0 && switch_hint < 1.0)) {
    throw ConfigError("switch hint must lie in (0, 1)");
  }
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
  if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
  if (num_states < 3) throw ConfigError("need at least three states");
  if (!(jitter >= 0.0 && jitter < 1.0)) {
    throw ConfigError("jitter must lie in [0, 1)");
  }

  OnlineEmState st;
  st.num_states = num_states;
  st.eta = eta;
  st.burn_in = burn_in;
  st.p_hat = {1.0 - switch_hint, switch_hint, switch_hint, 1.0 - switch_hint};
  st.t_hat.assign(kNumEnvironments * num_states * num_states, 0.0);
  st.phi.assign(4 * num_states * num_states * 2, 0.0);

  Rng rng = make_rng(seed, kLearnerStream, index);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (std::size_t e = 0; e < kNumEnvironments; ++e) {
    for (std::size_t s = 0; s < num_states; ++s) {
      double* row = &st.t_hat[(e * num_states + s) * num_states];
      double sum = 0.0;
      for (std::size_t k = 0; k < num_states; ++k) {
        if (k == s) continue;
        row[k] = 1.0 + jitter * noise(rng);
        sum += row[k];
      }
      for (std::size_t k = 0; k < num_states; ++k) row[k] /= sum;
    }
  }
  return st;
}

void online_em_step_inplace(OnlineEmState& st, std::size_t s_prev,
                            std::size_t s_curr) {
  const std::size_t n = st.num_states;
  if (s_prev >= n || s_curr >= n) throw ValidationError("state id out of range");

  // Auxiliary variables from the previous parameters.
  double denom = 0.0;
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t h = 0; h < 2; ++h) {
      denom += st.q_hat[m] * st.p(m, h) * st.t(h, s_prev, s_curr);
    }
  }
  std::array<double, 4> aux{};
  st.last_step_degenerate = !(denom > kEmDenominatorFloor);
  if (st.last_step_degenerate) {
    // No environment can explain the transition; treat it as uninformative.
    ++st.degenerate_steps;
    aux = st.p_hat;
  } else {
    for (std::size_t l = 0; l < 2; ++l) {
      for (std::size_t h = 0; h < 2; ++h) {
        aux[l * 2 + h] = st.p(l, h) * st.t(h, s_prev, s_curr) / denom;
      }
    }
  }

  const std::array<double, 2> q_prev = st.q_hat;
  std::array<double, 2> q{};
  for (std::size_t h = 0; h < 2; ++h) {
    q[h] = q_prev[0] * aux[h] + q_prev[1] * aux[2 + h];
  }
  const double q_sum = q[0] + q[1];
  st.q_hat = {q[0] / q_sum, q[1] / q_sum};

  // Sufficient statistics: phi_h <- sum_l aux_lh ((1 - eta) phi_l + eta q_l D).
  const double keep = 1.0 - st.eta;
  for (std::size_t base = 0; base < st.phi.size(); base += 2) {
    const double f0 = st.phi[base];
    const double f1 = st.phi[base + 1];
    st.phi[base] = keep * (aux[0] * f0 + aux[2] * f1);
    st.phi[base + 1] = keep * (aux[1] * f0 + aux[3] * f1);
  }
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t h = 0; h < 2; ++h) {
      st.phi[st.phi_index(i, h, s_prev, s_curr, h)] +=
          st.eta * q_prev[i] * aux[i * 2 + h];
    }
  }

  ++st.step_count;
  if (st.step_count <= st.burn_in) return;

  // Parameters from the statistics. A row with no mass keeps its old value.
  for (std::size_t i = 0; i < 2; ++i) {
    std::array<double, 2> mass{};
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t idx = st.phi_index(i, j, s, k, 0);
          mass[j] += st.phi[idx] + st.phi[idx + 1];
        }
      }
    }
    const double total = mass[0] + mass[1];
    if (total > 0.0) {
      st.p_hat[i * 2] = mass[0] / total;
      st.p_hat[i * 2 + 1] = mass[1] / total;
    }
  }
  std::vector<double> row(n);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t s = 0; s < n; ++s) {
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        double v = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
          const std::size_t idx = st.phi_index(i, j, s, k, 0);
          v += st.phi[idx] + st.phi[idx + 1];
        }
        row[k] = v;
        total += v;
      }
      if (!(total > 0.0)) continue;
      double* out = &st.t_hat[(j * n + s) * n];
      for (std::size_t k = 0; k < n; ++k) out[k] = row[k] / total;
    }
  }
}

OnlineEmState online_em_step(const OnlineEmState& state, std::size_t s_prev,
                             std::size_t s_curr) {
  OnlineEmState out = state;
  online_em_step_inplace(out, s_prev, s_curr);
  return out;
}

TransitionMatrix em_transition_matrix(const OnlineEmState& state,
                                      std::size_t env) {
  if (env >= kNumEnvironments) throw ValidationError("environment out of range");
  const std::size_t n = state.num_states;
  TransitionMatrix t(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) t(s, k) = state.t(env, s, k);
  }
  return t;
}

TransitionMatrix em_predictive_matrix(const OnlineEmState& state) {
  const std::size_t n = state.num_states;
  std::array<double, 2> w{};
  for (std::size_t h = 0; h < 2; ++h) {
    w[h] = state.q_hat[0] * state.p(0, h) + state.q_hat[1] * state.p(1, h);
  }
  TransitionMatrix t(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      t(s, k) = w[0] * state.t(0, s, k) + w[1] * state.t(1, s, k);
    }
  }
  return t;
}

}  // namespace smile
