#include "smile/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smile/special_functions.hpp"

namespace smile {

using special::digamma;
using special::log_gamma;

namespace {

void require_positive_params(std::span<const double> v) {
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ValidationError("Dirichlet parameters must be positive and finite");
    }
  }
}

void check_observed(std::size_t dim, std::size_t observed) {
  if (observed >= dim) {
    throw ValidationError("observed component " + std::to_string(observed) +
                          " out of range for dimension " + std::to_string(dim));
  }
}

}  // namespace

DirichletParams::DirichletParams(std::vector<double> alpha)
    : alpha_(std::move(alpha)) {
  if (alpha_.size() < 2) {
    throw ValidationError("Dirichlet needs at least two components");
  }
  for (double a : alpha_) {
    if (!(a >= 1.0) || !std::isfinite(a)) {
      throw ValidationError("Dirichlet parameters must be finite and >= 1");
    }
  }
}

DirichletParams DirichletParams::flat(std::size_t dim) {
  return DirichletParams(std::vector<double>(dim, 1.0));
}

double DirichletParams::total() const noexcept {
  return std::accumulate(alpha_.begin(), alpha_.end(), 0.0);
}

double kl_dirichlet(std::span<const double> m, std::span<const double> n) {
  if (m.size() != n.size()) {
    throw DimensionMismatch("Dirichlet parameter vectors differ in size");
  }
  require_positive_params(m);
  require_positive_params(n);
  const double m0 = std::accumulate(m.begin(), m.end(), 0.0);
  const double n0 = std::accumulate(n.begin(), n.end(), 0.0);
  const double psi_m0 = digamma(m0);
  double kl = log_gamma(m0) - log_gamma(n0);
  for (std::size_t k = 0; k < m.size(); ++k) {
    kl += log_gamma(n[k]) - log_gamma(m[k]);
    kl += (m[k] - n[k]) * (digamma(m[k]) - psi_m0);
  }
  return kl;
}

SurpriseValue kl_dirichlet(const DirichletParams& m, const DirichletParams& n) {
  return SurpriseValue(kl_dirichlet(m.alpha(), n.alpha()));
}

double dirichlet_entropy(std::span<const double> alpha) {
  require_positive_params(alpha);
  const double a0 = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  const double k = static_cast<double>(alpha.size());
  double h = -log_gamma(a0) + (a0 - k) * digamma(a0);
  for (double a : alpha) h += log_gamma(a) - (a - 1.0) * digamma(a);
  return h;
}

double dirichlet_entropy(const DirichletParams& alpha) {
  return dirichlet_entropy(alpha.alpha());
}

DirichletParams observation_params(std::size_t dim, std::size_t observed) {
  check_observed(dim, observed);
  std::vector<double> b(dim, 1.0);
  b[observed] = 2.0;
  return DirichletParams(std::move(b));
}

SurpriseValue dirichlet_surprise(const DirichletParams& current,
                                 std::size_t observed) {
  return kl_dirichlet(current, observation_params(current.size(), observed));
}

DirichletParams dirichlet_smile_update(const DirichletParams& a,
                                       std::size_t observed, double gamma) {
  check_observed(a.size(), observed);
  if (std::isnan(gamma) || gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("gamma must lie in [0, 1]");
  }
  if (gamma == 0.0) return a;
  std::vector<double> beta(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double target = (k == observed) ? 2.0 : 1.0;
    const double lo = std::min(a[k], target);
    const double hi = std::max(a[k], target);
    // Clamp so rounding cannot leave the segment [a, b].
    beta[k] = std::clamp(a[k] + gamma * (target - a[k]), lo, hi);
  }
  return DirichletParams(std::move(beta));
}

double solve_gamma_dirichlet(const DirichletParams& a, std::size_t observed,
                             double bound, const SmileConfig& config) {
  const DirichletParams b = observation_params(a.size(), observed);
  const double upper = kl_dirichlet(b, a).nats();
  return solve_gamma_bisection(
             [&](double g) {
               return kl_dirichlet(dirichlet_smile_update(a, observed, g), a)
                   .nats();
             },
             bound, upper, config)
      .gamma;
}

double DirichletFamily::kl(const DirichletParams& p, const DirichletParams& q) {
  return kl_dirichlet(p, q).nats();
}

DirichletParams DirichletFamily::scaled_likelihood(
    const DirichletParams& belief, const DirichletObservation& x) {
  return observation_params(belief.size(), x.observed);
}

DirichletParams DirichletFamily::geometric_mix(const DirichletParams& belief,
                                               const DirichletObservation& x,
                                               double gamma) {
  return dirichlet_smile_update(belief, x.observed, gamma);
}

TransitionBeliefTable::TransitionBeliefTable(std::size_t num_states) {
  if (num_states < 3) {
    throw ValidationError("a transition table needs at least three states");
  }
  rows_.assign(num_states, DirichletParams::flat(num_states - 1));
}

TransitionBeliefTable::TransitionBeliefTable(std::vector<DirichletParams> rows)
    : rows_(std::move(rows)) {
  if (rows_.size() < 3) {
    throw ValidationError("a transition table needs at least three states");
  }
  for (const auto& r : rows_) {
    if (r.size() != rows_.size() - 1) {
      throw DimensionMismatch("each row needs num_states - 1 components");
    }
  }
}

const DirichletParams& TransitionBeliefTable::row(std::size_t s) const {
  if (s >= rows_.size()) throw ValidationError("state id out of range");
  return rows_[s];
}

void TransitionBeliefTable::set_row(std::size_t s, DirichletParams params) {
  if (s >= rows_.size()) throw ValidationError("state id out of range");
  if (params.size() != rows_.size() - 1) {
    throw DimensionMismatch("row needs num_states - 1 components");
  }
  rows_[s] = std::move(params);
}

std::size_t TransitionBeliefTable::component(std::size_t s,
                                             std::size_t next) const {
  const std::size_t n = rows_.size();
  if (s >= n || next >= n) throw ValidationError("state id out of range");
  if (s == next) {
    throw ValidationError("self-transition " + std::to_string(s) +
                          " is not part of the model");
  }
  return next < s ? next : next - 1;
}

std::size_t TransitionBeliefTable::state_of(std::size_t s,
                                            std::size_t component) const {
  if (s >= rows_.size() || component + 1 >= rows_.size()) {
    throw ValidationError("state or component out of range");
  }
  return component < s ? component : component + 1;
}

TransitionMatrix estimate_transition_matrix(const TransitionBeliefTable& table,
                                            double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ValidationError("estimator epsilon must be positive");
  }
  const std::size_t n = table.num_states();
  TransitionMatrix t(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto alpha = table.row(s).alpha();
    double denom = 0.0;
    for (double a : alpha) denom += a - 1.0 + eps;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      t(s, table.state_of(s, k)) = (alpha[k] - 1.0 + eps) / denom;
    }
  }
  return t;
}

double belief_entropy_total(const TransitionBeliefTable& table) {
  double h = 0.0;
  for (const auto& r : table.rows()) h += dirichlet_entropy(r);
  return h;
}

SmileStepDiagnostics maze_smile_step_inplace(TransitionBeliefTable& table,
                                             std::size_t s, std::size_t next,
                                             const SmileConfig& config) {
  const std::size_t k = table.component(s, next);
  auto result =
      smile_step_generic<DirichletFamily>(table.row(s), {k}, config);
  table.set_row(s, std::move(result.belief));
  return result.diagnostics;
}

SmileResult<TransitionBeliefTable> maze_smile_step(
    const TransitionBeliefTable& table, std::size_t s, std::size_t next,
    const SmileConfig& config) {
  TransitionBeliefTable updated = table;
  SmileStepDiagnostics d = maze_smile_step_inplace(updated, s, next, config);
  return {std::move(updated), d};
}

}  // namespace smile
