#pragma once

// Surprise-minimizing belief update.
//
// Given a belief pi and a datum X with scaled likelihood p_hat, the update is
// the geometric mixture q_gamma ~ p(X|theta)^gamma pi(theta)^(1-gamma). The
// mixing weight gamma is chosen so that KL(q_gamma || pi) equals a bound B
// that grows with the surprise of X:
//
//   B = m S / (1 + m S) * B_max,     B_max = KL(p_hat || pi),
//
// with S = KL(pi || p_hat). KL(q_gamma || pi) is nondecreasing in gamma, so
// gamma is found by bisection on [0, 1].

#include <cmath>
#include <concepts>
#include <limits>
#include <utility>

#include "smile/errors.hpp"
#include "smile/surprise.hpp"

namespace smile {

// Stand-in for an infinite B_max (scaled likelihood not absolutely continuous
// with respect to the belief).
inline constexpr double kMaxBoundCap = 1e6;

struct SmileConfig {
  double m = 0.1;
  double gamma_tolerance = 1e-10;
  int max_bisection_iters = 200;

  void validate() const;
};

struct SmileStepDiagnostics {
  double surprise = 0.0;  // S_cc before the update
  double b_max = 0.0;
  double bound = 0.0;
  double gamma = 0.0;
  double impact = 0.0;  // S_cc(old) - S_cc(new)
  bool b_max_capped = false;
  int solver_iterations = 0;
  double solver_residual = 0.0;
};

template <class Belief>
struct SmileResult {
  Belief belief;
  SmileStepDiagnostics diagnostics;
};

// A family of beliefs closed under geometric mixing with its own scaled
// likelihoods. kl() returns +infinity rather than throwing on a support
// violation.
template <class F>
concept BeliefFamily = requires(const typename F::Belief& b,
                                const typename F::Observation& x, double g) {
  { F::kl(b, b) } -> std::convertible_to<double>;
  { F::scaled_likelihood(b, x) } -> std::convertible_to<typename F::Belief>;
  { F::geometric_mix(b, x, g) } -> std::convertible_to<typename F::Belief>;
};

double bound_from_surprise(double surprise, double m, double b_max);

struct GammaSolution {
  double gamma = 0.0;
  double residual = 0.0;  // KL(q_gamma || pi) - bound
  int iterations = 0;
  bool saturated = false;  // gamma pinned to 1 without meeting the bound
};

// Bisection for KL(q_gamma || pi) = bound on [0, 1] given a callable that
// evaluates gamma -> KL(q_gamma || pi). bound >= b_max yields gamma = 1,
// bound <= 0 yields 0. When the bound function has a jump at gamma = 1 (a
// capped b_max), a bracket that collapses onto 1 is accepted as saturation.
template <class KlAt>
GammaSolution solve_gamma_bisection(KlAt&& kl_at, double bound, double b_max,
                                    const SmileConfig& config,
                                    bool b_max_capped = false) {
  config.validate();
  if (std::isnan(bound) || bound < 0.0) {
    throw ValidationError("bound must be non-negative");
  }
  if (bound == 0.0) return {0.0, 0.0, 0, false};
  if (bound >= b_max) return {1.0, 0.0, 0, false};

  double lo = 0.0;
  double hi = 1.0;
  double g_lo = -bound;
  double g_hi = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= config.max_bisection_iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      if (b_max_capped && hi == 1.0) return {1.0, g_lo, it, true};
      throw SolverError("gamma bisection bracket collapsed", lo, hi, g_lo,
                        g_hi, it);
    }
    const double g = kl_at(mid) - bound;
    if (std::abs(g) <= config.gamma_tolerance) return {mid, g, it, false};
    if (g < 0.0) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
      g_hi = g;
    }
  }
  throw SolverError("gamma bisection did not converge", lo, hi, g_lo, g_hi,
                    config.max_bisection_iters);
}

// One surprise-modulated step for any belief family: surprise first, then
// B_max, the bound, gamma, and finally the mixture.
template <BeliefFamily F>
SmileResult<typename F::Belief> smile_step_generic(
    const typename F::Belief& belief, const typename F::Observation& x,
    const SmileConfig& config) {
  config.validate();
  const typename F::Belief target = F::scaled_likelihood(belief, x);

  SmileStepDiagnostics d;
  d.surprise = F::kl(belief, target);
  if (!std::isfinite(d.surprise)) {
    throw InfiniteDivergence(
        "surprise is infinite: belief has mass where the likelihood vanishes");
  }
  d.b_max = F::kl(target, belief);
  if (!std::isfinite(d.b_max)) {
    d.b_max = kMaxBoundCap;
    d.b_max_capped = true;
  }
  d.bound = bound_from_surprise(d.surprise, config.m, d.b_max);

  const GammaSolution sol = solve_gamma_bisection(
      [&](double g) { return F::kl(F::geometric_mix(belief, x, g), belief); },
      d.bound, d.b_max, config, d.b_max_capped);
  d.gamma = sol.gamma;
  d.solver_iterations = sol.iterations;
  d.solver_residual = sol.residual;

  if (d.gamma == 0.0) return {belief, d};
  typename F::Belief updated = F::geometric_mix(belief, x, d.gamma);
  d.impact = std::max(0.0, d.surprise - F::kl(updated, target));
  return {std::move(updated), d};
}

// ---------------------------------------------------------------------------
// Categorical family.

struct CategoricalFamily {
  using Belief = CategoricalBelief;
  using Observation = LikelihoodRow;

  static double kl(const CategoricalBelief& p, const CategoricalBelief& q);
  static CategoricalBelief scaled_likelihood(const CategoricalBelief& belief,
                                             const LikelihoodRow& row);
  static CategoricalBelief geometric_mix(const CategoricalBelief& belief,
                                         const LikelihoodRow& row,
                                         double gamma);
};

// q_gamma ~ p(X|theta)^gamma pi^(1-gamma). gamma = 0 returns the belief and
// gamma = 1 the scaled likelihood exactly (0^0 = 1 at the endpoints).
CategoricalBelief smile_update(const CategoricalBelief& belief,
                               const LikelihoodRow& row, double gamma);

// KL(scaled likelihood || belief); +infinity on a support violation.
double b_max(const CategoricalBelief& belief, const LikelihoodRow& row);

double solve_gamma(const CategoricalBelief& belief, const LikelihoodRow& row,
                   double bound, const SmileConfig& config = {});

// S_cc(X; pi) - S_cc(X; q_gamma). Zero at gamma = 0.
double impact(const CategoricalBelief& belief, const LikelihoodRow& row,
              double gamma);

// Right-hand side of the impact identity,
// (1/gamma) KL(pi||q) + (1/gamma - 1) KL(q||pi), for gamma in (0, 1].
double impact_from_belief_change(const CategoricalBelief& belief,
                                 const LikelihoodRow& row, double gamma);

SmileResult<CategoricalBelief> smile_step(const CategoricalBelief& belief,
                                          const LikelihoodRow& row,
                                          const SmileConfig& config = {});

}  // namespace smile
