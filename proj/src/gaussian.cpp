#include "smile/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace smile {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

GaussianBelief::GaussianBelief(double mean, double variance)
    : mean_(mean), variance_(variance) {
  if (!std::isfinite(mean)) throw ValidationError("belief mean must be finite");
  if (!positive_finite(variance)) {
    throw ValidationError("belief variance must be positive and finite");
  }
}

GaussianObservation::GaussianObservation(double value, double obs_variance)
    : value_(value), obs_variance_(obs_variance) {
  if (!std::isfinite(value)) throw ValidationError("observation must be finite");
  if (!positive_finite(obs_variance)) {
    throw ValidationError("observation variance must be positive and finite");
  }
}

double kl_gaussian(double a1, double b1sq, double a2, double b2sq) {
  if (!positive_finite(b1sq) || !positive_finite(b2sq)) {
    throw ValidationError("Gaussian variances must be positive and finite");
  }
  const double d = a1 - a2;
  const double ratio = b1sq / b2sq;
  // ratio - 1 - ln ratio loses everything near ratio = 1; log1p keeps it.
  const double r = ratio - 1.0;
  const double shape = r - std::log1p(r);
  return std::max(0.0, d * d / (2.0 * b2sq) + 0.5 * shape);
}

SurpriseValue gaussian_surprise(const GaussianBelief& belief,
                                const GaussianObservation& obs) {
  if (belief.variance() == obs.obs_variance()) {
    const double d = obs.value() - belief.mean();
    return SurpriseValue(d * d / (2.0 * obs.obs_variance()));
  }
  return SurpriseValue(kl_gaussian(belief.mean(), belief.variance(),
                                   obs.value(), obs.obs_variance()));
}

double gaussian_gamma(double surprise, double m) {
  if (std::isnan(surprise) || surprise < 0.0) {
    throw ValidationError("surprise must be non-negative");
  }
  if (std::isnan(m) || m < 0.0) throw ValidationError("m must be non-negative");
  const double ms = m * surprise;
  if (std::isinf(ms)) return 1.0;
  return std::sqrt(ms / (1.0 + ms));
}

double GaussianFamily::kl(const GaussianBelief& p, const GaussianBelief& q) {
  return kl_gaussian(p.mean(), p.variance(), q.mean(), q.variance());
}

GaussianBelief GaussianFamily::scaled_likelihood(const GaussianBelief&,
                                                 const GaussianObservation& obs) {
  return GaussianBelief(obs.value(), obs.obs_variance());
}

GaussianBelief GaussianFamily::geometric_mix(const GaussianBelief& belief,
                                             const GaussianObservation& obs,
                                             double gamma) {
  if (std::isnan(gamma) || gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("gamma must lie in [0, 1]");
  }
  if (gamma == 0.0) return belief;
  if (gamma == 1.0) return scaled_likelihood(belief, obs);
  const double obs_var = obs.obs_variance();
  const double var = belief.variance();
  // Weight on the datum, gamma sigma^2 / ((1 - gamma) sigma_x^2 + gamma sigma^2).
  const double w = gamma * var / ((1.0 - gamma) * obs_var + gamma * var);
  const double mean = belief.mean() + w * (obs.value() - belief.mean());
  const double precision = gamma / obs_var + (1.0 - gamma) / var;
  return GaussianBelief(mean, 1.0 / precision);
}

SmileResult<GaussianBelief> gaussian_smile_step(const GaussianBelief& belief,
                                                const GaussianObservation& obs,
                                                double m) {
  SmileConfig config;
  config.m = m;
  config.validate();
  if (belief.variance() != obs.obs_variance()) {
    return smile_step_generic<GaussianFamily>(belief, obs, config);
  }

  SmileStepDiagnostics d;
  d.surprise = gaussian_surprise(belief, obs).nats();
  // Equal variances make KL symmetric, so B_max = S.
  d.b_max = d.surprise;
  d.bound = bound_from_surprise(d.surprise, m, d.b_max);
  d.gamma = gaussian_gamma(d.surprise, m);
  if (d.gamma == 0.0) return {belief, d};

  const double mean =
      d.gamma * obs.value() + (1.0 - d.gamma) * belief.mean();
  GaussianBelief updated(mean, belief.variance());
  // The new mean sits (1 - gamma) of the way from X, so S shrinks by
  // (1 - gamma)^2.
  const double remaining = (1.0 - d.gamma) * (1.0 - d.gamma);
  d.impact = d.surprise * (1.0 - remaining);
  return {updated, d};
}

}  // namespace smile
