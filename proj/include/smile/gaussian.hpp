#pragma once

// Gaussian belief over an unknown mean with known observation variance.
//
// The SMiLe mixture of two Gaussians is Gaussian with precision
// gamma / sigma_x^2 + (1 - gamma) / sigma^2. When the belief variance equals
// the observation variance, gamma has the closed form sqrt(mS / (1 + mS)) and
// the variance is a fixed point of the update.

#include "smile/engine.hpp"

namespace smile {

class GaussianBelief {
 public:
  GaussianBelief(double mean, double variance);

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }

 private:
  double mean_;
  double variance_;
};

class GaussianObservation {
 public:
  GaussianObservation(double value, double obs_variance);

  double value() const noexcept { return value_; }
  double obs_variance() const noexcept { return obs_variance_; }

 private:
  double value_;
  double obs_variance_;
};

// KL[N(a1, b1sq) || N(a2, b2sq)].
double kl_gaussian(double a1, double b1sq, double a2, double b2sq);

// KL(belief || N(X, sigma_x^2)). Reduces to (X - mu)^2 / (2 sigma_x^2) when
// the two variances agree.
SurpriseValue gaussian_surprise(const GaussianBelief& belief,
                                const GaussianObservation& obs);

// sqrt(m s / (1 + m s)).
double gaussian_gamma(double surprise, double m);

struct GaussianFamily {
  using Belief = GaussianBelief;
  using Observation = GaussianObservation;

  static double kl(const GaussianBelief& p, const GaussianBelief& q);
  static GaussianBelief scaled_likelihood(const GaussianBelief& belief,
                                          const GaussianObservation& obs);
  static GaussianBelief geometric_mix(const GaussianBelief& belief,
                                      const GaussianObservation& obs,
                                      double gamma);
};

// Equal variances use the closed-form gamma; otherwise gamma comes from the
// generic bound solver. Diagnostics are filled in either way.
SmileResult<GaussianBelief> gaussian_smile_step(const GaussianBelief& belief,
                                                const GaussianObservation& obs,
                                                double m);

}  // namespace smile
