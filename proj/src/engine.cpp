#include "smile/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace smile {

void SmileConfig::validate() const {
  if (std::isnan(m) || m < 0.0) throw ConfigError("m must be non-negative");
  if (!(gamma_tolerance > 0.0)) {
    throw ConfigError("gamma_tolerance must be positive");
  }
  if (max_bisection_iters < 1) {
    throw ConfigError("max_bisection_iters must be at least 1");
  }
}

double bound_from_surprise(double surprise, double m, double b_max) {
  if (std::isnan(surprise) || surprise < 0.0) {
    throw ValidationError("surprise must be non-negative");
  }
  if (std::isnan(m) || m < 0.0) throw ValidationError("m must be non-negative");
  if (std::isnan(b_max) || b_max < 0.0) {
    throw ValidationError("b_max must be non-negative");
  }
  if (m == 0.0 || surprise == 0.0 || b_max == 0.0) return 0.0;
  const double ms = m * surprise;
  if (std::isinf(ms)) return b_max;
  return ms / (1.0 + ms) * b_max;
}

double CategoricalFamily::kl(const CategoricalBelief& p,
                             const CategoricalBelief& q) {
  try {
    return kl_categorical(p, q).nats();
  } catch (const InfiniteDivergence&) {
    return std::numeric_limits<double>::infinity();
  }
}

CategoricalBelief CategoricalFamily::scaled_likelihood(
    const CategoricalBelief& belief, const LikelihoodRow& row) {
  if (belief.size() != row.size()) {
    throw DimensionMismatch("belief and likelihood row differ in size");
  }
  return smile::scaled_likelihood(row);
}

CategoricalBelief CategoricalFamily::geometric_mix(
    const CategoricalBelief& belief, const LikelihoodRow& row, double gamma) {
  return smile_update(belief, row, gamma);
}

CategoricalBelief smile_update(const CategoricalBelief& belief,
                               const LikelihoodRow& row, double gamma) {
  if (belief.size() != row.size()) {
    throw DimensionMismatch("belief and likelihood row differ in size");
  }
  if (std::isnan(gamma) || gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("gamma must lie in [0, 1]");
  }
  if (gamma == 0.0) return belief;
  if (gamma == 1.0) return scaled_likelihood(row);

  // Work in log space; a zero in either factor removes the model.
  const std::size_t k = belief.size();
  std::vector<double> logw(k, -std::numeric_limits<double>::infinity());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (belief[i] > 0.0 && row[i] > 0.0) {
      logw[i] = gamma * std::log(row[i]) + (1.0 - gamma) * std::log(belief[i]);
      top = std::max(top, logw[i]);
    }
  }
  if (std::isinf(top)) {
    throw DegenerateUpdate(
        "belief and likelihood have disjoint support; SMiLe normalizer is zero");
  }
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = std::exp(logw[i] - top);
  return CategoricalBelief::normalized(w);
}

double b_max(const CategoricalBelief& belief, const LikelihoodRow& row) {
  return CategoricalFamily::kl(
      CategoricalFamily::scaled_likelihood(belief, row), belief);
}

double solve_gamma(const CategoricalBelief& belief, const LikelihoodRow& row,
                   double bound, const SmileConfig& config) {
  double upper = b_max(belief, row);
  bool capped = false;
  if (!std::isfinite(upper)) {
    upper = kMaxBoundCap;
    capped = true;
  }
  return solve_gamma_bisection(
             [&](double g) {
               return CategoricalFamily::kl(smile_update(belief, row, g),
                                            belief);
             },
             bound, upper, config, capped)
      .gamma;
}

double impact(const CategoricalBelief& belief, const LikelihoodRow& row,
              double gamma) {
  if (std::isnan(gamma) || gamma < 0.0 || gamma > 1.0) {
    throw ValidationError("gamma must lie in [0, 1]");
  }
  if (gamma == 0.0) return 0.0;
  const CategoricalBelief updated = smile_update(belief, row, gamma);
  const double before = confidence_corrected_surprise(belief, row).nats();
  const double after = confidence_corrected_surprise(updated, row).nats();
  return before - after;
}

double impact_from_belief_change(const CategoricalBelief& belief,
                                 const LikelihoodRow& row, double gamma) {
  if (std::isnan(gamma) || gamma <= 0.0 || gamma > 1.0) {
    throw ValidationError("impact identity requires gamma in (0, 1]");
  }
  const CategoricalBelief updated = smile_update(belief, row, gamma);
  const double forward = kl_categorical(belief, updated).nats();
  if (gamma == 1.0) return forward;
  const double backward = kl_categorical(updated, belief).nats();
  return forward / gamma + (1.0 / gamma - 1.0) * backward;
}

SmileResult<CategoricalBelief> smile_step(const CategoricalBelief& belief,
                                          const LikelihoodRow& row,
                                          const SmileConfig& config) {
  return smile_step_generic<CategoricalFamily>(belief, row, config);
}

}  // namespace smile
