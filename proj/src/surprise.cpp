#include "smile/surprise.hpp"

#include <cmath>
#include <string>

#include "smile/errors.hpp"

namespace smile {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kNegativeRoundoff = 1e-9;

void require_same_size(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw DimensionMismatch(std::string(where) + ": dimension mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) +
                            ")");
  }
}

double marginal_likelihood(const CategoricalBelief& belief,
                           const LikelihoodRow& row) {
  require_same_size(belief.size(), row.size(), "marginal likelihood");
  double z = 0.0;
  for (std::size_t k = 0; k < belief.size(); ++k) z += belief[k] * row[k];
  return z;
}

}  // namespace

SurpriseValue::SurpriseValue(double nats) : nats_(nats) {
  if (std::isnan(nats)) throw ValidationError("surprise is NaN");
  if (nats < 0.0) {
    if (nats < -kNegativeRoundoff) {
      throw ValidationError("negative surprise " + std::to_string(nats));
    }
    nats_ = 0.0;
  }
}

CategoricalBelief::CategoricalBelief(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw ValidationError("categorical belief needs at least two models");
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("belief weights must be finite and non-negative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ValidationError("belief weights sum to " + std::to_string(sum));
  }
}

CategoricalBelief CategoricalBelief::normalized(std::span<const double> raw) {
  if (raw.size() < 2) {
    throw ValidationError("categorical belief needs at least two models");
  }
  double sum = 0.0;
  for (double w : raw) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("belief weights must be finite and non-negative");
    }
    sum += w;
  }
  if (!(sum > 0.0)) throw DegeneratePosterior("weights sum to zero");
  std::vector<double> out(raw.begin(), raw.end());
  for (double& w : out) w /= sum;
  return CategoricalBelief(Trusted{}, std::move(out));
}

CategoricalBelief CategoricalBelief::uniform(std::size_t k) {
  if (k < 2) throw ValidationError("categorical belief needs at least two models");
  return CategoricalBelief(Trusted{},
                           std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

LikelihoodRow::LikelihoodRow(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("likelihoods must be finite and non-negative");
    }
    sum_ += v;
  }
  if (!(sum_ > 0.0)) {
    throw DegenerateLikelihood("likelihood row has no positive entry");
  }
}

CategoricalBelief scaled_likelihood(const LikelihoodRow& row) {
  return CategoricalBelief::normalized(row.values());
}

double entropy(const CategoricalBelief& belief) {
  double h = 0.0;
  for (double p : belief.weights()) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

SurpriseValue kl_categorical(const CategoricalBelief& p,
                             const CategoricalBelief& q) {
  require_same_size(p.size(), q.size(), "kl_categorical");
  double kl = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) {
      throw InfiniteDivergence("KL divergence is infinite: p > 0 where q = 0 at index " +
                               std::to_string(k));
    }
    kl += p[k] * std::log(p[k] / q[k]);
  }
  return SurpriseValue(kl);
}

SurpriseValue confidence_corrected_surprise(const CategoricalBelief& belief,
                                            const LikelihoodRow& row) {
  require_same_size(belief.size(), row.size(), "confidence_corrected_surprise");
  return kl_categorical(belief, scaled_likelihood(row));
}

double raw_surprise(const CategoricalBelief& belief, const LikelihoodRow& row) {
  require_same_size(belief.size(), row.size(), "raw_surprise");
  double s = 0.0;
  for (std::size_t k = 0; k < belief.size(); ++k) {
    if (belief[k] == 0.0) continue;
    if (row[k] == 0.0) {
      throw InfiniteSurprise("zero likelihood under a model with positive belief");
    }
    s -= belief[k] * std::log(row[k]);
  }
  return s;
}

double shannon_surprise(const CategoricalBelief& belief,
                        const LikelihoodRow& row) {
  const double z = marginal_likelihood(belief, row);
  if (!(z > 0.0)) throw InfiniteSurprise("marginal likelihood is zero");
  return -std::log(z);
}

CategoricalBelief bayes_update(const CategoricalBelief& belief,
                               const LikelihoodRow& row) {
  require_same_size(belief.size(), row.size(), "bayes_update");
  std::vector<double> post(belief.size());
  for (std::size_t k = 0; k < belief.size(); ++k) post[k] = belief[k] * row[k];
  try {
    return CategoricalBelief::normalized(post);
  } catch (const DegeneratePosterior&) {
    throw DegeneratePosterior("Bayes posterior has zero normalizer");
  }
}

SurpriseValue bayesian_surprise(const CategoricalBelief& prior,
                                const LikelihoodRow& row) {
  return kl_categorical(prior, bayes_update(prior, row));
}

}  // namespace smile
