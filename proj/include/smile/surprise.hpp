#pragma once

// Surprise measures over a finite set of candidate models theta_1..theta_K.
//
// A belief is a probability vector over the K models; a likelihood row holds
// p(X | theta_k) for a single observed datum X. All logarithms are natural, so
// every surprise is in nats. 0 * ln 0 is taken to be 0 throughout.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace smile {

// Non-negative surprise in nats. Rounding noise below zero is clamped; a
// genuinely negative value is a ValidationError.
class SurpriseValue {
 public:
  SurpriseValue() = default;
  explicit SurpriseValue(double nats);

  double nats() const noexcept { return nats_; }

  auto operator<=>(const SurpriseValue&) const = default;

 private:
  double nats_ = 0.0;
};

class CategoricalBelief {
 public:
  // Weights must be finite, non-negative, K >= 2 and sum to one within 1e-12.
  explicit CategoricalBelief(std::vector<double> weights);

  // Normalizes non-negative raw weights. Throws DegeneratePosterior when they
  // sum to zero.
  static CategoricalBelief normalized(std::span<const double> raw);
  static CategoricalBelief uniform(std::size_t k);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }

 private:
  struct Trusted {};
  CategoricalBelief(Trusted, std::vector<double> weights)
      : weights_(std::move(weights)) {}

  std::vector<double> weights_;
};

// p(X | theta_k) for one datum X. Need not sum to one.
class LikelihoodRow {
 public:
  // Values must be finite, non-negative and not all zero
  // (DegenerateLikelihood otherwise).
  explicit LikelihoodRow(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double sum() const noexcept { return sum_; }

 private:
  std::vector<double> values_;
  double sum_ = 0.0;
};

// Posterior under a flat prior: the row divided by its sum.
CategoricalBelief scaled_likelihood(const LikelihoodRow& row);

// Shannon entropy -sum pi ln pi. Commitment is its negative.
double entropy(const CategoricalBelief& belief);

// KL(p || q). InfiniteDivergence when p is not absolutely continuous w.r.t. q.
SurpriseValue kl_categorical(const CategoricalBelief& p,
                             const CategoricalBelief& q);

// Confidence-corrected surprise: KL(belief || scaled likelihood of X).
SurpriseValue confidence_corrected_surprise(const CategoricalBelief& belief,
                                            const LikelihoodRow& row);

// -sum_k pi_k ln p(X|theta_k). May be any real.
double raw_surprise(const CategoricalBelief& belief, const LikelihoodRow& row);

// -ln Z with Z = sum_k p(X|theta_k) pi_k.
double shannon_surprise(const CategoricalBelief& belief,
                        const LikelihoodRow& row);

CategoricalBelief bayes_update(const CategoricalBelief& belief,
                               const LikelihoodRow& row);

// KL(prior || Bayes posterior).
SurpriseValue bayesian_surprise(const CategoricalBelief& prior,
                                const LikelihoodRow& row);

}  // namespace smile
