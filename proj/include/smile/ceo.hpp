#pragma once

// The CEO-election example: four candidate models, model k predicts that
// candidate k wins with probability 1 - eps and spreads eps evenly over the
// other three. Colleague A favors candidate 1, B favors candidate 3 with the
// same entropy as A, C is uniform.

#include "smile/surprise.hpp"

namespace smile {

inline constexpr int kCeoCandidates = 4;
inline constexpr double kCeoDefaultEpsilon = 0.01;

struct CeoFixture {
  double epsilon;
  CategoricalBelief colleague_a;
  CategoricalBelief colleague_b;
  CategoricalBelief colleague_c;
};

CeoFixture ceo_fixture(double epsilon = kCeoDefaultEpsilon);

// Likelihood row p(X = candidate | theta_k), candidate is 1-based.
LikelihoodRow ceo_likelihood_row(int candidate,
                                 double epsilon = kCeoDefaultEpsilon);

}  // namespace smile
