#include "smile/ceo.hpp"

#include <string>
#include <vector>

#include "smile/errors.hpp"

namespace smile {

CeoFixture ceo_fixture(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("CEO epsilon must lie in (0, 1)");
  }
  return CeoFixture{
      epsilon,
      CategoricalBelief({0.75, 0.25, 0.0, 0.0}),
      CategoricalBelief({0.0, 0.25, 0.75, 0.0}),
      CategoricalBelief::uniform(kCeoCandidates),
  };
}

LikelihoodRow ceo_likelihood_row(int candidate, double epsilon) {
  if (candidate < 1 || candidate > kCeoCandidates) {
    throw ValidationError("CEO candidate must be in 1.." +
                          std::to_string(kCeoCandidates));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("CEO epsilon must lie in (0, 1)");
  }
  std::vector<double> row(kCeoCandidates, epsilon / 3.0);
  row[static_cast<std::size_t>(candidate - 1)] = 1.0 - epsilon;
  return LikelihoodRow(std::move(row));
}

}  // namespace smile
