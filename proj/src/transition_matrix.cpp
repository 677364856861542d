#include "smile/transition_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "smile/errors.hpp"

namespace smile {

TransitionMatrix::TransitionMatrix(std::size_t n, double fill)
    : n_(n), data_(n * n, fill) {}

bool TransitionMatrix::is_row_stochastic(double tol) const {
  for (std::size_t s = 0; s < n_; ++s) {
    double sum = 0.0;
    for (double v : row(s)) {
      if (!(v >= 0.0) || !std::isfinite(v)) return false;
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

TransitionMatrix& TransitionMatrix::operator+=(const TransitionMatrix& other) {
  if (other.n_ != n_) throw DimensionMismatch("transition matrices differ in size");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

TransitionMatrix& TransitionMatrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

double mean_squared_difference(const TransitionMatrix& a,
                               const TransitionMatrix& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("transition matrices differ in size");
  }
  const auto x = a.data();
  const auto y = b.data();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return sum / static_cast<double>(x.size());
}

double max_abs_difference(const TransitionMatrix& a, const TransitionMatrix& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("transition matrices differ in size");
  }
  const auto x = a.data();
  const auto y = b.data();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(x[i] - y[i]));
  }
  return worst;
}

}  // namespace smile
