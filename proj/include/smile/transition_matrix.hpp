#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smile {

// Dense n x n matrix of transition probabilities, row-major. Row s holds
// P(next = s' | current = s).
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t n, double fill = 0.0);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t s, std::size_t next) {
    return data_[s * n_ + next];
  }
  double operator()(std::size_t s, std::size_t next) const {
    return data_[s * n_ + next];
  }
  std::span<const double> row(std::size_t s) const {
    return {data_.data() + s * n_, n_};
  }
  std::span<const double> data() const noexcept { return data_; }

  // Entries non-negative and each row summing to one within tol.
  bool is_row_stochastic(double tol = 1e-12) const;

  TransitionMatrix& operator+=(const TransitionMatrix& other);
  TransitionMatrix& operator*=(double scale);

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

// (1 / n^2) sum_{s, s'} (a(s, s') - b(s, s'))^2, diagonal included.
double mean_squared_difference(const TransitionMatrix& a,
                               const TransitionMatrix& b);

double max_abs_difference(const TransitionMatrix& a, const TransitionMatrix& b);

}  // namespace smile
