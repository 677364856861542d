#pragma once

// Dirichlet beliefs over the next-state distribution of one room, and the
// table of such beliefs for a whole maze.
//
// Observing the transition s -> s' has scaled likelihood Dir(b) with
// b(k) = 1 + [k = s']. The SMiLe mixture of Dir(a) and Dir(b) is
// Dir((1 - gamma) a + gamma b), so every parameter stays >= 1.

#include <cstddef>
#include <span>
#include <vector>

#include "smile/engine.hpp"
#include "smile/transition_matrix.hpp"

namespace smile {

class DirichletParams {
 public:
  // At least two components, each finite and >= 1.
  explicit DirichletParams(std::vector<double> alpha);
  static DirichletParams flat(std::size_t dim);

  std::span<const double> alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return alpha_.size(); }
  double operator[](std::size_t k) const { return alpha_[k]; }
  double total() const noexcept;

  bool operator==(const DirichletParams&) const = default;

 private:
  std::vector<double> alpha_;
};

// KL[Dir(m) || Dir(n)] for arbitrary positive parameter vectors.
double kl_dirichlet(std::span<const double> m, std::span<const double> n);
SurpriseValue kl_dirichlet(const DirichletParams& m, const DirichletParams& n);

// Differential entropy of Dir(alpha).
double dirichlet_entropy(std::span<const double> alpha);
double dirichlet_entropy(const DirichletParams& alpha);

// Parameters of the scaled likelihood of observing component `observed`.
DirichletParams observation_params(std::size_t dim, std::size_t observed);

// S_cc = KL[Dir(a) || Dir(b)]; `observed` indexes a component of a.
SurpriseValue dirichlet_surprise(const DirichletParams& current,
                                 std::size_t observed);

// (1 - gamma) a + gamma b.
DirichletParams dirichlet_smile_update(const DirichletParams& a,
                                       std::size_t observed, double gamma);

double solve_gamma_dirichlet(const DirichletParams& a, std::size_t observed,
                             double bound, const SmileConfig& config = {});

struct DirichletObservation {
  std::size_t observed;
};

struct DirichletFamily {
  using Belief = DirichletParams;
  using Observation = DirichletObservation;

  static double kl(const DirichletParams& p, const DirichletParams& q);
  static DirichletParams scaled_likelihood(const DirichletParams& belief,
                                           const DirichletObservation& x);
  static DirichletParams geometric_mix(const DirichletParams& belief,
                                       const DirichletObservation& x,
                                       double gamma);
};

inline constexpr std::size_t kDefaultNumStates = 16;
inline constexpr double kDefaultEstimatorEpsilon = 1e-6;

// One Dirichlet row per state, over the num_states - 1 other states.
// Component k of row s stands for next state k if k < s, else k + 1.
class TransitionBeliefTable {
 public:
  explicit TransitionBeliefTable(std::size_t num_states = kDefaultNumStates);
  explicit TransitionBeliefTable(std::vector<DirichletParams> rows);

  std::size_t num_states() const noexcept { return rows_.size(); }
  const DirichletParams& row(std::size_t s) const;
  void set_row(std::size_t s, DirichletParams params);
  const std::vector<DirichletParams>& rows() const noexcept { return rows_; }

  // Throws ValidationError for s == next or out-of-range ids.
  std::size_t component(std::size_t s, std::size_t next) const;
  std::size_t state_of(std::size_t s, std::size_t component) const;

  bool operator==(const TransitionBeliefTable&) const = default;

 private:
  std::vector<DirichletParams> rows_;
};

// T(s, s') = (alpha(s, s') - 1 + eps) / sum_k (alpha(s, k) - 1 + eps), with a
// zero diagonal.
TransitionMatrix estimate_transition_matrix(
    const TransitionBeliefTable& table, double eps = kDefaultEstimatorEpsilon);

// Sum of the rows' differential entropies.
double belief_entropy_total(const TransitionBeliefTable& table);

// Algorithm for one observed transition: only row s changes.
SmileResult<TransitionBeliefTable> maze_smile_step(
    const TransitionBeliefTable& table, std::size_t s, std::size_t next,
    const SmileConfig& config = {});

// In-place variant used by the experiment loop.
SmileStepDiagnostics maze_smile_step_inplace(TransitionBeliefTable& table,
                                             std::size_t s, std::size_t next,
                                             const SmileConfig& config = {});

}  // namespace smile
