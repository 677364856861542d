#include "smile/environments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "smile/errors.hpp"

namespace smile {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

void GaussianEnvConfig::validate() const {
  if (!(obs_sigma > 0.0) || !std::isfinite(obs_sigma)) {
    throw ConfigError("obs_sigma must be positive");
  }
  if (!(hazard >= 0.0 && hazard <= 1.0)) {
    throw ConfigError("hazard must lie in [0, 1]");
  }
  if (!(mean_lo < mean_hi) || !std::isfinite(mean_lo) ||
      !std::isfinite(mean_hi)) {
    throw ConfigError("mean range must be a finite interval");
  }
}

GaussianChangePointEnv::GaussianChangePointEnv(GaussianEnvConfig config,
                                               Rng rng)
    : config_(config),
      rng_(std::move(rng)),
      mean_dist_(config.mean_lo, config.mean_hi),
      noise_(0.0, config.obs_sigma) {
  config_.validate();
  mean_ = mean_dist_(rng_);
}

GaussianSample GaussianChangePointEnv::step() {
  const bool changed = unit_(rng_) < config_.hazard;
  if (changed) mean_ = mean_dist_(rng_);
  return {mean_ + noise_(rng_), changed, mean_};
}

MazeTopology::MazeTopology(std::vector<Doors> neighbors)
    : neighbors_(std::move(neighbors)) {
  const std::size_t n = neighbors_.size();
  if (n <= kDoorsPerRoom) {
    throw ValidationError("maze needs more rooms than doors per room");
  }
  for (std::size_t r = 0; r < n; ++r) {
    const Doors& d = neighbors_[r];
    for (std::size_t i = 0; i < kDoorsPerRoom; ++i) {
      if (d[i] >= n) throw ValidationError("door leads outside the maze");
      if (d[i] == r) throw ValidationError("room connects to itself");
      for (std::size_t j = 0; j < i; ++j) {
        if (d[i] == d[j]) throw ValidationError("duplicate door");
      }
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t other : neighbors_[r]) {
      if (!adjacent(other, r)) {
        throw ValidationError("maze adjacency is not symmetric at room " +
                              std::to_string(r));
      }
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> frontier{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t r = frontier.back();
    frontier.pop_back();
    for (std::size_t other : neighbors_[r]) {
      if (!seen[other]) {
        seen[other] = true;
        ++reached;
        frontier.push_back(other);
      }
    }
  }
  if (reached != n) throw ValidationError("maze is not connected");
}

bool MazeTopology::adjacent(std::size_t a, std::size_t b) const {
  const Doors& d = neighbors_.at(a);
  return std::find(d.begin(), d.end(), b) != d.end();
}

MazeTopology build_torus_topology(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) {
    throw ValidationError("torus needs at least 3 rows and 3 columns");
  }
  std::vector<MazeTopology::Doors> doors(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      doors[i * cols + j] = {((i + rows - 1) % rows) * cols + j,
                             ((i + 1) % rows) * cols + j,
                             i * cols + (j + cols - 1) % cols,
                             i * cols + (j + 1) % cols};
    }
  }
  return MazeTopology(std::move(doors));
}

MazeTopology permute_topology(const MazeTopology& topology,
                              const std::vector<std::size_t>& permutation) {
  const std::size_t n = topology.num_rooms();
  if (permutation.size() != n) {
    throw ValidationError("permutation size does not match the maze");
  }
  std::vector<bool> hit(n, false);
  for (std::size_t p : permutation) {
    if (p >= n || hit[p]) throw ValidationError("permutation is not a bijection");
    hit[p] = true;
  }
  std::vector<MazeTopology::Doors> doors(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& old = topology.neighbors(r);
    for (std::size_t i = 0; i < kDoorsPerRoom; ++i) {
      doors[permutation[r]][i] = permutation[old[i]];
    }
  }
  return MazeTopology(std::move(doors));
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  // Fisher-Yates.
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(p[i - 1], p[pick(rng)]);
  }
  return p;
}

TransitionMatrix true_transition_matrix(const MazeTopology& topology) {
  TransitionMatrix t(topology.num_rooms());
  const double p = 1.0 / static_cast<double>(kDoorsPerRoom);
  for (std::size_t r = 0; r < topology.num_rooms(); ++r) {
    for (std::size_t other : topology.neighbors(r)) t(r, other) = p;
  }
  return t;
}

SwitchProbabilities switch_probabilities(double tau_a, double psi_a) {
  if (!(tau_a >= 1.0) || !std::isfinite(tau_a)) {
    throw ConfigError("tau_A must be a finite number of steps >= 1");
  }
  if (!(psi_a >= 0.0 && psi_a <= 1.0)) {
    throw ConfigError("psi_A must lie in [0, 1]");
  }
  const double rate = 1.0 / tau_a;
  if (psi_a == 1.0) return {0.0, rate};
  if (psi_a == 0.0) return {rate, 0.0};
  return {rate, rate * psi_a / (1.0 - psi_a)};
}

MazeEnv::MazeEnv(MazeTopology a, MazeTopology b, double p_ab, double p_ba,
                 Rng rng)
    : a_(std::move(a)),
      b_(std::move(b)),
      p_ab_(p_ab),
      p_ba_(p_ba),
      rng_(std::move(rng)) {
  if (a_.num_rooms() != b_.num_rooms()) {
    throw ValidationError("both environments must have the same rooms");
  }
  for (double p : {p_ab_, p_ba_}) {
    if (!(p >= 0.0 && p <= kMaxSwitchProbability)) {
      throw ConfigError("switch probabilities must lie in [0, 0.1]");
    }
  }
  const double total = p_ab_ + p_ba_;
  const double start_in_a = total > 0.0 ? p_ba_ / total : 1.0;
  env_ = unit_(rng_) < start_in_a ? MazeEnvId::A : MazeEnvId::B;
  std::uniform_int_distribution<std::size_t> pick(0, a_.num_rooms() - 1);
  room_ = pick(rng_);
}

MazeTransition MazeEnv::step() {
  const double p_leave = env_ == MazeEnvId::A ? p_ab_ : p_ba_;
  const bool switched = unit_(rng_) < p_leave;
  if (switched) env_ = env_ == MazeEnvId::A ? MazeEnvId::B : MazeEnvId::A;
  std::uniform_int_distribution<std::size_t> door(0, kDoorsPerRoom - 1);
  const std::size_t from = room_;
  room_ = topology(env_).neighbors(from)[door(rng_)];
  return {from, room_, env_, switched};
}

}  // namespace smile
