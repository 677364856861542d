#pragma once

// Data-generating processes: a Gaussian stream whose mean jumps at random
// change points, and a random walk through a 16-room maze whose layout
// switches between two topologies.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "smile/transition_matrix.hpp"

namespace smile {

using Rng = std::mt19937_64;

// Independent generator for (seed, stream, index). Streams keep environment
// and learner randomness apart; index is usually the episode.
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

inline constexpr std::uint64_t kEnvironmentStream = 1;
inline constexpr std::uint64_t kLearnerStream = 2;
inline constexpr std::uint64_t kTopologyStream = 3;

// ---------------------------------------------------------------------------
// Gaussian change-point stream.

struct GaussianEnvConfig {
  double obs_sigma = 4.0;
  double hazard = 0.066;
  double mean_lo = -20.0;
  double mean_hi = 20.0;

  void validate() const;
};

struct GaussianSample {
  double value;
  bool changed;  // the mean was redrawn before this sample
  double true_mean;
};

class GaussianChangePointEnv {
 public:
  GaussianChangePointEnv(GaussianEnvConfig config, Rng rng);

  // With probability hazard redraw the mean, then sample around it.
  GaussianSample step();

  double true_mean() const noexcept { return mean_; }
  const GaussianEnvConfig& config() const noexcept { return config_; }

 private:
  GaussianEnvConfig config_;
  Rng rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::uniform_real_distribution<double> mean_dist_;
  std::normal_distribution<double> noise_;
  double mean_;
};

// ---------------------------------------------------------------------------
// Maze.

inline constexpr std::size_t kDoorsPerRoom = 4;

class MazeTopology {
 public:
  using Doors = std::array<std::size_t, kDoorsPerRoom>;

  // Each room has four distinct doors; adjacency is symmetric and connected.
  explicit MazeTopology(std::vector<Doors> neighbors);

  std::size_t num_rooms() const noexcept { return neighbors_.size(); }
  const Doors& neighbors(std::size_t room) const { return neighbors_.at(room); }
  const std::vector<Doors>& table() const noexcept { return neighbors_; }
  bool adjacent(std::size_t a, std::size_t b) const;

  bool operator==(const MazeTopology&) const = default;

 private:
  std::vector<Doors> neighbors_;
};

// rows x cols grid with wrap-around; room id = row * cols + col. Doors are
// listed up, down, left, right.
MazeTopology build_torus_topology(std::size_t rows = 4, std::size_t cols = 4);

// Room r of the input becomes room permutation[r].
MazeTopology permute_topology(const MazeTopology& topology,
                              const std::vector<std::size_t>& permutation);

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

// 0.25 on each door, zero elsewhere.
TransitionMatrix true_transition_matrix(const MazeTopology& topology);

enum class MazeEnvId { A, B };

inline char env_label(MazeEnvId e) { return e == MazeEnvId::A ? 'A' : 'B'; }

inline constexpr double kMaxSwitchProbability = 0.1;

struct SwitchProbabilities {
  double p_ab;
  double p_ba;
};

// p_ab = 1 / tau_A and psi_A = p_ba / (p_ab + p_ba). psi_A = 1 never leaves
// A; psi_A = 0 never leaves B.
SwitchProbabilities switch_probabilities(double tau_a, double psi_a);

struct MazeTransition {
  std::size_t from;
  std::size_t to;
  MazeEnvId env;  // environment in force for this move
  bool switched;  // env changed at this step
};

class MazeEnv {
 public:
  // The starting environment is A with probability p_ba / (p_ab + p_ba)
  // (A when both are zero); the starting room is uniform.
  MazeEnv(MazeTopology a, MazeTopology b, double p_ab, double p_ba, Rng rng);

  // Switch first, then walk through a uniformly chosen door of the current
  // room in the (possibly new) environment.
  MazeTransition step();

  std::size_t room() const noexcept { return room_; }
  MazeEnvId env() const noexcept { return env_; }
  const MazeTopology& topology(MazeEnvId e) const {
    return e == MazeEnvId::A ? a_ : b_;
  }
  double p_ab() const noexcept { return p_ab_; }
  double p_ba() const noexcept { return p_ba_; }

 private:
  MazeTopology a_;
  MazeTopology b_;
  double p_ab_;
  double p_ba_;
  Rng rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  MazeEnvId env_ = MazeEnvId::A;
  std::size_t room_ = 0;
};

}  // namespace smile
