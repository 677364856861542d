#pragma once

// Experiment harness: runs a learner against an environment for a number of
// seeded episodes, records per-step traces and aggregates error metrics.
//
// Every episode e draws its environment from stream (seed, environment, e)
// and any learner randomness from (seed, learner, e), so swapping learners
// never changes the data a learner sees.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smile/environments.hpp"
#include "smile/serialization.hpp"
#include "smile/transition_matrix.hpp"

namespace smile {

enum class Task { gaussian, maze };
enum class Learner { smile, fixed_gamma, naive_bayes, online_em };
enum class ErrorMetric { absolute, squared };

const char* to_string(Task t);
const char* to_string(Learner l);
const char* to_string(ErrorMetric e);

inline constexpr std::int64_t kDeskSteps = 5000;
inline constexpr std::int64_t kDeskEpisodes = 10;
inline constexpr std::int64_t kPaperSteps = 20000;
inline constexpr std::int64_t kPaperEpisodes = 50;
inline constexpr std::int64_t kPaperSweepEpisodes = 20;

// Window after a switch for the T-hat snapshots, and for the sweep metric.
inline constexpr std::int64_t kSnapshotLag = 100;
inline constexpr std::int64_t kSweepLag = 64;
inline constexpr double kEmaDecay = 0.1;
inline constexpr double kCrossingThreshold = 0.002;

struct SweepGrid {
  std::vector<double> hazard;
  std::vector<double> gamma_fixed;
  std::vector<double> tau_a;
  std::vector<double> psi_a;
};

// 19 points 0.05, 0.10, ..., 0.95.
std::vector<double> default_gamma_grid();

struct ExperimentConfig {
  Task task = Task::gaussian;
  Learner learner = Learner::smile;
  double m = 0.1;
  std::optional<double> gamma_fixed;
  std::int64_t steps = kDeskSteps;
  std::int64_t episodes = kDeskEpisodes;
  std::uint64_t seed = 0;
  std::string output;

  // Gaussian task.
  double hazard = 0.066;
  double obs_sigma = 4.0;
  double initial_mean = 0.0;
  ErrorMetric error_metric = ErrorMetric::absolute;

  // Maze task.
  double tau_a = 200.0;
  double psi_a = 0.5;
  double estimator_eps = 1e-6;
  double eta = 0.05;
  std::int64_t burn_in = 2000;
  double switch_hint = 0.1;
  double jitter = 0.01;

  std::optional<SweepGrid> grid;

  // ConfigError on any inconsistency, including a learner that does not
  // belong to the task.
  void validate() const;
};

// Unknown keys and keys that belong to the other task are rejected.
ExperimentConfig config_from_json(const Json& j);
// Echoes only the keys relevant to the task.
Json config_to_json(const ExperimentConfig& config);

// y_0 = x_0, y_t = decay x_t + (1 - decay) y_{t-1}.
std::vector<double> ema(const std::vector<double>& series,
                        double decay = kEmaDecay);

// ---------------------------------------------------------------------------

struct SummaryRow {
  std::vector<std::pair<std::string, double>> params;
  double mean_error = 0.0;
  double std_error = 0.0;  // standard deviation over all samples
  std::int64_t samples = 0;
  bool missing = false;
  std::vector<double> episode_means;  // per episode, for paired comparisons
};

struct GaussianStepRecord {
  std::int64_t t;
  double x;
  double mu_hat;
  double true_mu;
  double surprise;
  double gamma;
  double error;
  bool changed;
};

struct GaussianEpisode {
  std::vector<GaussianStepRecord> trace;
  double mean_error = 0.0;
};

struct GaussianRun {
  std::vector<GaussianEpisode> episodes;
  SummaryRow summary;
};

GaussianRun run_gaussian_experiment(const ExperimentConfig& config,
                                    bool keep_traces = true);

struct MazeStepRecord {
  std::int64_t t;
  std::size_t s;
  std::size_t s_next;
  MazeEnvId env;
  std::optional<double> surprise;
  std::optional<double> gamma;
  double e_a;
  double e_b;
  std::optional<double> entropy;
  bool switched;
};

struct SwitchEvent {
  std::int64_t t;
  MazeEnvId to;
  double e_at_switch;  // error w.r.t. the new environment at the switch step
  // Error w.r.t. the new environment after kSweepLag / kSnapshotLag steps
  // with no further switch; empty when the stay was shorter or the run ended.
  std::optional<double> e_at_sweep_lag;
  std::optional<double> e_at_snapshot_lag;
};

struct MazeEpisode {
  std::vector<MazeStepRecord> trace;
  std::vector<SwitchEvent> switches;
  MazeTopology topology_a;
  MazeTopology topology_b;
  TransitionMatrix final_estimate;
  // Average of T-hat kSnapshotLag steps after each qualifying switch into A
  // (resp. B); count is the number of snapshots.
  TransitionMatrix snapshot_a;
  TransitionMatrix snapshot_b;
  std::int64_t snapshot_a_count = 0;
  std::int64_t snapshot_b_count = 0;
  // First step in A at which the EMA of E_A is below kCrossingThreshold.
  std::optional<std::int64_t> first_crossing;
};

struct MazeRun {
  std::vector<MazeEpisode> episodes;
  // E_A kSweepLag steps after qualifying switches into A.
  SummaryRow summary;
};

MazeRun run_maze_experiment(const ExperimentConfig& config,
                            bool keep_traces = true);

// Fraction of qualifying switches into A at or after `after` whose error
// kSnapshotLag steps later is below the error at the switch. Empty when no
// switch qualifies.
struct AdaptationStats {
  std::int64_t qualifying = 0;
  std::int64_t dropped = 0;
  double fraction() const {
    return qualifying > 0 ? static_cast<double>(dropped) / qualifying : 0.0;
  }
};
AdaptationStats adaptation_stats(const MazeEpisode& episode,
                                 std::int64_t after);

struct SweepResult {
  Task task;
  Learner learner;
  std::vector<SummaryRow> rows;
};

// Gaussian: one row per hazard (and per gamma for fixed_gamma). Maze: one row
// per (tau_A, psi_A), error measured kSweepLag steps after switches into A;
// a cell without a qualifying switch is marked missing.
SweepResult run_sweep(const ExperimentConfig& config);

// Row with the smallest mean error among non-missing rows.
const SummaryRow* best_row(const std::vector<SummaryRow>& rows);

// Mean and standard error of the per-episode differences a - b.
struct PairedDifference {
  double mean;
  double standard_error;
};
PairedDifference paired_difference(const SummaryRow& a, const SummaryRow& b);

// ---------------------------------------------------------------------------
// Output.

void write_gaussian_csv(std::ostream& out, const GaussianEpisode& episode);
void write_maze_csv(std::ostream& out, const MazeEpisode& episode);
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

Json summary_to_json(const SummaryRow& row);
Json gaussian_run_to_json(const ExperimentConfig& config, const GaussianRun& run);
Json maze_run_to_json(const ExperimentConfig& config, const MazeRun& run);
Json sweep_to_json(const ExperimentConfig& config, const SweepResult& sweep);

}  // namespace smile
