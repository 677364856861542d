#include "smile/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>

#include "smile/baselines.hpp"
#include "smile/dirichlet.hpp"
#include "smile/errors.hpp"
#include "smile/gaussian.hpp"

namespace smile {

const char* to_string(Task t) {
  return t == Task::gaussian ? "gaussian" : "maze";
}

const char* to_string(Learner l) {
  switch (l) {
    case Learner::smile:
      return "smile";
    case Learner::fixed_gamma:
      return "fixed_gamma";
    case Learner::naive_bayes:
      return "naive_bayes";
    case Learner::online_em:
      return "online_em";
  }
  return "?";
}

const char* to_string(ErrorMetric e) {
  return e == ErrorMetric::absolute ? "absolute" : "squared";
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(0.05 * i);
  return g;
}

// ---------------------------------------------------------------------------
// Config.

namespace {

bool learner_fits(Task task, Learner learner) {
  if (task == Task::gaussian) {
    return learner == Learner::smile || learner == Learner::fixed_gamma;
  }
  return learner != Learner::fixed_gamma;
}

void check_gamma(double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("gamma_fixed must lie in [0, 1]");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!learner_fits(task, learner)) {
    throw ConfigError(std::string("learner '") + to_string(learner) +
                      "' is not available for the " + to_string(task) + " task");
  }
  if (!(m >= 0.0) || !std::isfinite(m)) throw ConfigError("m must be non-negative");
  if (steps < 1) throw ConfigError("steps must be at least 1");
  if (episodes < 1) throw ConfigError("episodes must be at least 1");

  if (task == Task::gaussian) {
    GaussianEnvConfig{obs_sigma, hazard}.validate();
    if (!std::isfinite(initial_mean)) throw ConfigError("initial_mean must be finite");
    // A missing gamma_fixed is only an error for a single run; sweeps fall
    // back to the default grid.
    if (gamma_fixed) check_gamma(*gamma_fixed);
    if (grid) {
      for (double h : grid->hazard) GaussianEnvConfig{obs_sigma, h}.validate();
      for (double g : grid->gamma_fixed) check_gamma(g);
    }
  } else {
    const auto check_maze = [](double tau, double psi) {
      const SwitchProbabilities p = switch_probabilities(tau, psi);
      if (p.p_ab > kMaxSwitchProbability || p.p_ba > kMaxSwitchProbability) {
        throw ConfigError("tau_A and psi_A imply a switch probability above 0.1");
      }
    };
    check_maze(tau_a, psi_a);
    if (grid) {
      for (double tau : grid->tau_a) {
        for (double psi : grid->psi_a.empty() ? std::vector<double>{psi_a}
                                              : grid->psi_a) {
          check_maze(tau, psi);
        }
      }
      for (double psi : grid->psi_a) check_maze(tau_a, psi);
    }
    if (!(estimator_eps > 0.0)) throw ConfigError("estimator_eps must be positive");
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
    if (burn_in < 0) throw ConfigError("burn_in must be non-negative");
    if (!(switch_hint > 0.0 && switch_hint < 1.0)) {
      throw ConfigError("switch_hint must lie in (0, 1)");
    }
    if (!(jitter >= 0.0 && jitter < 1.0)) throw ConfigError("jitter must lie in [0, 1)");
  }
}

namespace {

template <class T>
T get_as(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

Task parse_task(const std::string& s) {
  if (s == "gaussian") return Task::gaussian;
  if (s == "maze") return Task::maze;
  throw ConfigError("unknown task '" + s + "'");
}

Learner parse_learner(const std::string& s) {
  if (s == "smile") return Learner::smile;
  if (s == "fixed_gamma") return Learner::fixed_gamma;
  if (s == "naive_bayes") return Learner::naive_bayes;
  if (s == "online_em") return Learner::online_em;
  throw ConfigError("unknown learner '" + s + "'");
}

ErrorMetric parse_metric(const std::string& s) {
  if (s == "absolute") return ErrorMetric::absolute;
  if (s == "squared") return ErrorMetric::squared;
  throw ConfigError("unknown error_metric '" + s + "'");
}

std::set<std::string> allowed_keys(Task task, Learner learner) {
  std::set<std::string> keys{"task", "learner", "steps", "episodes",
                             "seed", "output",  "grid"};
  if (learner == Learner::smile) keys.insert("m");
  if (task == Task::gaussian) {
    keys.insert({"hazard", "obs_sigma", "initial_mean", "error_metric"});
    if (learner == Learner::fixed_gamma) keys.insert("gamma_fixed");
  } else {
    keys.insert({"tau_A", "psi_A", "estimator_eps"});
    if (learner == Learner::online_em) {
      keys.insert({"eta", "burn_in", "switch_hint", "jitter"});
    }
  }
  return keys;
}

std::set<std::string> allowed_grid_keys(Task task, Learner learner) {
  if (task == Task::maze) return {"tau_A", "psi_A"};
  if (learner == Learner::fixed_gamma) return {"hazard", "gamma_fixed"};
  return {"hazard"};
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (j.contains("task")) c.task = parse_task(get_as<std::string>(j, "task"));
  if (j.contains("learner")) {
    c.learner = parse_learner(get_as<std::string>(j, "learner"));
  }
  const auto keys = allowed_keys(c.task, c.learner);
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) {
      throw ConfigError("config key '" + key + "' is not valid for task '" +
                        to_string(c.task) + "' with learner '" +
                        to_string(c.learner) + "'");
    }
  }

  if (j.contains("m")) c.m = get_as<double>(j, "m");
  if (j.contains("steps")) c.steps = get_as<std::int64_t>(j, "steps");
  if (j.contains("episodes")) c.episodes = get_as<std::int64_t>(j, "episodes");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("output")) c.output = get_as<std::string>(j, "output");
  if (j.contains("hazard")) c.hazard = get_as<double>(j, "hazard");
  if (j.contains("obs_sigma")) c.obs_sigma = get_as<double>(j, "obs_sigma");
  if (j.contains("initial_mean")) c.initial_mean = get_as<double>(j, "initial_mean");
  if (j.contains("error_metric")) {
    c.error_metric = parse_metric(get_as<std::string>(j, "error_metric"));
  }
  if (j.contains("gamma_fixed")) c.gamma_fixed = get_as<double>(j, "gamma_fixed");
  if (j.contains("tau_A")) c.tau_a = get_as<double>(j, "tau_A");
  if (j.contains("psi_A")) c.psi_a = get_as<double>(j, "psi_A");
  if (j.contains("estimator_eps")) c.estimator_eps = get_as<double>(j, "estimator_eps");
  if (j.contains("eta")) c.eta = get_as<double>(j, "eta");
  if (j.contains("burn_in")) c.burn_in = get_as<std::int64_t>(j, "burn_in");
  if (j.contains("switch_hint")) c.switch_hint = get_as<double>(j, "switch_hint");
  if (j.contains("jitter")) c.jitter = get_as<double>(j, "jitter");

  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("grid must be an object");
    const auto gkeys = allowed_grid_keys(c.task, c.learner);
    for (const auto& [key, value] : g.items()) {
      if (!gkeys.count(key)) {
        throw ConfigError("grid key '" + key + "' is not valid here");
      }
    }
    SweepGrid grid;
    if (g.contains("hazard")) grid.hazard = get_as<std::vector<double>>(g, "hazard");
    if (g.contains("gamma_fixed")) {
      grid.gamma_fixed = get_as<std::vector<double>>(g, "gamma_fixed");
    }
    if (g.contains("tau_A")) grid.tau_a = get_as<std::vector<double>>(g, "tau_A");
    if (g.contains("psi_A")) grid.psi_a = get_as<std::vector<double>>(g, "psi_A");
    c.grid = std::move(grid);
  }
  c.validate();
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["task"] = to_string(c.task);
  j["learner"] = to_string(c.learner);
  if (c.learner == Learner::smile) j["m"] = c.m;
  j["steps"] = c.steps;
  j["episodes"] = c.episodes;
  j["seed"] = c.seed;
  if (!c.output.empty()) j["output"] = c.output;
  if (c.task == Task::gaussian) {
    j["hazard"] = c.hazard;
    j["obs_sigma"] = c.obs_sigma;
    j["initial_mean"] = c.initial_mean;
    j["error_metric"] = to_string(c.error_metric);
    if (c.learner == Learner::fixed_gamma && c.gamma_fixed) {
      j["gamma_fixed"] = *c.gamma_fixed;
    }
  } else {
    j["tau_A"] = c.tau_a;
    j["psi_A"] = c.psi_a;
    j["estimator_eps"] = c.estimator_eps;
    if (c.learner == Learner::online_em) {
      j["eta"] = c.eta;
      j["burn_in"] = c.burn_in;
      j["switch_hint"] = c.switch_hint;
      j["jitter"] = c.jitter;
    }
  }
  if (c.grid) {
    Json g = Json::object();
    if (!c.grid->hazard.empty()) g["hazard"] = c.grid->hazard;
    if (!c.grid->gamma_fixed.empty()) g["gamma_fixed"] = c.grid->gamma_fixed;
    if (!c.grid->tau_a.empty()) g["tau_A"] = c.grid->tau_a;
    if (!c.grid->psi_a.empty()) g["psi_A"] = c.grid->psi_a;
    j["grid"] = g;
  }
  return j;
}

std::vector<double> ema(const std::vector<double>& series, double decay) {
  if (!(decay > 0.0 && decay <= 1.0)) {
    throw ValidationError("EMA decay must lie in (0, 1]");
  }
  std::vector<double> out(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    out[t] = t == 0 ? series[0] : decay * series[t] + (1.0 - decay) * out[t - 1];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Aggregation helpers.

namespace {

// Running mean and variance (Welford).
class Moments {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  std::int64_t count() const { return n_; }
  double mean() const { return mean_; }
  double stddev() const {
    return n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1)) : 0.0;
  }

 private:
  std::int64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void fill_summary(SummaryRow& row, const Moments& all) {
  row.samples = all.count();
  row.missing = all.count() == 0;
  row.mean_error = all.mean();
  row.std_error = all.stddev();
}

}  // namespace

// ---------------------------------------------------------------------------
// Gaussian task.

GaussianRun run_gaussian_experiment(const ExperimentConfig& config,
                                    bool keep_traces) {
  config.validate();
  if (config.task != Task::gaussian) throw ConfigError("config is not a gaussian task");
  if (config.learner == Learner::fixed_gamma && !config.gamma_fixed) {
    throw ConfigError("fixed_gamma learner needs gamma_fixed");
  }
  const double obs_var = config.obs_sigma * config.obs_sigma;
  GaussianRun run;
  Moments all;
  for (std::int64_t e = 0; e < config.episodes; ++e) {
    GaussianChangePointEnv env({config.obs_sigma, config.hazard},
                               make_rng(config.seed, kEnvironmentStream,
                                        static_cast<std::uint64_t>(e)));
    GaussianBelief belief(config.initial_mean, obs_var);
    std::optional<FixedGammaEstimator> fixed;
    if (config.learner == Learner::fixed_gamma) {
      fixed.emplace(config.initial_mean, *config.gamma_fixed);
    }
    GaussianEpisode ep;
    if (keep_traces) ep.trace.reserve(static_cast<std::size_t>(config.steps));
    Moments episode;
    for (std::int64_t t = 1; t <= config.steps; ++t) {
      const GaussianSample sample = env.step();
      const GaussianObservation obs(sample.value, obs_var);
      double surprise = 0.0;
      double gamma = 0.0;
      double estimate = 0.0;
      if (fixed) {
        surprise = gaussian_surprise(GaussianBelief(fixed->mean(), obs_var), obs)
                       .nats();
        *fixed = fixed_gamma_step(*fixed, sample.value);
        gamma = fixed->gamma();
        estimate = fixed->mean();
      } else {
        auto step = gaussian_smile_step(belief, obs, config.m);
        surprise = step.diagnostics.surprise;
        gamma = step.diagnostics.gamma;
        belief = step.belief;
        estimate = belief.mean();
      }
      const double diff = estimate - sample.true_mean;
      const double err = config.error_metric == ErrorMetric::absolute
                             ? std::abs(diff)
                             : diff * diff;
      episode.add(err);
      all.add(err);
      if (keep_traces) {
        ep.trace.push_back({t, sample.value, estimate, sample.true_mean,
                            surprise, gamma, std::abs(diff), sample.changed});
      }
    }
    ep.mean_error = episode.mean();
    run.summary.episode_means.push_back(ep.mean_error);
    run.episodes.push_back(std::move(ep));
  }
  fill_summary(run.summary, all);
  if (config.learner == Learner::fixed_gamma) {
    run.summary.params = {{"hazard", config.hazard},
                          {"gamma_fixed", *config.gamma_fixed}};
  } else {
    run.summary.params = {{"hazard", config.hazard}, {"m", config.m}};
  }
  return run;
}

// ---------------------------------------------------------------------------
// Maze task.

namespace {

// Learner behind a uniform interface for the maze loop.
class MazeLearner {
 public:
  MazeLearner(const ExperimentConfig& config, std::uint64_t episode)
      : config_(config) {
    smile_cfg_.m = config.m;
    if (config.learner == Learner::online_em) {
      em_ = online_em_init(config.switch_hint, config.eta, config.burn_in,
                           kDefaultNumStates, config.jitter, config.seed,
                           episode);
    } else {
      row_entropy_.assign(kDefaultNumStates,
                          dirichlet_entropy(DirichletParams::flat(
                              kDefaultNumStates - 1)));
      entropy_total_ = std::accumulate(row_entropy_.begin(),
                                       row_entropy_.end(), 0.0);
    }
  }

  struct Output {
    std::optional<double> surprise;
    std::optional<double> gamma;
    std::optional<double> entropy;
  };

  Output observe(std::size_t s, std::size_t next) {
    Output out;
    switch (config_.learner) {
      case Learner::smile: {
        const SmileStepDiagnostics d =
            maze_smile_step_inplace(table_, s, next, smile_cfg_);
        out.surprise = d.surprise;
        out.gamma = d.gamma;
        refresh_entropy(table_, s);
        out.entropy = entropy_total_;
        break;
      }
      case Learner::naive_bayes: {
        const auto& counts = naive_.counts();
        out.surprise =
            dirichlet_surprise(counts.row(s), counts.component(s, next)).nats();
        naive_.observe(s, next);
        refresh_entropy(naive_.counts(), s);
        out.entropy = entropy_total_;
        break;
      }
      case Learner::online_em:
        online_em_step_inplace(*em_, s, next);
        break;
      case Learner::fixed_gamma:
        throw ConfigError("fixed_gamma learner is not available for the maze");
    }
    return out;
  }

  TransitionMatrix estimate() const {
    switch (config_.learner) {
      case Learner::smile:
        return estimate_transition_matrix(table_, config_.estimator_eps);
      case Learner::naive_bayes:
        return estimate_transition_matrix(naive_.counts(), config_.estimator_eps);
      default:
        return em_predictive_matrix(*em_);
    }
  }

 private:
  void refresh_entropy(const TransitionBeliefTable& table, std::size_t s) {
    row_entropy_[s] = dirichlet_entropy(table.row(s));
    // Re-sum in a fixed order so the total does not drift.
    entropy_total_ =
        std::accumulate(row_entropy_.begin(), row_entropy_.end(), 0.0);
  }

  const ExperimentConfig& config_;
  SmileConfig smile_cfg_;
  TransitionBeliefTable table_;
  NaiveBayesTable naive_;
  std::optional<OnlineEmState> em_;
  std::vector<double> row_entropy_;
  double entropy_total_ = 0.0;
};

MazeEpisode run_maze_episode(const ExperimentConfig& config, std::uint64_t e,
                             bool keep_trace) {
  const MazeTopology a = build_torus_topology();
  Rng topo_rng = make_rng(config.seed, kTopologyStream, e);
  MazeTopology b = permute_topology(a, random_permutation(a.num_rooms(), topo_rng));
  const SwitchProbabilities p = switch_probabilities(config.tau_a, config.psi_a);
  MazeEnv env(a, b, p.p_ab, p.p_ba, make_rng(config.seed, kEnvironmentStream, e));
  const TransitionMatrix t_a = true_transition_matrix(a);
  const TransitionMatrix t_b = true_transition_matrix(b);

  const std::size_t n = a.num_rooms();
  MazeEpisode ep{{}, {}, a, b, {}, TransitionMatrix(n), TransitionMatrix(n),
                 0, 0, std::nullopt};
  if (keep_trace) ep.trace.reserve(static_cast<std::size_t>(config.steps));

  MazeLearner learner(config, e);
  std::optional<std::size_t> open;  // index of the switch still being tracked
  double smoothed = 0.0;
  TransitionMatrix estimate;
  for (std::int64_t t = 1; t <= config.steps; ++t) {
    const MazeTransition tr = env.step();
    const auto out = learner.observe(tr.from, tr.to);
    estimate = learner.estimate();
    const double e_a = mean_squared_difference(estimate, t_a);
    const double e_b = mean_squared_difference(estimate, t_b);

    if (tr.switched) {
      ep.switches.push_back(
          {t, tr.env, tr.env == MazeEnvId::A ? e_a : e_b, std::nullopt,
           std::nullopt});
      open = ep.switches.size() - 1;
    } else if (open) {
      SwitchEvent& ev = ep.switches[*open];
      const std::int64_t lag = t - ev.t;
      const double err = ev.to == MazeEnvId::A ? e_a : e_b;
      if (lag == kSweepLag) ev.e_at_sweep_lag = err;
      if (lag == kSnapshotLag) {
        ev.e_at_snapshot_lag = err;
        if (ev.to == MazeEnvId::A) {
          ep.snapshot_a += estimate;
          ++ep.snapshot_a_count;
        } else {
          ep.snapshot_b += estimate;
          ++ep.snapshot_b_count;
        }
        open.reset();
      }
    }

    smoothed = t == 1 ? e_a : kEmaDecay * e_a + (1.0 - kEmaDecay) * smoothed;
    if (!ep.first_crossing && tr.env == MazeEnvId::A &&
        smoothed < kCrossingThreshold) {
      ep.first_crossing = t;
    }
    if (keep_trace) {
      ep.trace.push_back({t, tr.from, tr.to, tr.env, out.surprise, out.gamma,
                          e_a, e_b, out.entropy, tr.switched});
    }
  }
  if (ep.snapshot_a_count > 0) ep.snapshot_a *= 1.0 / ep.snapshot_a_count;
  if (ep.snapshot_b_count > 0) ep.snapshot_b *= 1.0 / ep.snapshot_b_count;
  ep.final_estimate = std::move(estimate);
  return ep;
}

}  // namespace

MazeRun run_maze_experiment(const ExperimentConfig& config, bool keep_traces) {
  config.validate();
  if (config.task != Task::maze) throw ConfigError("config is not a maze task");
  MazeRun run;
  Moments all;
  for (std::int64_t e = 0; e < config.episodes; ++e) {
    MazeEpisode ep =
        run_maze_episode(config, static_cast<std::uint64_t>(e), keep_traces);
    Moments episode;
    for (const SwitchEvent& ev : ep.switches) {
      if (ev.to == MazeEnvId::A && ev.e_at_sweep_lag) {
        episode.add(*ev.e_at_sweep_lag);
        all.add(*ev.e_at_sweep_lag);
      }
    }
    if (episode.count() > 0) run.summary.episode_means.push_back(episode.mean());
    run.episodes.push_back(std::move(ep));
  }
  fill_summary(run.summary, all);
  run.summary.params = {{"tau_A", config.tau_a}, {"psi_A", config.psi_a}};
  return run;
}

AdaptationStats adaptation_stats(const MazeEpisode& episode,
                                 std::int64_t after) {
  AdaptationStats s;
  for (const SwitchEvent& ev : episode.switches) {
    if (ev.to != MazeEnvId::A || ev.t < after || !ev.e_at_snapshot_lag) continue;
    ++s.qualifying;
    if (*ev.e_at_snapshot_lag < ev.e_at_switch) ++s.dropped;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Sweeps.

SweepResult run_sweep(const ExperimentConfig& config) {
  config.validate();
  SweepResult out{config.task, config.learner, {}};
  const SweepGrid grid = config.grid.value_or(SweepGrid{});

  if (config.task == Task::gaussian) {
    const std::vector<double> hazards =
        grid.hazard.empty() ? std::vector<double>{config.hazard} : grid.hazard;
    std::vector<double> gammas;
    if (config.learner == Learner::fixed_gamma) {
      if (!grid.gamma_fixed.empty()) {
        gammas = grid.gamma_fixed;
      } else if (config.gamma_fixed) {
        gammas = {*config.gamma_fixed};
      } else {
        gammas = default_gamma_grid();
      }
    }
    for (double h : hazards) {
      ExperimentConfig cell = config;
      cell.hazard = h;
      cell.grid.reset();
      if (config.learner == Learner::fixed_gamma) {
        for (double g : gammas) {
          cell.gamma_fixed = g;
          out.rows.push_back(run_gaussian_experiment(cell, false).summary);
        }
      } else {
        out.rows.push_back(run_gaussian_experiment(cell, false).summary);
      }
    }
    return out;
  }

  const std::vector<double> taus =
      grid.tau_a.empty() ? std::vector<double>{config.tau_a} : grid.tau_a;
  const std::vector<double> psis =
      grid.psi_a.empty() ? std::vector<double>{config.psi_a} : grid.psi_a;
  for (double tau : taus) {
    for (double psi : psis) {
      ExperimentConfig cell = config;
      cell.tau_a = tau;
      cell.psi_a = psi;
      cell.grid.reset();
      out.rows.push_back(run_maze_experiment(cell, false).summary);
    }
  }
  return out;
}

const SummaryRow* best_row(const std::vector<SummaryRow>& rows) {
  const SummaryRow* best = nullptr;
  for (const auto& r : rows) {
    if (r.missing) continue;
    if (!best || r.mean_error < best->mean_error) best = &r;
  }
  return best;
}

PairedDifference paired_difference(const SummaryRow& a, const SummaryRow& b) {
  if (a.episode_means.size() != b.episode_means.size() ||
      a.episode_means.empty()) {
    throw ValidationError("paired comparison needs matching episode counts");
  }
  Moments d;
  for (std::size_t i = 0; i < a.episode_means.size(); ++i) {
    d.add(a.episode_means[i] - b.episode_means[i]);
  }
  return {d.mean(), d.stddev() / std::sqrt(static_cast<double>(d.count()))};
}

// ---------------------------------------------------------------------------
// Output.

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : ""; }

}  // namespace

void write_gaussian_csv(std::ostream& out, const GaussianEpisode& episode) {
  out << "t,X,mu_hat,true_mu,S_cc,gamma,abs_err,changed\n";
  for (const auto& r : episode.trace) {
    out << r.t << ',' << num(r.x) << ',' << num(r.mu_hat) << ','
        << num(r.true_mu) << ',' << num(r.surprise) << ',' << num(r.gamma)
        << ',' << num(r.error) << ',' << (r.changed ? 1 : 0) << '\n';
  }
}

void write_maze_csv(std::ostream& out, const MazeEpisode& episode) {
  out << "t,s,s_next,env,S_cc,gamma,E_A,E_B,entropy,switched\n";
  for (const auto& r : episode.trace) {
    out << r.t << ',' << r.s << ',' << r.s_next << ',' << env_label(r.env)
        << ',' << num(r.surprise) << ',' << num(r.gamma) << ',' << num(r.e_a)
        << ',' << num(r.e_b) << ',' << num(r.entropy) << ','
        << (r.switched ? 1 : 0) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  if (sweep.rows.empty()) return;
  for (const auto& [name, value] : sweep.rows.front().params) out << name << ',';
  out << "mean_error,std_error,samples,missing\n";
  for (const auto& r : sweep.rows) {
    for (const auto& [name, value] : r.params) out << num(value) << ',';
    if (r.missing) {
      out << ",," << r.samples << ",1\n";
    } else {
      out << num(r.mean_error) << ',' << num(r.std_error) << ',' << r.samples
          << ",0\n";
    }
  }
}

Json summary_to_json(const SummaryRow& row) {
  Json params = Json::object();
  for (const auto& [name, value] : row.params) params[name] = value;
  Json j{{"params", params},
         {"samples", row.samples},
         {"missing", row.missing},
         {"episode_means", row.episode_means}};
  if (row.missing) {
    j["mean_error"] = nullptr;
    j["std_error"] = nullptr;
  } else {
    j["mean_error"] = row.mean_error;
    j["std_error"] = row.std_error;
  }
  return j;
}

Json gaussian_run_to_json(const ExperimentConfig& config, const GaussianRun& run) {
  Json episodes = Json::array();
  for (const auto& ep : run.episodes) {
    std::int64_t changes = 0;
    for (const auto& r : ep.trace) changes += r.changed ? 1 : 0;
    episodes.push_back({{"mean_error", ep.mean_error}, {"change_points", changes}});
  }
  return {{"config", config_to_json(config)},
          {"summary", summary_to_json(run.summary)},
          {"episodes", episodes}};
}

Json maze_run_to_json(const ExperimentConfig& config, const MazeRun& run) {
  Json episodes = Json::array();
  for (const auto& ep : run.episodes) {
    const TransitionMatrix t_a = true_transition_matrix(ep.topology_a);
    const TransitionMatrix t_b = true_transition_matrix(ep.topology_b);
    const AdaptationStats adapt = adaptation_stats(ep, kDefaultBurnIn);
    Json j{{"switches", ep.switches.size()},
           {"final_E_A", mean_squared_difference(ep.final_estimate, t_a)},
           {"final_E_B", mean_squared_difference(ep.final_estimate, t_b)},
           {"snapshots_A", ep.snapshot_a_count},
           {"snapshots_B", ep.snapshot_b_count},
           {"adaptation_qualifying", adapt.qualifying},
           {"adaptation_dropped", adapt.dropped},
           {"topology_B", topology_to_json(ep.topology_b)}};
    j["snapshot_E_A"] = ep.snapshot_a_count > 0
                            ? Json(mean_squared_difference(ep.snapshot_a, t_a))
                            : Json(nullptr);
    j["snapshot_E_B"] = ep.snapshot_b_count > 0
                            ? Json(mean_squared_difference(ep.snapshot_b, t_b))
                            : Json(nullptr);
    j["first_crossing"] =
        ep.first_crossing ? Json(*ep.first_crossing) : Json(nullptr);
    episodes.push_back(std::move(j));
  }
  return {{"config", config_to_json(config)},
          {"summary", summary_to_json(run.summary)},
          {"episodes", episodes}};
}

Json sweep_to_json(const ExperimentConfig& config, const SweepResult& sweep) {
  Json rows = Json::array();
  for (const auto& r : sweep.rows) rows.push_back(summary_to_json(r));
  return {{"config", config_to_json(config)}, {"rows", rows}};
}

}  // namespace smile
