#include "smile/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <utility>

#include "smile/errors.hpp"
#include "smile/experiments.hpp"
#include "smile/selftest.hpp"

namespace smile {

namespace {

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> format;  // csv, except replay which defaults to json
  bool quiet = false;
  bool full_scale = false;
};

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "JSON config file");
  sub->add_option("--seed", o.seed, "Override the config seed");
  sub->add_option("--out", o.out, "Output path (default: config output, else stdout)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--quiet", o.quiet, "Suppress progress and summaries");
  sub->add_flag("--full-scale,--paper-scale", o.full_scale,
                "Use 20000 steps and 50 episodes (20 for maze sweeps)");
}

ExperimentConfig load_config(const std::string& command, const Options& o) {
  Json j = o.config_path.empty() ? Json::object() : load_json_file(o.config_path);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (command == "gaussian" || command == "maze") {
    if (j.contains("task") && j["task"] != command) {
      throw ConfigError("config task '" + j["task"].dump() +
                        "' does not match command '" + command + "'");
    }
    j["task"] = command;
  }
  ExperimentConfig c = config_from_json(j);
  if (o.seed) c.seed = *o.seed;
  if (o.full_scale) {
    c.steps = kPaperSteps;
    c.episodes = command == "sweep" && c.task == Task::maze ? kPaperSweepEpisodes
                                                           : kPaperEpisodes;
  }
  c.validate();
  return c;
}

std::filesystem::path episode_path(const std::filesystem::path& p,
                                   std::size_t episode) {
  return p.parent_path() / (p.stem().string() + "_ep" +
                            std::to_string(episode) + p.extension().string());
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write " + p.string());
  return f;
}

// Writes text to `path`, or to `out` when path is empty.
void emit(const std::string& path, std::ostream& out, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  auto f = open_out(path);
  f << text;
}

template <class Episode, class Writer>
void emit_traces(const std::string& path, std::ostream& out, std::ostream& err,
                 bool quiet, const std::vector<Episode>& episodes,
                 Writer write) {
  if (path.empty()) {
    write(out, episodes.front());
    if (episodes.size() > 1 && !quiet) {
      err << "note: only episode 0 is written to stdout; use --out for all "
          << episodes.size() << " episodes\n";
    }
    return;
  }
  if (episodes.size() == 1) {
    auto f = open_out(path);
    write(f, episodes.front());
    return;
  }
  for (std::size_t e = 0; e < episodes.size(); ++e) {
    auto f = open_out(episode_path(path, e));
    write(f, episodes[e]);
  }
}

void report(std::ostream& err, const SummaryRow& row) {
  if (row.missing) {
    err << "summary: no qualifying samples\n";
    return;
  }
  err << "summary: mean error " << row.mean_error << " +- " << row.std_error
      << " over " << row.samples << " samples\n";
}

int run_command(const std::string& command, const ExperimentConfig& c,
                const Options& o, std::ostream& out, std::ostream& err,
                bool replaying = false) {
  const std::string path = o.out.empty() ? c.output : o.out;
  const bool json = o.format.value_or(replaying ? "json" : "csv") == "json";
  const auto tag = [&](Json j) {
    Json r{{"command", command}};
    r.update(j);
    return r.dump(2) + "\n";
  };

  if (command == "gaussian" || command == "maze") {
    const bool gaussian = command == "gaussian";
    if (gaussian != (c.task == Task::gaussian)) {
      throw ConfigError("config task does not match command '" + command + "'");
    }
    if (gaussian) {
      const GaussianRun run = run_gaussian_experiment(c, !json);
      if (json) {
        emit(path, out, tag(gaussian_run_to_json(c, run)));
      } else {
        emit_traces(path, out, err, o.quiet, run.episodes,
                    [](std::ostream& s, const GaussianEpisode& e) {
                      write_gaussian_csv(s, e);
                    });
      }
      if (!o.quiet) report(err, run.summary);
    } else {
      const MazeRun run = run_maze_experiment(c, !json);
      if (json) {
        emit(path, out, tag(maze_run_to_json(c, run)));
      } else {
        emit_traces(path, out, err, o.quiet, run.episodes,
                    [](std::ostream& s, const MazeEpisode& e) {
                      write_maze_csv(s, e);
                    });
      }
      if (!o.quiet) report(err, run.summary);
    }
    return kExitOk;
  }

  // sweep
  const SweepResult sweep = run_sweep(c);
  if (json) {
    emit(path, out, tag(sweep_to_json(c, sweep)));
  } else {
    std::ostringstream s;
    write_sweep_csv(s, sweep);
    emit(path, out, s.str());
  }
  if (!o.quiet) {
    if (const SummaryRow* best = best_row(sweep.rows)) {
      err << "best cell:";
      for (const auto& [name, value] : best->params) err << ' ' << name << '=' << value;
      err << " mean error " << best->mean_error << '\n';
    }
  }
  return kExitOk;
}

int dispatch(const std::string& command, const Options& o, std::ostream& out,
             std::ostream& err) {
  if (command == "selftest") {
    const auto checks = run_selftest(o.seed.value_or(0));
    std::ostringstream s;
    const bool ok = print_selftest(s, checks);
    if (!o.quiet || !ok) out << s.str();
    return ok ? kExitOk : kExitRuntime;
  }
  if (command == "replay") {
    if (o.config_path.empty()) throw ConfigError("replay needs --config");
    const Json saved = load_json_file(o.config_path);
    if (!saved.is_object() || !saved.contains("command") ||
        !saved.contains("config")) {
      throw ConfigError("replay file needs 'command' and 'config' entries");
    }
    const std::string original = saved["command"].get<std::string>();
    if (original != "gaussian" && original != "maze" && original != "sweep") {
      throw ConfigError("cannot replay command '" + original + "'");
    }
    ExperimentConfig c = config_from_json(saved["config"]);
    if (o.seed) c.seed = *o.seed;
    return run_command(original, c, o, out, err, true);
  }
  const ExperimentConfig c = load_config(command, o);
  return run_command(command, c, o, out, err);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Surprise-minimization learning experiments", "smile"};
  app.require_subcommand(1);
  Options o;
  const std::pair<const char*, const char*> commands[] = {
      {"gaussian", "Track a jumping Gaussian mean"},
      {"maze", "Learn a maze whose layout switches"},
      {"sweep", "Run a parameter grid and summarize each point"},
      {"replay", "Re-run a command from a JSON output file (its command and config)"},
  };
  for (const auto& [name, description] : commands) {
    add_run_options(app.add_subcommand(name, description), o);
  }
  CLI::App* selftest = app.add_subcommand("selftest", "Check analytic identities");
  selftest->add_option("--seed", o.seed, "Fixture seed");
  selftest->add_flag("--quiet", o.quiet, "Print only on failure");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace smile
