#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smile/dirichlet.hpp"
#include "smile/engine.hpp"
#include "smile/environments.hpp"
#include "smile/errors.hpp"
#include "smile/experiments.hpp"
#include "smile/gaussian.hpp"
#include "smile/selftest.hpp"
#include "smile/special_functions.hpp"
#include "smile/surprise.hpp"

namespace py = pybind11;
using namespace smile;

namespace {

py::dict diagnostics_dict(const SmileStepDiagnostics& d) {
  py::dict out;
  out["surprise"] = d.surprise;
  out["b_max"] = d.b_max;
  out["bound"] = d.bound;
  out["gamma"] = d.gamma;
  out["impact"] = d.impact;
  out["b_max_capped"] = d.b_max_capped;
  return out;
}

std::vector<double> weights(const CategoricalBelief& b) {
  return {b.weights().begin(), b.weights().end()};
}

SmileConfig config_with(double m) {
  SmileConfig c;
  c.m = m;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Surprise-minimization learning core";

  auto base = py::register_exception<Error>(m, "SmileError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<InfiniteDivergence>(m, "InfiniteDivergence", base);
  py::register_exception<DegenerateLikelihood>(m, "DegenerateLikelihood", base);
  py::register_exception<DomainError>(m, "DomainError", base);

  // Surprise measures. Beliefs and likelihood rows are plain lists.
  m.def("confidence_corrected_surprise",
        [](std::vector<double> belief, std::vector<double> row) {
          return confidence_corrected_surprise(CategoricalBelief(std::move(belief)),
                                               LikelihoodRow(std::move(row)))
              .nats();
        },
        py::arg("belief"), py::arg("likelihood"));
  m.def("kl_categorical",
        [](std::vector<double> p, std::vector<double> q) {
          return kl_categorical(CategoricalBelief(std::move(p)),
                                CategoricalBelief(std::move(q)))
              .nats();
        },
        py::arg("p"), py::arg("q"));
  m.def("shannon_surprise",
        [](std::vector<double> belief, std::vector<double> row) {
          return shannon_surprise(CategoricalBelief(std::move(belief)),
                                  LikelihoodRow(std::move(row)));
        },
        py::arg("belief"), py::arg("likelihood"));
  m.def("bayesian_surprise",
        [](std::vector<double> belief, std::vector<double> row) {
          return bayesian_surprise(CategoricalBelief(std::move(belief)),
                                   LikelihoodRow(std::move(row)))
              .nats();
        },
        py::arg("belief"), py::arg("likelihood"));
  m.def("entropy",
        [](std::vector<double> belief) {
          return entropy(CategoricalBelief(std::move(belief)));
        },
        py::arg("belief"));

  // Update rule.
  m.def("smile_update",
        [](std::vector<double> belief, std::vector<double> row, double gamma) {
          return weights(smile_update(CategoricalBelief(std::move(belief)),
                                      LikelihoodRow(std::move(row)), gamma));
        },
        py::arg("belief"), py::arg("likelihood"), py::arg("gamma"));
  m.def("smile_step",
        [](std::vector<double> belief, std::vector<double> row, double m) {
          const auto r = smile_step(CategoricalBelief(std::move(belief)),
                                    LikelihoodRow(std::move(row)), config_with(m));
          return py::make_tuple(weights(r.belief), diagnostics_dict(r.diagnostics));
        },
        py::arg("belief"), py::arg("likelihood"), py::arg("m") = 0.1,
        "Returns (new_belief, diagnostics).");
  m.def("impact",
        [](std::vector<double> belief, std::vector<double> row, double gamma) {
          return impact(CategoricalBelief(std::move(belief)),
                        LikelihoodRow(std::move(row)), gamma);
        },
        py::arg("belief"), py::arg("likelihood"), py::arg("gamma"));

  m.def("gaussian_smile_step",
        [](double mean, double variance, double x, double obs_variance,
           double m) {
          const auto r = gaussian_smile_step(GaussianBelief(mean, variance),
                                             GaussianObservation(x, obs_variance), m);
          return py::make_tuple(r.belief.mean(), r.belief.variance(),
                                diagnostics_dict(r.diagnostics));
        },
        py::arg("mean"), py::arg("variance"), py::arg("x"),
        py::arg("obs_variance"), py::arg("m") = 0.1,
        "Returns (mean, variance, diagnostics).");
  m.def("gaussian_gamma", &gaussian_gamma, py::arg("surprise"), py::arg("m"));

  m.def("kl_dirichlet",
        [](std::vector<double> a, std::vector<double> b) {
          return kl_dirichlet(a, b);
        },
        py::arg("a"), py::arg("b"));
  m.def("dirichlet_surprise",
        [](std::vector<double> alpha, std::size_t observed) {
          return dirichlet_surprise(DirichletParams(std::move(alpha)), observed)
              .nats();
        },
        py::arg("alpha"), py::arg("observed"));
  m.def("dirichlet_smile_update",
        [](std::vector<double> alpha, std::size_t observed, double gamma) {
          const auto p = dirichlet_smile_update(DirichletParams(std::move(alpha)),
                                                observed, gamma);
          return std::vector<double>(p.alpha().begin(), p.alpha().end());
        },
        py::arg("alpha"), py::arg("observed"), py::arg("gamma"));

  m.def("log_gamma", &special::log_gamma, py::arg("x"));
  m.def("digamma", &special::digamma, py::arg("x"));

  m.def("switch_probabilities",
        [](double tau_a, double psi_a) {
          const auto p = switch_probabilities(tau_a, psi_a);
          return py::make_tuple(p.p_ab, p.p_ba);
        },
        py::arg("tau_a"), py::arg("psi_a"));
  m.def("torus_topology",
        [](std::size_t rows, std::size_t cols) {
          return build_torus_topology(rows, cols).table();
        },
        py::arg("rows") = 4, py::arg("cols") = 4,
        "Door table: for each room its up, down, left and right neighbors.");

  // Experiments take and return JSON text; the Python wrapper converts dicts.
  m.def("_run_experiment",
        [](const std::string& config_text) {
          const ExperimentConfig c = config_from_json(Json::parse(config_text));
          Json out;
          {
            py::gil_scoped_release release;
            if (c.task == Task::gaussian) {
              out = gaussian_run_to_json(c, run_gaussian_experiment(c, false));
            } else {
              out = maze_run_to_json(c, run_maze_experiment(c, false));
            }
          }
          return out.dump();
        },
        py::arg("config_json"));
  m.def("_run_sweep",
        [](const std::string& config_text) {
          const ExperimentConfig c = config_from_json(Json::parse(config_text));
          Json out;
          {
            py::gil_scoped_release release;
            out = sweep_to_json(c, run_sweep(c));
          }
          return out.dump();
        },
        py::arg("config_json"));
  m.def("ema", &ema, py::arg("series"), py::arg("decay") = kEmaDecay);

  m.def("selftest",
        [](std::uint64_t seed) {
          py::list out;
          for (const auto& c : run_selftest(seed)) {
            out.append(py::make_tuple(c.name, c.passed, c.detail));
          }
          return out;
        },
        py::arg("seed") = 0, "List of (name, passed, detail).");
}
