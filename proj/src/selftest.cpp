#include "smile/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>

#include "smile/ceo.hpp"
#include "smile/dirichlet.hpp"
#include "smile/engine.hpp"
#include "smile/environments.hpp"

namespace smile {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kImpactTol = 1e-9;
constexpr double kMonotoneTol = 1e-10;
constexpr double kCeoTol = 1e-10;
constexpr int kGammaSteps = 11;  // 0, 0.1, ..., 1

// Largest |deviation| seen, or the first failure message.
class Tracker {
 public:
  explicit Tracker(double tol) : tol_(tol) {}

  void deviation(double d) {
    worst_ = std::max(worst_, std::abs(d));
    if (!(std::abs(d) <= tol_)) ok_ = false;
  }
  // `excess` > tol is a violation; <= 0 is comfortably fine.
  void excess(double e) {
    worst_ = std::max(worst_, e);
    if (!(e <= tol_)) ok_ = false;
  }
  void error(const std::string& what) {
    ok_ = false;
    if (message_.empty()) message_ = what;
  }

  SelftestCheck result(std::string name) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst %.3g, tol %.0e", worst_, tol_);
    return {std::move(name), ok_, message_.empty() ? buf : message_};
  }

 private:
  double tol_;
  double worst_ = 0.0;
  bool ok_ = true;
  std::string message_;
};

struct Fixture {
  CategoricalBelief belief;
  LikelihoodRow row;
};

Fixture random_categorical(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(2, 8);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  const std::size_t k = dim(rng);
  std::vector<double> w(k), l(k);
  for (auto& x : w) x = u(rng);
  for (auto& x : l) x = u(rng);
  return {CategoricalBelief::normalized(w), LikelihoodRow(l)};
}

std::pair<DirichletParams, std::size_t> random_dirichlet(Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(2, 15);
  std::uniform_real_distribution<double> u(1.0, 20.0);
  const std::size_t k = dim(rng);
  std::vector<double> a(k);
  for (auto& x : a) x = u(rng);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  return {DirichletParams(std::move(a)), pick(rng)};
}

double gamma_at(int i) { return static_cast<double>(i) / (kGammaSteps - 1); }

// Runs body over `fixtures` draws, turning library exceptions into failures.
void for_fixtures(Tracker& t, int fixtures, Rng& rng,
                  const std::function<void(Rng&)>& body) {
  for (int i = 0; i < fixtures; ++i) {
    try {
      body(rng);
    } catch (const std::exception& e) {
      t.error(e.what());
    }
  }
}

}  // namespace

std::vector<SelftestCheck> run_selftest(std::uint64_t seed, int fixtures) {
  std::vector<SelftestCheck> out;

  {
    Tracker t(kIdentityTol);
    Rng rng = make_rng(seed, kLearnerStream, 1);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const Fixture f = random_categorical(r);
      t.deviation(raw_surprise(f.belief, f.row) -
                  bayesian_surprise(f.belief, f.row).nats() -
                  shannon_surprise(f.belief, f.row));
    });
    out.push_back(t.result("raw surprise = Bayesian + Shannon surprise"));
  }

  {
    Tracker t(kIdentityTol);
    Rng rng = make_rng(seed, kLearnerStream, 2);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const Fixture f = random_categorical(r);
      t.deviation(confidence_corrected_surprise(f.belief, f.row).nats() -
                  (raw_surprise(f.belief, f.row) + std::log(f.row.sum()) -
                   entropy(f.belief)));
    });
    out.push_back(t.result("S_cc = raw surprise + ln sum(row) - entropy"));
  }

  {
    Tracker t(kImpactTol);
    Rng rng = make_rng(seed, kLearnerStream, 3);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const Fixture f = random_categorical(r);
      for (int i = 1; i < kGammaSteps; ++i) {
        const double g = gamma_at(i);
        t.deviation(impact(f.belief, f.row, g) -
                    impact_from_belief_change(f.belief, f.row, g));
      }
    });
    out.push_back(t.result("impact identity"));
  }

  {
    Tracker t(kIdentityTol);
    Rng rng = make_rng(seed, kLearnerStream, 4);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const Fixture f = random_categorical(r);
      const double before = confidence_corrected_surprise(f.belief, f.row).nats();
      for (int i = 0; i < kGammaSteps; ++i) {
        const CategoricalBelief q = smile_update(f.belief, f.row, gamma_at(i));
        t.excess(confidence_corrected_surprise(q, f.row).nats() - before);
      }
    });
    out.push_back(t.result("plausible rule (categorical)"));
  }

  {
    Tracker t(kIdentityTol);
    Rng rng = make_rng(seed, kLearnerStream, 5);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const auto [a, k] = random_dirichlet(r);
      const double before = dirichlet_surprise(a, k).nats();
      for (int i = 0; i < kGammaSteps; ++i) {
        const DirichletParams q = dirichlet_smile_update(a, k, gamma_at(i));
        t.excess(dirichlet_surprise(q, k).nats() - before);
      }
    });
    out.push_back(t.result("plausible rule (Dirichlet)"));
  }

  {
    Tracker t(kMonotoneTol);
    Rng rng = make_rng(seed, kLearnerStream, 6);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const Fixture f = random_categorical(r);
      double prev = 0.0;
      for (int i = 0; i < kGammaSteps; ++i) {
        const double kl =
            kl_categorical(smile_update(f.belief, f.row, gamma_at(i)), f.belief)
                .nats();
        t.excess(prev - kl);
        prev = kl;
      }
      const auto [a, k] = random_dirichlet(r);
      prev = 0.0;
      for (int i = 0; i < kGammaSteps; ++i) {
        const double kl =
            kl_dirichlet(dirichlet_smile_update(a, k, gamma_at(i)), a).nats();
        t.excess(prev - kl);
        prev = kl;
      }
    });
    out.push_back(t.result("KL(q_gamma || belief) nondecreasing in gamma"));
  }

  {
    Tracker t(kMonotoneTol);
    Rng rng = make_rng(seed, kLearnerStream, 7);
    for_fixtures(t, fixtures, rng, [&](Rng& r) {
      const Fixture f = random_categorical(r);
      double prev = 0.0;
      for (int i = 0; i < kGammaSteps; ++i) {
        const double v = impact(f.belief, f.row, gamma_at(i));
        t.excess(prev - v);
        prev = v;
      }
    });
    out.push_back(t.result("impact nondecreasing in gamma"));
  }

  {
    const double eps = kCeoDefaultEpsilon;
    const CeoFixture c = ceo_fixture(eps);
    const LikelihoodRow x1 = ceo_likelihood_row(1, eps);
    const LikelihoodRow x2 = ceo_likelihood_row(2, eps);
    const auto scc = [](const CategoricalBelief& b, const LikelihoodRow& x) {
      return confidence_corrected_surprise(b, x).nats();
    };
    const double log_ratio = std::log((1.0 - eps) / (eps / 3.0));
    const struct {
      const char* name;
      double got;
      double want;
    } cases[] = {
        {"CEO: A vs C on candidate 2",
         scc(c.colleague_a, x2) - scc(c.colleague_c, x2), 0.75 * std::log(3.0)},
        {"CEO: A on candidate 2 vs 1",
         scc(c.colleague_a, x2) - scc(c.colleague_a, x1), 0.5 * log_ratio},
        {"CEO: B vs A on candidate 1",
         scc(c.colleague_b, x1) - scc(c.colleague_a, x1), 0.75 * log_ratio},
    };
    for (const auto& cs : cases) {
      Tracker t(kCeoTol);
      t.deviation(cs.got - cs.want);
      out.push_back(t.result(cs.name));
    }
  }
  return out;
}

bool print_selftest(std::ostream& out, const std::vector<SelftestCheck>& checks) {
  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    all = all && c.passed;
  }
  return all;
}

}  // namespace smile
