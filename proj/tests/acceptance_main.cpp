// Acceptance gate: ten end-to-end checks over the built library, one
// pass/fail line each. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "gmsel/bounds.hpp"
#include "gmsel/decoders.hpp"
#include "gmsel/divergence.hpp"
#include "gmsel/ensembles.hpp"
#include "gmsel/errors.hpp"
#include "gmsel/graph.hpp"
#include "gmsel/graph_class.hpp"
#include "gmsel/harness.hpp"
#include "gmsel/ising.hpp"
#include "gmsel/pairs.hpp"
#include "gmsel/rng.hpp"
#include "gmsel/verify.hpp"

namespace {

using gmsel::CounterRng;
using gmsel::IsingParams;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& label, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] criterion %2d: %s (%s, %.1fs)\n", o.pass ? "pass" : "FAIL", id, label.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// Random model on p vertices: each pair present with probability ~0.35,
// weight magnitude in [0.2, 1.5], random sign.
IsingParams random_model(int p, CounterRng& rng) {
  std::vector<double> theta(gmsel::pair_count(p), 0.0);
  for (double& w : theta) {
    if (rng.next_unit() < 0.35) {
      const double mag = 0.2 + 1.3 * rng.next_unit();
      w = rng.next_unit() < 0.5 ? mag : -mag;
    }
  }
  return IsingParams::from_theta(p, std::move(theta));
}

IsingParams edges_model(int p, std::vector<std::pair<std::pair<int, int>, double>> edges) {
  std::vector<double> theta(gmsel::pair_count(p), 0.0);
  for (const auto& [e, w] : edges) theta[gmsel::pair_index(p, e.first, e.second)] = w;
  return IsingParams::from_theta(p, std::move(theta));
}

// --- criterion bodies ---------------------------------------------------

Outcome dual_path_agreement() {
  CounterRng rng(CounterRng::derive(0xACC001, 1));
  double worst = 0;
  const int pairs = 500;
  for (int i = 0; i < pairs; ++i) {
    const int p = 2 + int(rng.next_u64() % 7);  // 2..8
    const IsingParams a = random_model(p, rng);
    const IsingParams b = random_model(p, rng);
    worst = std::max(worst, std::abs(gmsel::sym_kl(a, b) - gmsel::sym_kl_mean_form(a, b)));
    worst = std::max(worst,
                     std::abs(gmsel::j_divergence(a, b) - gmsel::j_divergence_cumulant(a, b)));
  }
  return {worst <= 1e-10, fmt("%d pairs, worst gap %.2g", pairs, worst)};
}

Outcome ensemble_a_closed_form() {
  double worst = 0;
  int64_t pairs = 0;
  for (int p = 3; p <= 8; ++p) {
    for (double lambda : {0.1, 0.5, 1.0}) {
      const gmsel::Ensemble e = gmsel::ensemble_a(p, lambda);
      const double target = 2.0 * lambda * std::tanh(lambda);
      for (size_t i = 0; i < e.size(); ++i) {
        for (size_t j = i + 1; j < e.size(); ++j) {
          worst = std::max(worst, std::abs(gmsel::sym_kl(e.models[i], e.models[j]) - target));
          ++pairs;
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("%lld pairs, worst gap %.2g", (long long)pairs, worst)};
}

Outcome statement_checks(std::vector<int> ids) {
  bool all = true;
  uint64_t cases = 0;
  std::string bad;
  for (int id : ids) {
    const gmsel::LemmaReport rep = gmsel::run_lemma_check(id);
    cases += rep.cases;
    if (!rep.pass) {
      all = false;
      bad += fmt(" id=%d", id);
    }
  }
  return {all, all ? fmt("%llu comparisons", (unsigned long long)cases)
                   : fmt("failing:%s", bad.c_str())};
}

Outcome cardinality_brackets() {
  int combos = 0;
  std::string bad;
  auto check = [&](gmsel::ClassKind kind, int p, int bound) {
    gmsel::GraphClassSpec spec;
    spec.kind = kind;
    spec.p = p;
    spec.bound = bound;
    spec.lambda = 1.0;
    spec.omega = double(bound);
    const double count = double(gmsel::enumerate_class(spec).size());
    const gmsel::CardinalityBounds cb = gmsel::cardinality_bounds(spec);
    ++combos;
    if (!(cb.lower <= count && count <= cb.upper))
      bad += fmt(" %s(p=%d,b=%d):%g!in[%g,%g]", spec.kind_name().c_str(), p, bound, count,
                 cb.lower, cb.upper);
  };
  for (int d = 1; d <= 2; ++d)
    for (int p = 2; p <= 6; ++p)
      if (2 * d <= p - 1) check(gmsel::ClassKind::DegreeBounded, p, d);
  for (int k = 1; k <= 3; ++k)
    for (int p = 2; p <= 6; ++p)
      if (2 * k <= gmsel::pair_count(p)) check(gmsel::ClassKind::EdgeBounded, p, k);
  return {bad.empty(), bad.empty() ? fmt("%d feasible combos", combos) : fmt("violated:%s", bad.c_str())};
}

Outcome pairwise_error_exponent() {
  struct Pair {
    IsingParams a, b;
  };
  const std::vector<Pair> model_pairs = {
      {edges_model(4, {{{0, 1}, 1.0}}), edges_model(4, {{{2, 3}, 1.0}})},
      {edges_model(3, {{{0, 1}, 1.0}}), edges_model(3, {{{0, 2}, 1.0}})},
      {edges_model(4, {{{0, 1}, 0.5}, {{1, 2}, 0.5}}),
       edges_model(4, {{{0, 1}, 0.5}, {{2, 3}, 0.5}})},
      {edges_model(5, {{{0, 1}, 0.5}, {{1, 2}, 0.5}, {{0, 2}, 0.5}}),
       edges_model(5, {{{0, 1}, 0.5}, {{1, 2}, 0.5}})},
      {edges_model(4, {{{0, 1}, 1.0}}), edges_model(4, {{{0, 1}, -1.0}})},
  };
  const int64_t trials = 10000;
  double worst_slack = 1e300;
  std::string bad;
  uint64_t stream = 0;
  for (size_t pi = 0; pi < model_pairs.size(); ++pi) {
    for (int64_t n : {10, 50}) {
      const IsingParams& a = model_pairs[pi].a;
      const IsingParams& b = model_pairs[pi].b;
      const uint64_t key = CounterRng::derive(0xACC007, ++stream);
      int64_t errs = 0;
      for (int64_t t = 0; t < trials; ++t) {
        const gmsel::SampleSet s = gmsel::sample_exact(a, n, CounterRng::derive(key, t));
        if (gmsel::log_likelihood(b, s) >= gmsel::log_likelihood(a, s)) ++errs;
      }
      const double bound = std::min(1.0, gmsel::pairwise_error_bound(a, b, n));
      const double rate = double(errs) / double(trials);
      const double margin = 3.0 * std::sqrt(std::max(bound * (1 - bound), 1e-8) / double(trials));
      const double slack = bound + margin - rate;
      worst_slack = std::min(worst_slack, slack);
      if (slack < 0)
        bad += fmt(" pair%zu,n=%lld:rate=%.4f>bound=%.4f+3sigma", pi, (long long)n, rate, bound);
    }
  }
  return {bad.empty(), bad.empty() ? fmt("10 cells, min slack %.2g", worst_slack)
                                   : fmt("violated:%s", bad.c_str())};
}

Outcome tail_and_separation() {
  // Concentration tail of empirical correlations around the truth.
  const int p = 4;
  const int64_t n = 100, trials = 10000;
  const double t = 0.5;
  const IsingParams zero = IsingParams::from_theta(p, std::vector<double>(gmsel::pair_count(p), 0.0));
  const gmsel::MeanParams truth = gmsel::mean_params_exact(zero);
  int64_t hits = 0;
  const uint64_t key = CounterRng::derive(0xACC008, 1);
  for (int64_t trial = 0; trial < trials; ++trial) {
    const gmsel::SampleSet s = gmsel::sample_exact(zero, n, CounterRng::derive(key, trial));
    const gmsel::MeanParams emp = gmsel::empirical_mean_params(s);
    double dev = 0;
    for (size_t i = 0; i < emp.mu.size(); ++i) dev = std::max(dev, std::abs(emp.mu[i] - truth.mu[i]));
    if (dev >= t) ++hits;
  }
  const double tail_bound = 2.0 * std::exp(-double(n) * t * t / 2.0 + 2.0 * std::log(double(p)));
  const double tail_margin = 3.0 * std::sqrt(std::max(tail_bound * (1 - tail_bound), 1e-8) / double(trials));
  const double tail_rate = double(hits) / double(trials);
  const bool tail_ok = tail_rate <= tail_bound + tail_margin;

  // Exact-mean separation between any two class members at some pair (u, v)
  // with u an endpoint of a difference edge.
  const double lambda = 0.5;
  double worst_ratio = 1e300;
  int64_t graph_pairs = 0;
  bool sep_ok = true;
  for (int pp : {3, 4, 5}) {
    for (int d : {1, 2}) {
      if (d > pp - 1) continue;
      gmsel::GraphClassSpec spec;
      spec.kind = gmsel::ClassKind::DegreeBounded;
      spec.p = pp;
      spec.bound = d;
      spec.lambda = lambda;
      spec.omega = lambda * d;
      const double w = std::max(spec.omega, 1.0);
      const double bound =
          std::pow(std::sinh(lambda / 4.0), 2) / (2.0 * w * (3.0 * std::exp(2.0 * w) + 1.0));
      const std::vector<gmsel::Graph> graphs = gmsel::enumerate_class(spec);
      std::vector<gmsel::MeanParams> means;
      means.reserve(graphs.size());
      for (const gmsel::Graph& g : graphs)
        means.push_back(gmsel::mean_params_exact(IsingParams::uniform(g, lambda)));
      for (size_t i = 0; i < graphs.size(); ++i) {
        for (size_t j = i + 1; j < graphs.size(); ++j) {
          const gmsel::Graph diff = gmsel::symmetric_difference(graphs[i], graphs[j]);
          double best = 0;
          for (auto [s, tt] : diff.edge_list()) {
            for (int u : {s, tt}) {
              for (int v = 0; v < pp; ++v) {
                if (v == u) continue;
                const int idx = gmsel::pair_index(pp, std::min(u, v), std::max(u, v));
                best = std::max(best, std::abs(means[i].mu[idx] - means[j].mu[idx]));
              }
            }
          }
          ++graph_pairs;
          worst_ratio = std::min(worst_ratio, best / bound);
          if (best < bound) sep_ok = false;
        }
      }
    }
  }
  const bool pass = tail_ok && sep_ok;
  return {pass, fmt("tail %lld/%lld vs bound %.2g; separation %lld pairs, min ratio %.3g",
                    (long long)hits, (long long)trials, tail_bound, (long long)graph_pairs,
                    worst_ratio)};
}

Outcome phase_transition() {
  std::string bad;
  int points_below = 0, points_sufficient = 0;
  for (int p : {4, 6, 8}) {
    for (double lambda : {0.5, 1.0}) {
      gmsel::GraphClassSpec spec;
      spec.kind = gmsel::ClassKind::EdgeBounded;
      spec.p = p;
      spec.bound = 1;
      spec.lambda = lambda;
      spec.omega = lambda;
      const double fano = gmsel::ensemble_a_threshold(p, lambda);
      const int64_t n_suf = int64_t(std::ceil(gmsel::sufficient_threshold(
          spec, 0.1, gmsel::WeightVariant::KnownWeights)));
      gmsel::ExperimentConfig cfg;
      cfg.spec = spec;
      for (int64_t n = 1; n < int64_t(std::ceil(fano - 1e-9)); ++n) cfg.n_grid.push_back(n);
      const size_t below = cfg.n_grid.size();
      cfg.n_grid.push_back(n_suf);
      cfg.trials = 500;
      cfg.decoder = gmsel::DecoderKind::MaxLikelihood;
      cfg.weights = gmsel::WeightPolicy::UniformPlus;
      cfg.seed = CounterRng::derive(0xACC009, uint64_t(p * 10 + int(lambda * 2)));
      const gmsel::SweepResult res = gmsel::run_sweep(cfg);
      for (size_t i = 0; i < below; ++i) {
        ++points_below;
        if (res.points[i].wilson_lo > 0.5)
          bad += fmt(" p=%d,l=%g,n=%lld:lo=%.3f>0.5", p, lambda, (long long)res.points[i].n,
                     res.points[i].wilson_lo);
      }
      ++points_sufficient;
      const auto& top = res.points.back();
      if (top.wilson_hi < 0.9)
        bad += fmt(" p=%d,l=%g,n=%lld:hi=%.3f<0.9", p, lambda, (long long)top.n, top.wilson_hi);
    }
  }
  return {bad.empty(), bad.empty() ? fmt("%d sub-threshold points, %d sufficient points",
                                         points_below, points_sufficient)
                                   : fmt("violated:%s", bad.c_str())};
}

Outcome sweep_determinism() {
  gmsel::ExperimentConfig cfg;
  cfg.spec.kind = gmsel::ClassKind::EdgeBounded;
  cfg.spec.p = 4;
  cfg.spec.bound = 1;
  cfg.spec.lambda = 1.0;
  cfg.spec.omega = 1.0;
  cfg.n_grid = {1, 10, 50};
  cfg.trials = 200;
  cfg.seed = 0xD0C5EEDull;
  const std::string base = gmsel::to_csv(gmsel::run_sweep(cfg));

  char* prior = std::getenv("GMSEL_WORKERS");
  const std::string saved = prior ? prior : "";
  ::setenv("GMSEL_WORKERS", "1", 1);
  const std::string serial = gmsel::to_csv(gmsel::run_sweep(cfg));
  ::setenv("GMSEL_WORKERS", "5", 1);
  const std::string wide = gmsel::to_csv(gmsel::run_sweep(cfg));
  if (prior)
    ::setenv("GMSEL_WORKERS", saved.c_str(), 1);
  else
    ::unsetenv("GMSEL_WORKERS");

  const bool pass = base == serial && base == wide;
  return {pass, pass ? fmt("3 runs byte-identical, %zu bytes", base.size())
                     : "worker count changed the CSV bytes"};
}

}  // namespace

int main() {
  criterion(1, "divergences agree across both computation paths", dual_path_agreement);
  criterion(2, "single-edge ensemble pairwise divergence equals 2*lambda*tanh(lambda)",
            ensemble_a_closed_form);
  criterion(3, "clique agreement-odds formula matches exact inference",
            [] { return statement_checks({4}); });
  criterion(4, "ensemble divergence caps and matching/conditional lower bounds",
            [] { return statement_checks({5, 6, 8, 11}); });
  criterion(5, "spin flips move the likelihood statistic by the edge weight",
            [] { return statement_checks({12}); });
  criterion(6, "enumerated class sizes sit inside the closed-form brackets",
            cardinality_brackets);
  criterion(7, "empirical pairwise decoding error respects the exponential bound",
            pairwise_error_exponent);
  criterion(8, "correlation tail bound and exact-mean separation hold", tail_and_separation);
  criterion(9, "success curve brackets the necessary/sufficient thresholds", phase_transition);
  criterion(10, "sweeps are byte-deterministic across worker counts", sweep_determinism);
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failures);
  return failures;
}
