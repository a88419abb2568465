#include "gmsel/decoders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gmsel {

namespace {

constexpr int kProjectionMaxVertices = 12;
constexpr int kProjectionMaxEdges = 6;

void check_samples(const SampleSet& s) {
  if (s.n < 1) throw PreconditionViolated("decoding needs at least one sample");
  check_vertex_count(s.p);
}

// Shared winner selection: scores to maximize, candidates indexed alongside.
template <class GraphOf>
DecodeResult pick_winner(const std::vector<double>& scores, GraphOf graph_of) {
  int best = 0;
  for (size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) {
      best = int(i);
    } else if (scores[i] == scores[best] && graph_of(i).edges < graph_of(best).edges) {
      best = int(i);
    }
  }
  DecodeResult r;
  r.chosen = graph_of(best);
  r.score = scores[best];
  double runner = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scores.size(); ++i) {
    if (int(i) == best) continue;
    if (scores[i] == scores[best]) ++r.ties;
    runner = std::max(runner, scores[i]);
  }
  r.runner_up_gap = scores.size() > 1 ? scores[best] - runner : 0.0;
  return r;
}

}  // namespace

void FeasibleSet::validate() const {
  check_vertex_count(graph.p);
  if (!(lambda > 0)) throw PreconditionViolated("lambda must be positive");
  if (!(omega >= lambda)) throw InfeasibleConstraints("omega < lambda leaves no edge weight");
  for (int v = 0; v < graph.p; ++v) {
    if (lambda * graph.degree(v) > omega + 1e-12)
      throw InfeasibleConstraints("vertex weight budget below lambda * degree");
  }
}

double log_likelihood(const IsingParams& m, const SampleSet& samples) {
  check_samples(samples);
  if (m.p != samples.p) throw DimensionMismatch("model and samples disagree on p");
  if (m.p > kExactMaxVertices) throw TooLarge("likelihood evaluation is limited to p <= 16");
  const MeanParams mu = empirical_mean_params(samples);
  double acc = 0.0;
  for (int i = 0; i < pair_count(m.p); ++i)
    if (m.theta[i] != 0.0) acc += m.theta[i] * mu.mu[i];
  return acc - log_partition(m);
}

DecodeResult ml_decode(const std::vector<IsingParams>& candidates, const SampleSet& samples) {
  if (candidates.empty()) throw EmptyCandidates("no candidate models");
  check_samples(samples);
  const MeanParams mu = empirical_mean_params(samples);
  std::vector<double> scores(candidates.size());
  for (size_t c = 0; c < candidates.size(); ++c) {
    const auto& m = candidates[c];
    if (m.p != samples.p) throw DimensionMismatch("candidate and samples disagree on p");
    double acc = 0.0;
    for (int i = 0; i < pair_count(m.p); ++i)
      if (m.theta[i] != 0.0) acc += m.theta[i] * mu.mu[i];
    scores[c] = acc - log_partition(m);
  }
  return pick_winner(scores, [&](size_t i) -> const Graph& { return candidates[i].support; });
}

double pairwise_error_bound(const IsingParams& a, const IsingParams& b, int64_t n) {
  if (n < 1) throw PreconditionViolated("sample count must be >= 1");
  return std::exp(-0.5 * double(n) * j_divergence(a, b));
}

MeanParams empirical_mean_params(const SampleSet& samples) {
  check_samples(samples);
  MeanParams out;
  out.p = samples.p;
  out.mu.assign(pair_count(samples.p), 0.0);
  for (int64_t r = 0; r < samples.n; ++r) {
    const int8_t* row = &samples.data[size_t(r) * samples.p];
    int idx = 0;
    for (int s = 0; s < samples.p; ++s)
      for (int t = s + 1; t < samples.p; ++t) out.mu[idx++] += double(row[s]) * double(row[t]);
  }
  for (double& v : out.mu) v /= double(samples.n);
  return out;
}

namespace {

struct GridSearch {
  const FeasibleSet* fs;
  const MeanParams* target;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<double>> options;  // candidate weights per edge
  std::vector<double> assigned;              // current weight per edge
  std::vector<double> load;                  // per-vertex running |theta| sum
  double best_dist = std::numeric_limits<double>::infinity();
  std::vector<double> best_weights;

  void run() {
    dfs(0);
  }

  void dfs(size_t e) {
    if (e == edges.size()) {
      evaluate();
      return;
    }
    auto [s, t] = edges[e];
    for (double w : options[e]) {
      const double a = std::fabs(w);
      // Remaining edges each need at least lambda of budget at their ends.
      if (load[s] + a > fs->omega + 1e-12 || load[t] + a > fs->omega + 1e-12) continue;
      load[s] += a;
      load[t] += a;
      bool ok = true;
      for (size_t f = e + 1; f < edges.size() && ok; ++f) {
        auto [u, v] = edges[f];
        if (load[u] + fs->lambda > fs->omega + 1e-12 ||
            load[v] + fs->lambda > fs->omega + 1e-12)
          ok = false;
      }
      if (ok) {
        assigned[e] = w;
        dfs(e + 1);
      }
      load[s] -= a;
      load[t] -= a;
    }
  }

  void evaluate() {
    const int p = fs->graph.p;
    std::vector<double> theta(pair_count(p), 0.0);
    for (size_t e = 0; e < edges.size(); ++e)
      theta[pair_index(p, edges[e].first, edges[e].second)] = assigned[e];
    const IsingParams m = IsingParams::from_theta(p, std::move(theta));
    const MeanParams mu = mean_params_exact(m);
    double d = 0.0;
    for (int i = 0; i < pair_count(p); ++i)
      d = std::max(d, std::fabs(mu.mu[i] - target->mu[i]));
    if (d < best_dist) {
      best_dist = d;
      best_weights = assigned;
    }
  }
};

}  // namespace

Projection projection_distance(const FeasibleSet& fs, const MeanParams& mu_hat,
                               double resolution) {
  fs.validate();
  if (fs.graph.p != mu_hat.p) throw DimensionMismatch("correlations and graph disagree on p");
  if (fs.graph.p > kProjectionMaxVertices)
    throw TooLarge("projection search is limited to p <= 12");
  if (fs.graph.edge_count() > kProjectionMaxEdges)
    throw TooLarge("projection search is limited to 6 edges");

  const double span = fs.omega - fs.lambda;
  double r = resolution > 0 ? resolution : span / 8.0;

  GridSearch gs;
  gs.fs = &fs;
  gs.target = &mu_hat;
  gs.edges = fs.graph.edge_list();
  gs.assigned.assign(gs.edges.size(), 0.0);
  gs.load.assign(fs.graph.p, 0.0);

  auto magnitudes_full = [&](double pitch) {
    std::vector<double> mags;
    if (span <= 0) {
      mags.push_back(fs.lambda);
      return mags;
    }
    for (double v = fs.lambda; v < fs.omega - 1e-12; v += pitch) mags.push_back(v);
    mags.push_back(fs.omega);
    return mags;
  };

  // Full pass: both signs of every magnitude, negative interval first so
  // ties resolve toward the smaller signed value.
  {
    const auto mags = magnitudes_full(r);
    std::vector<double> opts;
    for (auto it = mags.rbegin(); it != mags.rend(); ++it) opts.push_back(-*it);
    for (double v : mags) opts.push_back(v);
    gs.options.assign(gs.edges.size(), opts);
    gs.run();
  }
  if (!std::isfinite(gs.best_dist))
    throw InfeasibleConstraints("no grid assignment satisfies the weight budget");

  // Two refinement passes around the incumbent, sign kept per edge.
  for (double pitch : {r / 5.0, r / 25.0}) {
    if (span <= 0) break;
    std::vector<std::vector<double>> opts(gs.edges.size());
    for (size_t e = 0; e < gs.edges.size(); ++e) {
      const double c = gs.best_weights[e];
      const double sgn = c < 0 ? -1.0 : 1.0;
      const double mag = std::fabs(c);
      for (int j = -5; j <= 5; ++j) {
        const double v = std::clamp(mag + j * pitch, fs.lambda, fs.omega);
        opts[e].push_back(sgn * v);
      }
      std::sort(opts[e].begin(), opts[e].end());
      opts[e].erase(std::unique(opts[e].begin(), opts[e].end()), opts[e].end());
    }
    gs.options = std::move(opts);
    gs.run();
  }

  Projection out;
  out.distance = gs.best_dist;
  std::vector<double> theta(pair_count(fs.graph.p), 0.0);
  for (size_t e = 0; e < gs.edges.size(); ++e)
    theta[pair_index(fs.graph.p, gs.edges[e].first, gs.edges[e].second)] = gs.best_weights[e];
  out.argmin = IsingParams::from_theta(fs.graph.p, std::move(theta));
  return out;
}

DecodeResult mean_decode_correlations(const std::vector<FeasibleSet>& candidates,
                                      const MeanParams& mu_hat) {
  if (candidates.empty()) throw EmptyCandidates("no candidate graphs");
  std::vector<double> scores(candidates.size());
  for (size_t c = 0; c < candidates.size(); ++c)
    scores[c] = -projection_distance(candidates[c], mu_hat).distance;
  return pick_winner(scores, [&](size_t i) -> const Graph& { return candidates[i].graph; });
}

DecodeResult mean_decode(const std::vector<FeasibleSet>& candidates, const SampleSet& samples) {
  check_samples(samples);
  return mean_decode_correlations(candidates, empirical_mean_params(samples));
}

}  // namespace gmsel
