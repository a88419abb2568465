#pragma once

#include <vector>

#include "gmsel/divergence.hpp"
#include "gmsel/ising.hpp"

namespace gmsel {

// Candidate graph together with the weight box its parameters must respect:
// every edge weight magnitude in [lambda, omega], every per-vertex absolute
// weight sum at most omega.
struct FeasibleSet {
  Graph graph;
  double lambda = 1.0;
  double omega = 1.0;

  // Throws InfeasibleConstraints when no parameter vector fits the box.
  void validate() const;
};

struct DecodeResult {
  Graph chosen;
  double score = 0;          // winning score (log-likelihood or -distance)
  double runner_up_gap = 0;  // winner minus best competitor, >= 0
  int ties = 0;              // competitors exactly tying the winner
};

// Average per-sample log-likelihood via sufficient statistics:
//   sum_E theta_st mu_hat_st - log Z(theta).
double log_likelihood(const IsingParams& m, const SampleSet& samples);

// Maximum-likelihood selection among explicit candidates. Ties (exact score
// equality) are broken toward the smallest canonical edge bitmask and
// reported; a trial counting scheme should treat ties >= 1 as failure.
DecodeResult ml_decode(const std::vector<IsingParams>& candidates, const SampleSet& samples);

// exp(-(n/2) J(a,b)): probability bound that n samples from a score b at
// least as high as a.
double pairwise_error_bound(const IsingParams& a, const IsingParams& b, int64_t n);

// Empirical pair correlations.
MeanParams empirical_mean_params(const SampleSet& samples);

struct Projection {
  double distance = 0;   // min over the grid of ||mu_hat - mu(theta)||_inf
  IsingParams argmin;
};

// Nested grid search over per-edge weights in [-omega,-lambda] u [lambda,omega]
// subject to the per-vertex l1 budget: a full pass at `resolution` (default
// (omega-lambda)/8), then two refinements around the incumbent at 1/5 and
// 1/25 of it. Exact mean parameters per grid point. Heuristic: the returned
// minimum is exact only up to the final grid pitch. Guards: p <= 12,
// edge count <= 6.
Projection projection_distance(const FeasibleSet& fs, const MeanParams& mu_hat,
                               double resolution = -1.0);

// Projection decoder: pick the candidate whose feasible box lands closest
// to the empirical correlations (ties as in ml_decode).
DecodeResult mean_decode(const std::vector<FeasibleSet>& candidates, const SampleSet& samples);

// Same, scoring a caller-supplied correlation vector (e.g. exact means).
DecodeResult mean_decode_correlations(const std::vector<FeasibleSet>& candidates,
                                      const MeanParams& mu_hat);

}  // namespace gmsel
