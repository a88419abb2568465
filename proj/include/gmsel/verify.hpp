#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmsel/graph_class.hpp"

namespace gmsel {

// One aggregated inequality/equality check. For inequality checks `lhs` is
// the worst (closest to violating) quantity observed and `rhs` its bound;
// margin = lhs - rhs for lower bounds, rhs - lhs for upper bounds, so a
// nonnegative margin (up to kCheckSlack) means the row passes. For
// formula-agreement checks margin = tol - |relative error|.
struct CheckRow {
  std::string label;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;
  bool pass = false;
};

// Pass/fail table for one numbered statement of the accompanying write-up.
struct LemmaReport {
  int id = 0;
  std::string title;
  bool pass = false;
  uint64_t cases = 0;  // individual comparisons folded into the rows
  std::vector<CheckRow> rows;
};

// Absolute slack granted to exact inequalities for floating-point dust.
inline constexpr double kCheckSlack = 1e-12;

// id 4 — clique-minus-edge agreement odds: the closed binomial-sum formula
// matches exact inference within formula_tol (relative), the odds dominate
// exp(omega/2 - 3 lambda/2)/(m+1) whenever lambda*m >= 2, and the pair mean
// dominates its closed-form lower bound. Lambda grid per clique size m:
// {2/m, 0.8, 1.2} filtered to lambda*m >= 2; mean checks run for m <= 6.
LemmaReport check_key_separation(const std::vector<int>& clique_sizes, double formula_tol);

struct DegreeEnsembleConfig {
  int p = 8;
  int d = 3;
  double lambda = 0.7;
};

// id 5 — clique-group degree ensemble: every pairwise symmetrized
// divergence is at most 8*lambda*d*e^{3 lambda/2}/e^{lambda d/2}. Requires
// lambda*d >= 1 (statement hypothesis).
LemmaReport check_degree_ensemble_divergence(const std::vector<DegreeEnsembleConfig>& configs);

struct EdgeEnsembleConfig {
  int m = 3;  // clique size; the ensemble is built with k = C(m,2) - 1
  double lambda = 0.5;
};

// id 6 — clique-minus-edge edge ensemble: every pairwise symmetrized
// divergence is at most 16*omega*e^{5 lambda/2}*sinh(lambda)/e^{omega/2}
// with omega = lambda*m.
LemmaReport check_edge_ensemble_divergence(const std::vector<EdgeEnsembleConfig>& configs);

// id 8 — matching lower bound: for graph pairs from the max-degree-2 class
// on p in {4..p_max} vertices, J >= matching(E xor E') * sinh^2(l/4) /
// (3 e^{2w} + 1), where l / w are the realized min-edge / max-neighborhood
// statistics of the pair. Exhaustive over pairs with uniform +lambda
// weights, plus `signed_pairs` deterministically sampled pairs per
// configuration with random edge signs.
LemmaReport check_matching_lower_bound(int p_max, const std::vector<double>& lambdas,
                                       uint64_t signed_pairs, uint64_t seed);

// id 11 — conditional separation: for sampled class pairs and every edge in
// one support but not the other, the pair-conditional midpoint divergence
// given ANY assignment on ANY subset of the remaining vertices is at least
// sinh^2(l/4)/(3 e^{2w} + 1). Exhaustive over conditionings; `pair_samples`
// support pairs per (p, lambda).
LemmaReport check_conditional_separation(int p_max, const std::vector<double>& lambdas,
                                         uint64_t pair_samples, uint64_t seed);

// id 12 — flip statistic: for all graph pairs from the max-degree-2 class
// on p in {3..p_max} vertices, all states x, and every edge (s,t) in the
// support difference, flipping x_s, x_t, or both moves the log-likelihood
// statistic by at least |theta_st|. Exhaustive with uniform weights, plus
// `signed_pairs` sampled sign assignments.
LemmaReport check_flip_statistic(int p_max, double lambda, uint64_t signed_pairs, uint64_t seed);

// Spec-default grids for the CLI: ids 4, 5, 6, 8, 11, 12.
LemmaReport run_lemma_check(int id);

// Fixed-width pass/fail table (one row per CheckRow plus a verdict line).
std::string format_report(const LemmaReport& rep);

}  // namespace gmsel
