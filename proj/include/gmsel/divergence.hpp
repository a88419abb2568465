#pragma once

#include <utility>
#include <vector>

#include "gmsel/ising.hpp"

namespace gmsel {

// All divergences are computed by exact state enumeration (p <= 16) and
// require equal vertex counts. Values computed along two independent paths
// agree within kDualPathTol.

// Kullback-Leibler divergence D(a || b); asymmetric.
double kl(const IsingParams& a, const IsingParams& b);

// Symmetrized divergence S = D(a||b) + D(b||a), definitional path.
double sym_kl(const IsingParams& a, const IsingParams& b);

// S along the mean-parameter path:
//   sum over unordered pairs (theta_st - theta'_st) (mu_st - mu'_st).
double sym_kl_mean_form(const IsingParams& a, const IsingParams& b);

// Midpoint divergence J = D(avg||a) + D(avg||b) with avg = (theta+theta')/2,
// definitional path.
double j_divergence(const IsingParams& a, const IsingParams& b);

// J along the cumulant path: log Z(a) + log Z(b) - 2 log Z(avg).
double j_divergence_cumulant(const IsingParams& a, const IsingParams& b);

// One fixed-spin assignment on a subset of vertices.
using Assignment = std::vector<std::pair<int, int>>;  // (vertex, spin in {-1,+1})

// Midpoint divergence between the conditional distributions of the pair
// (e.first, e.second) given the assignment, under a and b; the reference
// middle law is the conditional of the averaged model. Unconditioned
// vertices are marginalized by enumeration. The conditioning set must not
// touch the pair itself.
double conditional_j(const IsingParams& a, const IsingParams& b, std::pair<int, int> e,
                     const Assignment& cond);

// Conditional J in cumulant form over the full unconditioned block:
//   log Q_a(cond) + log Q_b(cond) - 2 log Q_avg(cond),
// where Q_m(cond) sums exp-energies of states consistent with the
// assignment. Upper-bounds conditional_j for any pair choice.
double conditional_j_cumulant(const IsingParams& a, const IsingParams& b, const Assignment& cond);

// Log-likelihood-ratio statistic Delta(x) = sum_E theta x x - sum_E' theta' x x.
double flip_delta(const IsingParams& a, const IsingParams& b, const std::vector<int>& x);

}  // namespace gmsel
