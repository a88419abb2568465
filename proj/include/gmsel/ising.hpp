#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gmsel/graph.hpp"

namespace gmsel {

// Pairwise binary model on spins {-1,+1}^p with no external field:
//   P(x) = exp( sum_{(s,t) in E} theta_st x_s x_t ) / Z(theta).
// theta is indexed by canonical pair index; support holds exactly the
// pairs with nonzero weight.
struct IsingParams {
  int p = 1;
  std::vector<double> theta;  // size pair_count(p)
  Graph support;

  static IsingParams from_theta(int p, std::vector<double> theta);
  // +lambda on every edge of g.
  static IsingParams uniform(const Graph& g, double lambda);
  // sign[i] in {-1,+1} applied per canonical pair; magnitude lambda on edges.
  static IsingParams signed_uniform(const Graph& g, double lambda, const std::vector<int>& sign);

  double weight(int s, int t) const;

  // Minimum |theta_st| over edges (lambda*); +inf for the empty support.
  double min_edge_magnitude() const;
  // Max_s sum_t |theta_st| (omega*).
  double max_neighborhood_weight() const;
};

// Pointwise parameter average (theta + theta')/2; support recomputed from
// the nonzero entries.
IsingParams average_params(const IsingParams& a, const IsingParams& b);

// Pair correlations mu_st = E[X_s X_t], canonical pair order.
struct MeanParams {
  int p = 1;
  std::vector<double> mu;
};

// n spin rows drawn from one model; data holds n*p entries in {-1,+1},
// row-major.
struct SampleSet {
  int p = 1;
  int64_t n = 0;
  uint64_t seed = 0;
  std::vector<int8_t> data;

  int8_t at(int64_t row, int site) const { return data[size_t(row) * p + site]; }

  // Binary layout (little-endian): magic "GMSSAMP1" (8 bytes), u32 p,
  // u64 n, u64 seed, then n rows of ceil(p/8) bytes; bit j of a row byte
  // block set <=> spin j is +1.
  void save_binary(std::ostream& os) const;
  static SampleSet load_binary(std::istream& is);
  void save_binary_file(const std::string& path) const;
  static SampleSet load_binary_file(const std::string& path);

  // One sample per line, comma-separated -1/+1 values.
  void write_csv(std::ostream& os) const;
};

// --- exact inference (guard: p <= kExactMaxVertices) ---

// Energies sum_E theta_st x_s x_t for every state mask (bit s set <=> +1).
std::vector<double> state_energies(const IsingParams& m);

// log Z via a single streaming pass with running max-shift.
double log_partition(const IsingParams& m);
double partition_function(const IsingParams& m);

// Probability of one spin vector (entries must be -1/+1).
double probability(const IsingParams& m, const std::vector<int>& x);

MeanParams mean_params_exact(const IsingParams& m);

// --- samplers (deterministic in seed; see rng.hpp for the contract) ---

// Inverse-CDF over the full state table.
SampleSet sample_exact(const IsingParams& m, int64_t n, uint64_t seed);

// Systematic-sweep Gibbs chain: burn_in full sweeps, then one sample kept
// every `thin` sweeps. Defaults (passed as <0): burn_in = 100*p, thin = p.
SampleSet sample_gibbs(const IsingParams& m, int64_t n, uint64_t seed, int64_t burn_in = -1,
                       int64_t thin = -1);

}  // namespace gmsel
