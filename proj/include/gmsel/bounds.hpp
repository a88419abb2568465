#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gmsel/ensembles.hpp"
#include "gmsel/graph_class.hpp"

namespace gmsel {

// Recovery is unreliable (worst-case error >= 1/2) whenever n is below the
// thresholds computed here; the sufficient thresholds guarantee error <= delta
// for the matching decoder. Sample sizes are returned as real numbers; callers
// round as needed.

// Generic pairwise-divergence form: log(M/4) / denom, where denom is half
// the mean pairwise symmetrized divergence of the family. Pre: M >= 5,
// denom > 0.
double fano_pairwise(int64_t m_models, double avg_sym_kl);

// Exact denominator of an ensemble by enumeration: half the mean pairwise
// S, i.e. sum_{k<l} S(theta_k, theta_l) / (M (M-1)).
double fano_denominator(const Ensemble& e);

// fano_pairwise applied to an ensemble's exact denominator.
double ensemble_fano_threshold(const Ensemble& e);

// Single-edge-family closed form log(C(p,2)/4) / (lambda tanh lambda).
double ensemble_a_threshold(int p, double lambda);

// Counting form: with sample entropy at most n*p the recovery of a class
// with log-cardinality L is unreliable below L/(2p). The degree-class
// specialization (d/8) log(p/(8d)) plugs in the class-size lower bound.
double fano_trivial_entropy(int p, double log_class_size);
double degree_entropy_term(int p, int d);

enum class WeightVariant { KnownWeights, UnknownWeights };

// The unknown-weights constant appears in a form with unbalanced
// parentheses; both readings are provided.
enum class UnknownConstantParse {
  BracketPlusOne,  // (3*exp(2w) + 1)   (default reading)
  ExponentShift,   // 3*exp(2w + 1)
};

struct NecessaryReport {
  std::vector<std::pair<std::string, double>> terms;
  double n = 0;  // max over terms (non-finite terms ignored)
};

// Degree class (pre: omega >= 1): max of
//   log p / (2 lambda tanh lambda),
//   exp(omega/4) d lambda log(p d/4 - 1) / (128 exp(3 lambda/2)),
//   (d/8) log(p/(8d)).
// Edge class (pre: omega >= 1): max of
//   log p / (2 lambda tanh lambda),
//   exp(omega/2) log(k/8) / (64 omega exp(5 lambda/2) sinh lambda).
// Terms whose log argument is nonpositive are reported as -inf.
NecessaryReport necessary_threshold(const GraphClassSpec& spec);

// Degree class, known weights:
//   3 (3 exp(2w)+1) / sinh^2(lambda/2) * d * (3 log p + log(2d) + log(1/delta)).
// Edge class, known weights:
//   (3 exp(2w)+1) / sinh^2(lambda/4) * ((k+1) log p + log(1/delta)).
// Unknown weights (both classes):
//   [ w * C / sinh^2(lambda/4) ]^2 * (16 log p + 4 log(2/delta)),
// with C per UnknownConstantParse.
double sufficient_threshold(const GraphClassSpec& spec, double delta, WeightVariant variant,
                            UnknownConstantParse parse = UnknownConstantParse::BracketPlusOne);

// Order-of-growth summaries with the constant fixed to 1 (asymptotic only,
// not sharp at desk scale).
enum class ScalingRegime { Necessary, Sufficient };

struct ScalingReport {
  std::string expression;   // human-readable form
  double value = 0;         // evaluated with c = 1
  bool lambda_regime_ok = false;  // lambda <= 1/d (degree) or lambda <= k^{-1/2} (edge)
};

// Degree class: necessary max{d^2, lambda^-2} log p; sufficient
// max{d^2, lambda^-2} d log p. Edge class: necessary max{k, lambda^-2} log p;
// sufficient k^2 log p. lambda_regime_ok reports whether lambda is small
// enough (<= 1/d resp. <= k^{-1/2}) for these orders to avoid exponential
// blowup in omega.
ScalingReport corollary_scalings(const GraphClassSpec& spec, ScalingRegime regime);

// Bundle of everything the CLI prints for one class spec.
struct ThresholdReport {
  GraphClassSpec spec;
  double delta = 0.1;
  NecessaryReport necessary;
  double sufficient_known = 0;
  double sufficient_unknown = 0;
  double sufficient_unknown_alt = 0;  // ExponentShift reading
};

ThresholdReport threshold_report(const GraphClassSpec& spec, double delta);

// 95% score interval for a binomial proportion.
std::pair<double, double> wilson_interval(int64_t successes, int64_t trials);

}  // namespace gmsel
