#pragma once

#include <string>
#include <vector>

#include "gmsel/graph_class.hpp"
#include "gmsel/ising.hpp"

namespace gmsel {

enum class EnsembleLabel { A, BDegree, BEdge, C };

// A finite family of models inside one graph class, used to drive the
// information-theoretic necessary-sample-size machinery.
struct Ensemble {
  EnsembleLabel label = EnsembleLabel::A;
  GraphClassSpec spec;  // class the members belong to
  std::vector<IsingParams> models;

  size_t size() const { return models.size(); }
};

std::string ensemble_label_name(EnsembleLabel l);

// All C(p,2) single-edge models with weight +lambda. Class: degree bound 1,
// omega = lambda. Every pairwise symmetrized divergence equals
// 2*lambda*tanh(lambda).
Ensemble ensemble_a(int p, double lambda);

// floor(p/(d+1)) disjoint (d+1)-cliques with weight +lambda (leftover
// vertices isolated); one member per removable clique edge. Requires
// p >= 2(d+1); member count floor(p/(d+1))*C(d+1,2) >= p*d/4. Class:
// degree bound d, omega = lambda*d.
Ensemble ensemble_b_degree(int p, int d, double lambda);

// Largest m with C(m,2) <= k+1 vertices get a +lambda clique; one member
// per removable clique edge, so C(m,2) members each with C(m,2)-1 <= k
// edges. Requires m >= 3 and m <= p. Class: edge bound k, omega = lambda*m.
Ensemble ensemble_b_edge(int p, int k, double lambda);

// Clique size used by ensemble_b_edge.
int b_edge_clique_size(int k);

// Whole class as an ensemble, weight +lambda on every edge (enumeration
// guard applies).
Ensemble ensemble_c(const GraphClassSpec& spec, double lambda);

// Throws unless every member's support lies in the class and its weights
// respect the (lambda, omega) box. Called by the constructors.
void validate_membership(const Ensemble& e);

struct KeySeparation {
  double ratio = 0;  // odds q/(1-q) that a clique-minus-edge pair agrees
  double bound = 0;  // closed-form lower bound exp(omega/2 - 3 lambda/2)/(m+1)
};

// Closed binomial-sum odds that X_s X_t = +1 under the m-clique with edge
// (s,t) removed, all other weights lambda; matches exact inference. The
// bound is valid for omega = lambda*m >= 2.
KeySeparation key_separation_ratio(int m, double lambda);

// Exact mean E[X_s X_t] implied by key_separation_ratio, plus its
// closed-form lower bound 1 - 2(m+1)e^{3l/2} / (e^{w/2} + (m+1)e^{3l/2}).
struct MeanSeparation {
  double mean = 0;
  double bound = 0;
};
MeanSeparation key_mean_separation(int m, double lambda);

// Checks, by exact enumeration over all ordered pairs of distinct clique
// edges (s,t) != (u,v), that the +1 odds of (s,t) under the clique missing
// (u,v) never exceed e^{2 lambda} times the odds under the clique missing
// (s,t) itself. Returns the worst ratio-of-ratios / e^{2 lambda} observed
// (<= 1 means the comparison holds). Guard: m <= 8.
double fkg_ratio_check(int m, double lambda);

}  // namespace gmsel
