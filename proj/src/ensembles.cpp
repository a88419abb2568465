#include "gmsel/ensembles.hpp"

#include <cmath>

#include "gmsel/divergence.hpp"

namespace gmsel {

std::string ensemble_label_name(EnsembleLabel l) {
  switch (l) {
    case EnsembleLabel::A: return "A";
    case EnsembleLabel::BDegree: return "B-degree";
    case EnsembleLabel::BEdge: return "B-edge";
    case EnsembleLabel::C: return "C";
  }
  return "?";
}

void validate_membership(const Ensemble& e) {
  e.spec.validate();
  if (e.models.size() < 2) throw PreconditionViolated("an ensemble needs at least two models");
  for (const auto& m : e.models) {
    if (m.p != e.spec.p) throw DimensionMismatch("ensemble member has wrong vertex count");
    if (m.support.edge_count() < 1) throw EmptyClass("ensemble member has empty support");
    if (e.spec.kind == ClassKind::DegreeBounded) {
      if (m.support.max_degree() > e.spec.bound)
        throw PreconditionViolated("member exceeds the class degree bound");
    } else {
      if (m.support.edge_count() > e.spec.bound)
        throw PreconditionViolated("member exceeds the class edge bound");
    }
    if (m.min_edge_magnitude() < e.spec.lambda - 1e-12)
      throw PreconditionViolated("member edge weight below class lambda");
    if (m.max_neighborhood_weight() > e.spec.omega + 1e-12)
      throw PreconditionViolated("member neighborhood weight above class omega");
  }
}

Ensemble ensemble_a(int p, double lambda) {
  if (p < 2) throw PreconditionViolated("single-edge family needs p >= 2");
  Ensemble e;
  e.label = EnsembleLabel::A;
  e.spec = {ClassKind::DegreeBounded, p, 1, lambda, lambda};
  const int np = pair_count(p);
  for (int i = 0; i < np; ++i) {
    Graph g(p);
    g.edges.set(i);
    e.models.push_back(IsingParams::uniform(g, lambda));
  }
  validate_membership(e);
  return e;
}

Ensemble ensemble_b_degree(int p, int d, double lambda) {
  if (d < 1) throw PreconditionViolated("degree bound must be >= 1");
  if (p < 2 * (d + 1))
    throw PreconditionViolated("clique-group family needs p >= 2(d+1)");
  const int groups = p / (d + 1);

  Graph base(p);
  for (int g = 0; g < groups; ++g) {
    const int off = g * (d + 1);
    for (int a = 0; a < d + 1; ++a)
      for (int b = a + 1; b < d + 1; ++b) base.add_edge(off + a, off + b);
  }

  Ensemble e;
  e.label = EnsembleLabel::BDegree;
  e.spec = {ClassKind::DegreeBounded, p, d, lambda, lambda * d};
  for (auto [s, t] : base.edge_list()) {
    Graph g = base;
    g.remove_edge(s, t);
    e.models.push_back(IsingParams::uniform(g, lambda));
  }
  validate_membership(e);
  return e;
}

int b_edge_clique_size(int k) {
  int m = 2;
  while (pair_count(m + 1) <= k + 1) ++m;
  return m;
}

Ensemble ensemble_b_edge(int p, int k, double lambda) {
  const int m = b_edge_clique_size(k);
  if (m < 3) throw PreconditionViolated("edge budget too small for a clique-minus-edge family");
  if (m > p) throw PreconditionViolated("clique size exceeds vertex count");

  Graph clique(p);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) clique.add_edge(a, b);

  Ensemble e;
  e.label = EnsembleLabel::BEdge;
  e.spec = {ClassKind::EdgeBounded, p, k, lambda, lambda * m};
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Graph g = clique;
      g.remove_edge(a, b);
      e.models.push_back(IsingParams::uniform(g, lambda));
    }
  validate_membership(e);
  return e;
}

Ensemble ensemble_c(const GraphClassSpec& spec, double lambda) {
  Ensemble e;
  e.label = EnsembleLabel::C;
  e.spec = spec;
  for (const auto& g : enumerate_class(spec)) e.models.push_back(IsingParams::uniform(g, lambda));
  validate_membership(e);
  return e;
}

KeySeparation key_separation_ratio(int m, double lambda) {
  if (m < 2) throw PreconditionViolated("clique-minus-edge odds need m >= 2");
  if (!(lambda > 0)) throw PreconditionViolated("lambda must be positive");
  // Split states of the m-clique-minus-(s,t) model by the two free spins
  // and the count i of +1 spins among the remaining m-2. With
  // S = total spin sum, every energy is (lambda/2)(S^2 - m) - lambda x_s x_t;
  // the constant -m/2 and one factor e^{lambda} cancel in the odds.
  double num = 0.0, den = 0.0;
  const double h = 0.5 * lambda;
  for (int i = 0; i <= m - 2; ++i) {
    const double c = binom(m - 2, i);
    const double both_plus = double(2 * i - m + 4);   // S with x_s = x_t = +1
    const double both_minus = double(2 * i - m);      // S with x_s = x_t = -1
    const double split = double(2 * i - m + 2);       // S with x_s != x_t
    num += c * (std::exp(h * (both_plus * both_plus - 4.0)) +
                std::exp(h * (both_minus * both_minus - 4.0)));
    den += c * 2.0 * std::exp(h * (split * split));
  }
  KeySeparation out;
  out.ratio = num / den;
  out.bound = std::exp(0.5 * lambda * m - 1.5 * lambda) / double(m + 1);
  return out;
}

MeanSeparation key_mean_separation(int m, double lambda) {
  const auto ks = key_separation_ratio(m, lambda);
  MeanSeparation out;
  out.mean = (ks.ratio - 1.0) / (ks.ratio + 1.0);
  const double w = lambda * m;
  const double a = double(m + 1) * std::exp(1.5 * lambda);
  out.bound = 1.0 - 2.0 * a / (std::exp(0.5 * w) + a);
  return out;
}

double fkg_ratio_check(int m, double lambda) {
  if (m < 3) throw PreconditionViolated("odds comparison needs m >= 3");
  if (m > kEnumerateMaxVertices) throw TooLarge("odds comparison is limited to m <= 8");
  // Mean params of every clique-minus-edge model on m vertices.
  const Ensemble e = ensemble_b_edge(m, pair_count(m) - 1, lambda);
  std::vector<MeanParams> mus;
  mus.reserve(e.models.size());
  for (const auto& mod : e.models) mus.push_back(mean_params_exact(mod));

  // Model order matches pair order: model i is the clique missing pair i.
  const double gate = std::exp(2.0 * lambda);
  double worst = 0.0;
  const int np = pair_count(m);
  auto odds = [&](int model, int pair) {
    const double q = 0.5 * (1.0 + mus[model].mu[pair]);
    return q / (1.0 - q);
  };
  for (int miss = 0; miss < np; ++miss)
    for (int pr = 0; pr < np; ++pr) {
      if (pr == miss) continue;
      const double lhs = odds(miss, pr);        // odds of pr when pr is present
      const double rhs = gate * odds(pr, pr);   // odds of pr when pr is the missing edge
      worst = std::max(worst, lhs / rhs);
    }
  return worst;
}

}  // namespace gmsel
