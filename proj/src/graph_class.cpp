#include "gmsel/graph_class.hpp"

#include <cmath>

namespace gmsel {

// Analytic threshold formulas accept any vertex count; only paths that
// materialize graphs (enumeration, ensembles) impose scale guards.
void GraphClassSpec::validate() const {
  if (p < 2) throw PreconditionViolated("class needs at least two vertices");
  if (bound < 1) throw PreconditionViolated("class bound must be >= 1");
  if (!(lambda > 0)) throw PreconditionViolated("lambda must be positive");
  if (!(omega >= lambda)) throw EmptyClass("omega < lambda leaves no valid edge weight");
  if (kind == ClassKind::DegreeBounded) {
    if (bound > p - 1) throw PreconditionViolated("degree bound exceeds p-1");
    // Slack keeps exact-boundary specs (omega == lambda*d up to rounding) valid.
    if (lambda * bound > omega + 1e-12)
      throw EmptyClass("lambda*d > omega: no max-degree-d model fits the weight box");
  } else {
    if (bound > pair_count(p)) throw PreconditionViolated("edge bound exceeds C(p,2)");
  }
}

namespace {

struct EnumState {
  const GraphClassSpec* spec;
  const std::function<bool(const Graph&)>* visit;
  Graph g;
  std::vector<int> deg;
  bool stopped = false;
};

// Decides pair bits from the highest index down, exclude branch first, so
// leaves appear in ascending numeric-bitmask order. Degree / edge-count
// accounting prunes whole subtrees.
void enum_rec(EnumState& st, int bit, int edges_so_far) {
  if (st.stopped) return;
  if (bit < 0) {
    if (edges_so_far >= 1) {
      if (!(*st.visit)(st.g)) st.stopped = true;
    }
    return;
  }
  enum_rec(st, bit - 1, edges_so_far);
  if (st.stopped) return;

  const auto& spec = *st.spec;
  if (spec.kind == ClassKind::EdgeBounded && edges_so_far >= spec.bound) return;
  auto [s, t] = pair_vertices(spec.p, bit);
  if (spec.kind == ClassKind::DegreeBounded &&
      (st.deg[s] >= spec.bound || st.deg[t] >= spec.bound))
    return;

  st.g.edges.set(bit);
  ++st.deg[s];
  ++st.deg[t];
  enum_rec(st, bit - 1, edges_so_far + 1);
  st.g.edges.reset(bit);
  --st.deg[s];
  --st.deg[t];
}

}  // namespace

void for_each_in_class(const GraphClassSpec& spec, const std::function<bool(const Graph&)>& visit) {
  spec.validate();
  if (spec.p > kEnumerateMaxVertices)
    throw InfeasibleEnumeration("class enumeration is limited to p <= 8");
  EnumState st{&spec, &visit, Graph(spec.p), std::vector<int>(spec.p, 0)};
  enum_rec(st, pair_count(spec.p) - 1, 0);
}

std::vector<Graph> enumerate_class(const GraphClassSpec& spec) {
  std::vector<Graph> out;
  for_each_in_class(spec, [&](const Graph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

CardinalityBounds cardinality_bounds(const GraphClassSpec& spec) {
  spec.validate();
  CardinalityBounds cb;
  const int np = pair_count(spec.p);
  if (spec.kind == ClassKind::EdgeBounded) {
    if (2 * spec.bound > np)
      throw PreconditionViolated("edge-class bounds need k <= C(p,2)/2");
    cb.lower = binom(np, spec.bound);
    cb.upper = spec.bound * cb.lower;
  } else {
    if (2 * spec.bound > spec.p - 1)
      throw PreconditionViolated("degree-class bounds need d <= (p-1)/2");
    const int groups = spec.p / (spec.bound + 1);
    double fact = 1.0;
    for (int i = 2; i <= groups; ++i) fact *= i;
    cb.lower = std::pow(fact, 0.5 * spec.bound * (spec.bound + 1));
    const int max_edges = spec.p * spec.bound / 2;
    cb.upper = double(max_edges) * binom(np, max_edges);
  }
  return cb;
}

}  // namespace gmsel
