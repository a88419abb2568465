#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gmsel/graph.hpp"

namespace gmsel {

enum class ClassKind { DegreeBounded, EdgeBounded };

// A nonempty-graph class with a weight box: DegreeBounded holds graphs of
// max degree <= bound, EdgeBounded graphs with 1..bound edges; lambda is the
// minimum edge-weight magnitude and omega the maximum per-vertex absolute
// weight sum a member model may carry.
struct GraphClassSpec {
  ClassKind kind = ClassKind::DegreeBounded;
  int p = 2;
  int bound = 1;  // d (degree) or k (edge count)
  double lambda = 1.0;
  double omega = 1.0;

  // Throws EmptyClass / PreconditionViolated when no model can satisfy the
  // box: lambda > 0, lambda <= omega, and for DegreeBounded lambda*d <= omega
  // (a max-degree-d graph must support weights of magnitude >= lambda).
  void validate() const;

  std::string kind_name() const { return kind == ClassKind::DegreeBounded ? "degree" : "edge"; }
};

// Visits every class member exactly once, in ascending edge-bitmask order.
// Guard: p <= kEnumerateMaxVertices. The callback returns false to stop.
void for_each_in_class(const GraphClassSpec& spec, const std::function<bool(const Graph&)>& visit);

std::vector<Graph> enumerate_class(const GraphClassSpec& spec);

struct CardinalityBounds {
  double lower = 0;
  double upper = 0;
};

// Closed-form class-size bracket. EdgeBounded (pre: k <= C(p,2)/2):
//   C(C(p,2), k) <= |class| <= k * C(C(p,2), k).
// DegreeBounded (pre: d <= (p-1)/2), with f = floor(p/(d+1)) and
// e = floor(p*d/2):
//   (f!)^(d(d+1)/2) <= |class| <= e * C(C(p,2), e).
CardinalityBounds cardinality_bounds(const GraphClassSpec& spec);

}  // namespace gmsel
