#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "gmsel/divergence.hpp"
#include "gmsel/ensembles.hpp"

using namespace gmsel;

namespace {

// Exact +1 odds of the pair (0,1) under the m-clique with edge (0,1) removed,
// independent of the closed formula: enumerate, read the correlation, form
// q/(1-q).
double clique_odds_oracle(int m, double lambda) {
  Graph g(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!(a == 0 && b == 1)) g.add_edge(a, b);
  auto mu = mean_params_exact(IsingParams::uniform(g, lambda));
  const double q = 0.5 * (1.0 + mu.mu[pair_index(m, 0, 1)]);
  return q / (1.0 - q);
}

}  // namespace

TEST_CASE("single-edge family structure") {
  auto e = ensemble_a(3, 0.5);
  CHECK(e.label == EnsembleLabel::A);
  CHECK(e.size() == 3);
  CHECK(e.spec.kind == ClassKind::DegreeBounded);
  CHECK(e.spec.bound == 1);
  CHECK(e.spec.lambda == 0.5);
  CHECK(e.spec.omega == 0.5);
  std::set<uint64_t> supports;
  for (const auto& m : e.models) {
    CHECK(m.support.edge_count() == 1);
    CHECK(m.min_edge_magnitude() == doctest::Approx(0.5));
    supports.insert(m.support.edges.hash());
  }
  CHECK(supports.size() == 3);  // all distinct
  CHECK(ensemble_a(6, 1.0).size() == 15);
  CHECK_THROWS_AS(ensemble_a(1, 0.5), PreconditionViolated);
}

TEST_CASE("single-edge family pairwise divergence is flat") {
  for (double lam : {0.1, 1.0}) {
    for (int p : {3, 5}) {
      auto e = ensemble_a(p, lam);
      const double want = 2.0 * lam * std::tanh(lam);
      for (size_t i = 0; i < e.size(); ++i)
        for (size_t j = i + 1; j < e.size(); ++j)
          CHECK(std::abs(sym_kl(e.models[i], e.models[j]) - want) <= 1e-10);
    }
  }
}

TEST_CASE("clique-group family structure") {
  auto e = ensemble_b_degree(6, 2, 0.7);
  CHECK(e.label == EnsembleLabel::BDegree);
  CHECK(e.size() == 6);  // 2 triangles, one removable edge each
  CHECK(e.spec.bound == 2);
  CHECK(e.spec.omega == doctest::Approx(1.4));
  for (const auto& m : e.models) {
    CHECK(m.support.edge_count() == 5);  // 6 clique edges minus one
    CHECK(m.support.max_degree() <= 2);
    CHECK(m.max_neighborhood_weight() <= 1.4 + 1e-12);
  }
  // Member count is at least p*d/4.
  CHECK(4 * int(e.size()) >= 6 * 2);

  auto e83 = ensemble_b_degree(8, 3, 1.0);
  CHECK(e83.size() == 12);
  for (const auto& m : e83.models) CHECK(m.support.edge_count() == 11);
  CHECK(4 * int(e83.size()) >= 8 * 3);

  CHECK_THROWS_AS(ensemble_b_degree(5, 2, 0.7), PreconditionViolated);
  CHECK_THROWS_AS(ensemble_b_degree(3, 1, 0.7), PreconditionViolated);
  CHECK_THROWS_AS(ensemble_b_degree(6, 0, 0.7), PreconditionViolated);
}

TEST_CASE("clique-minus-edge family structure") {
  CHECK(b_edge_clique_size(2) == 3);
  CHECK(b_edge_clique_size(3) == 3);
  CHECK(b_edge_clique_size(4) == 3);
  CHECK(b_edge_clique_size(5) == 4);
  CHECK(b_edge_clique_size(6) == 4);
  CHECK(b_edge_clique_size(9) == 5);
  CHECK(b_edge_clique_size(14) == 6);

  auto e = ensemble_b_edge(6, 2, 0.5);
  CHECK(e.label == EnsembleLabel::BEdge);
  CHECK(e.size() == 3);
  CHECK(e.spec.kind == ClassKind::EdgeBounded);
  CHECK(e.spec.omega == doctest::Approx(1.5));  // lambda * m = 0.5 * 3
  for (const auto& m : e.models) CHECK(m.support.edge_count() == 2);

  auto e85 = ensemble_b_edge(8, 5, 0.5);
  CHECK(e85.size() == 6);
  for (const auto& m : e85.models) CHECK(m.support.edge_count() == 5);

  CHECK_THROWS_AS(ensemble_b_edge(8, 1, 0.5), PreconditionViolated);
  CHECK_THROWS_AS(ensemble_b_edge(3, 5, 0.5), PreconditionViolated);
}

TEST_CASE("whole-class family") {
  GraphClassSpec spec;
  spec.kind = ClassKind::DegreeBounded;
  spec.p = 4;
  spec.bound = 2;
  spec.lambda = 0.6;
  spec.omega = 1.2;
  auto e = ensemble_c(spec, 0.6);
  CHECK(e.label == EnsembleLabel::C);
  CHECK(e.size() == 40);

  // Log-cardinality respects the closed-form lower bound (checked on a spec
  // inside the bracket formula's range, which needs 2d <= p-1).
  GraphClassSpec spec5 = spec;
  spec5.p = 5;
  auto e5 = ensemble_c(spec5, 0.6);
  auto cb = cardinality_bounds(spec5);
  CHECK(std::log(double(e5.size())) >= std::log(cb.lower) - 1e-12);
}

TEST_CASE("membership validation rejects tampered ensembles") {
  auto e = ensemble_a(4, 0.5);
  CHECK_NOTHROW(validate_membership(e));

  auto low = e;
  low.models[0].theta[0] = 0.25;  // below lambda
  CHECK_THROWS_AS(validate_membership(low), PreconditionViolated);

  auto heavy = e;
  heavy.models[0] = IsingParams::uniform(Graph(4, {{0, 1}, {1, 2}}), 0.5);  // degree 2
  CHECK_THROWS_AS(validate_membership(heavy), PreconditionViolated);

  auto wrong_p = e;
  wrong_p.models[0] = IsingParams::uniform(Graph(3, {{0, 1}}), 0.5);
  CHECK_THROWS_AS(validate_membership(wrong_p), DimensionMismatch);

  auto empty = e;
  empty.models[0] = IsingParams::uniform(Graph(4), 0.5);
  CHECK_THROWS_AS(validate_membership(empty), EmptyClass);

  auto tiny = e;
  tiny.models.resize(1);
  CHECK_THROWS_AS(validate_membership(tiny), PreconditionViolated);
}

TEST_CASE("clique-minus-edge odds formula") {
  // m = 3 collapses to a hyperbolic cosine.
  for (double lam : {0.4, 0.8, 1.2}) {
    CHECK(key_separation_ratio(3, lam).ratio ==
          doctest::Approx(std::cosh(2.0 * lam)).epsilon(1e-12));
  }
  // m = 2 is the empty graph: even odds.
  CHECK(key_separation_ratio(2, 1.0).ratio == doctest::Approx(1.0));

  // Formula agrees with exact enumeration.
  for (int m : {3, 4, 5}) {
    for (double lam : {0.7, 1.2}) {
      auto ks = key_separation_ratio(m, lam);
      CHECK(ks.ratio == doctest::Approx(clique_odds_oracle(m, lam)).epsilon(1e-9));
    }
  }

  // Closed-form floor at m = 3, lambda = 1: exp(0)/4.
  CHECK(key_separation_ratio(3, 1.0).bound == doctest::Approx(0.25).epsilon(1e-12));

  // The floor holds whenever lambda*m >= 2.
  for (int m = 3; m <= 8; ++m) {
    for (double lam : {2.0 / m, 1.0}) {
      auto ks = key_separation_ratio(m, lam);
      CHECK(ks.ratio >= ks.bound - 1e-12);
    }
  }

  CHECK_THROWS_AS(key_separation_ratio(1, 1.0), PreconditionViolated);
  CHECK_THROWS_AS(key_separation_ratio(3, 0.0), PreconditionViolated);
}

TEST_CASE("clique-minus-edge mean separation") {
  for (int m : {3, 4, 5}) {
    for (double lam : {0.7, 1.0}) {
      auto ms = key_mean_separation(m, lam);
      auto ks = key_separation_ratio(m, lam);
      CHECK(ms.mean == doctest::Approx((ks.ratio - 1.0) / (ks.ratio + 1.0)).epsilon(1e-12));
      // Independent bound expression.
      const double a = (m + 1.0) * std::exp(1.5 * lam);
      const double want = 1.0 - 2.0 * a / (std::exp(0.5 * lam * m) + a);
      CHECK(ms.bound == doctest::Approx(want).epsilon(1e-12));
      if (lam * m >= 2.0) CHECK(ms.mean >= ms.bound - 1e-12);
      // Exact mean agrees with enumeration.
      Graph g(m);
      for (int s = 0; s < m; ++s)
        for (int t = s + 1; t < m; ++t)
          if (!(s == 0 && t == 1)) g.add_edge(s, t);
      auto mu = mean_params_exact(IsingParams::uniform(g, lam));
      CHECK(ms.mean == doctest::Approx(mu.mu[pair_index(m, 0, 1)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("odds monotonicity across missing edges") {
  // Odds of a pair with its edge present never exceed e^{2 lambda} times the
  // odds of the same pair when its edge is the missing one.
  CHECK(fkg_ratio_check(3, 0.5) <= 1.0 + 1e-12);
  CHECK(fkg_ratio_check(4, 1.0) <= 1.0 + 1e-12);
  CHECK(fkg_ratio_check(5, 0.8) <= 1.0 + 1e-12);
  CHECK_THROWS_AS(fkg_ratio_check(2, 0.5), PreconditionViolated);
  CHECK_THROWS_AS(fkg_ratio_check(9, 0.5), TooLarge);
}
