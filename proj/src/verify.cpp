#include "gmsel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "gmsel/divergence.hpp"
#include "gmsel/ensembles.hpp"
#include "gmsel/errors.hpp"
#include "gmsel/ising.hpp"
#include "gmsel/rng.hpp"

namespace gmsel {

namespace {

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Worst-case tracker for a lower-bound inequality lhs >= rhs.
struct WorstLower {
  double lhs = 0, rhs = 0, margin = std::numeric_limits<double>::infinity();
  uint64_t n = 0;

  void add(double l, double r) {
    ++n;
    if (l - r < margin) {
      margin = l - r;
      lhs = l;
      rhs = r;
    }
  }

  CheckRow row(std::string label) const {
    bool ok = n > 0 && margin >= -kCheckSlack;
    return CheckRow{std::move(label), lhs, rhs, margin, ok};
  }
};

// Worst-case tracker for an upper-bound inequality lhs <= rhs.
struct WorstUpper {
  double lhs = 0, rhs = 0, margin = std::numeric_limits<double>::infinity();
  uint64_t n = 0;

  void add(double l, double r) {
    ++n;
    if (r - l < margin) {
      margin = r - l;
      lhs = l;
      rhs = r;
    }
  }

  CheckRow row(std::string label) const {
    bool ok = n > 0 && margin >= -kCheckSlack;
    return CheckRow{std::move(label), lhs, rhs, margin, ok};
  }
};

void finish(LemmaReport& rep) {
  rep.pass = !rep.rows.empty();
  for (const CheckRow& r : rep.rows) rep.pass = rep.pass && r.pass;
}

Graph clique_minus_edge(int m, int s, int t) {
  Graph g(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!(a == s && b == t)) g.add_edge(a, b);
  return g;
}

std::vector<int> state_vector(uint32_t mask, int p) {
  std::vector<int> x(p);
  for (int v = 0; v < p; ++v) x[v] = (mask >> v) & 1u ? +1 : -1;
  return x;
}

GraphClassSpec degree_two_spec(int p, double lambda) {
  GraphClassSpec spec;
  spec.kind = ClassKind::DegreeBounded;
  spec.p = p;
  spec.bound = 2;
  spec.lambda = lambda;
  spec.omega = 2 * lambda;
  return spec;
}

// Per-state sum of signed edge agreements: energy(x) = lambda * corr[x].
// `sign` is indexed by canonical pair (empty = all +1), as in signed_uniform.
std::vector<int8_t> correlation_table(const Graph& g, const std::vector<int>& sign) {
  const uint32_t states = uint32_t(1) << g.p;
  std::vector<int8_t> corr(states, 0);
  for (auto [s, t] : g.edge_list()) {
    int8_t sg = int8_t(sign.empty() ? 1 : sign[pair_index(g.p, s, t)]);
    for (uint32_t x = 0; x < states; ++x)
      corr[x] += ((x >> s ^ x >> t) & 1u) ? int8_t(-sg) : sg;
  }
  return corr;
}

// One random +-1 entry per canonical pair.
std::vector<int> random_pair_signs(CounterRng& rng, int p) {
  std::vector<int> sv(pair_count(p));
  for (int& v : sv) v = (rng.next_u64() & 1u) ? +1 : -1;
  return sv;
}

double log_z_from_corr(const std::vector<int8_t>& corr, double lambda) {
  double z = 0;
  for (int8_t c : corr) z += std::exp(lambda * c);
  return std::log(z);
}

double matching_bound(int match, double lambda, double omega) {
  double s = std::sinh(lambda / 4);
  return match * s * s / (3 * std::exp(2 * omega) + 1);
}

}  // namespace

LemmaReport check_key_separation(const std::vector<int>& clique_sizes, double formula_tol) {
  LemmaReport rep;
  rep.id = 4;
  rep.title = "clique-minus-edge agreement odds: formula, lower bound, mean bound";
  for (int m : clique_sizes) {
    if (m < 3 || m > kEnumerateMaxVertices) throw PreconditionViolated("clique size out of range");
    std::vector<double> grid;
    for (double l : {2.0 / m, 0.8, 1.2})
      if (l * m >= 2 - 1e-12) grid.push_back(l);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    WorstUpper formula_err;   // |relative error| <= tol
    WorstLower odds_bound;    // odds >= e^{w/2-3l/2}/(m+1)
    WorstLower mean_bound;    // exact mean >= closed-form floor
    for (double lambda : grid) {
      KeySeparation ks = key_separation_ratio(m, lambda);
      IsingParams model = IsingParams::uniform(clique_minus_edge(m, 0, 1), lambda);
      MeanParams mu = mean_params_exact(model);
      double mu01 = mu.mu[pair_index(m, 0, 1)];
      // Exact agreement odds as a ratio of restricted partition sums; the
      // (1+mu)/(1-mu) form loses digits once mu approaches 1.
      std::vector<double> energies = state_energies(model);
      double z_agree = 0, z_differ = 0;
      for (uint32_t x = 0; x < energies.size(); ++x)
        (((x >> 0 ^ x >> 1) & 1u) ? z_differ : z_agree) += std::exp(energies[x]);
      double odds = z_agree / z_differ;
      formula_err.add(std::abs(ks.ratio - odds) / std::max(1.0, std::abs(odds)), formula_tol);
      odds_bound.add(ks.ratio, ks.bound);
      if (m <= 6) {
        MeanSeparation msep = key_mean_separation(m, lambda);
        mean_bound.add(mu01, msep.bound);
        // The formula-implied mean must agree with enumeration as well.
        formula_err.add(std::abs(msep.mean - mu01) / std::max(1.0, std::abs(mu01)), formula_tol);
      }
    }
    rep.cases += formula_err.n + odds_bound.n + mean_bound.n;
    rep.rows.push_back(formula_err.row(fmt("m=%d formula vs exact inference (rel err)", m)));
    rep.rows.push_back(odds_bound.row(fmt("m=%d odds >= e^{w/2-3l/2}/(m+1)", m)));
    if (m <= 6) rep.rows.push_back(mean_bound.row(fmt("m=%d pair mean >= closed-form floor", m)));
  }
  finish(rep);
  return rep;
}

LemmaReport check_degree_ensemble_divergence(const std::vector<DegreeEnsembleConfig>& configs) {
  LemmaReport rep;
  rep.id = 5;
  rep.title = "degree ensemble pairwise divergence upper bound";
  for (const auto& cfg : configs) {
    if (cfg.lambda * cfg.d < 1)
      throw HypothesisViolated("degree ensemble bound needs lambda >= 1/d");
    Ensemble ens = ensemble_b_degree(cfg.p, cfg.d, cfg.lambda);
    double bound = 8 * cfg.lambda * cfg.d *
                   std::exp(1.5 * cfg.lambda - 0.5 * cfg.lambda * cfg.d);
    WorstUpper worst;
    for (size_t i = 0; i < ens.models.size(); ++i)
      for (size_t j = i + 1; j < ens.models.size(); ++j)
        worst.add(sym_kl(ens.models[i], ens.models[j]), bound);
    rep.cases += worst.n;
    rep.rows.push_back(
        worst.row(fmt("p=%d d=%d lambda=%.3g: max S over %llu pairs", cfg.p, cfg.d, cfg.lambda,
                      (unsigned long long)worst.n)));
    WorstLower count;
    count.add(double(ens.size()), cfg.p * cfg.d / 4.0);
    ++rep.cases;
    rep.rows.push_back(count.row(fmt("p=%d d=%d: member count >= p*d/4", cfg.p, cfg.d)));
  }
  finish(rep);
  return rep;
}

LemmaReport check_edge_ensemble_divergence(const std::vector<EdgeEnsembleConfig>& configs) {
  LemmaReport rep;
  rep.id = 6;
  rep.title = "edge ensemble pairwise divergence upper bound";
  for (const auto& cfg : configs) {
    int k = cfg.m * (cfg.m - 1) / 2 - 1;
    if (b_edge_clique_size(k) != cfg.m)
      throw PreconditionViolated("edge budget does not reproduce the clique size");
    Ensemble ens = ensemble_b_edge(cfg.m, k, cfg.lambda);
    double omega = cfg.lambda * cfg.m;
    double bound = 16 * omega * std::exp(2.5 * cfg.lambda) * std::sinh(cfg.lambda) *
                   std::exp(-omega / 2);
    WorstUpper worst;
    for (size_t i = 0; i < ens.models.size(); ++i)
      for (size_t j = i + 1; j < ens.models.size(); ++j)
        worst.add(sym_kl(ens.models[i], ens.models[j]), bound);
    rep.cases += worst.n;
    rep.rows.push_back(
        worst.row(fmt("m=%d lambda=%.3g: max S over %llu pairs", cfg.m, cfg.lambda,
                      (unsigned long long)worst.n)));
  }
  finish(rep);
  return rep;
}

LemmaReport check_matching_lower_bound(int p_max, const std::vector<double>& lambdas,
                                       uint64_t signed_pairs, uint64_t seed) {
  LemmaReport rep;
  rep.id = 8;
  rep.title = "midpoint divergence >= matching * sinh^2(l/4)/(3e^{2w}+1)";
  if (p_max > kEnumerateMaxVertices) throw TooLarge("class enumeration limited to 8 vertices");
  WorstUpper cross;  // fast-path J vs library j_divergence, sampled
  uint64_t stream = 0;
  for (int p = 4; p <= p_max; ++p) {
    for (double lambda : lambdas) {
      GraphClassSpec spec = degree_two_spec(p, lambda);
      std::vector<Graph> graphs = enumerate_class(spec);
      const size_t n = graphs.size();
      std::vector<std::vector<int8_t>> corr(n);
      std::vector<double> log_z(n), max_deg(n);
      for (size_t i = 0; i < n; ++i) {
        corr[i] = correlation_table(graphs[i], {});
        log_z[i] = log_z_from_corr(corr[i], lambda);
        max_deg[i] = graphs[i].max_degree();
      }
      const uint32_t states = uint32_t(1) << p;
      std::vector<double> half_exp(4 * kEnumerateMaxVertices + 1);
      for (size_t v = 0; v < half_exp.size(); ++v)
        half_exp[v] = std::exp(lambda * 0.5 * (double(v) - 2 * kEnumerateMaxVertices));

      WorstLower uni;
      uint64_t pair_id = 0;
      for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j, ++pair_id) {
          double z_avg = 0;
          for (uint32_t x = 0; x < states; ++x)
            z_avg += half_exp[size_t(corr[i][x] + corr[j][x]) + 2 * kEnumerateMaxVertices];
          double j_div = log_z[i] + log_z[j] - 2 * std::log(z_avg);
          int match = matching_number(symmetric_difference(graphs[i], graphs[j]));
          double omega = lambda * std::max(max_deg[i], max_deg[j]);
          uni.add(j_div, matching_bound(match, lambda, omega));
          if (pair_id % 1009 == 0) {
            double lib = j_divergence(IsingParams::uniform(graphs[i], lambda),
                                      IsingParams::uniform(graphs[j], lambda));
            cross.add(std::abs(j_div - lib), kDualPathTol);
          }
        }
      }
      rep.cases += uni.n;
      rep.rows.push_back(uni.row(
          fmt("p=%d lambda=%.3g uniform: %llu graphs, %llu pairs", p, lambda,
              (unsigned long long)n, (unsigned long long)uni.n)));

      CounterRng rng(CounterRng::derive(seed, ++stream));
      WorstLower sgn;
      for (uint64_t s = 0; s < signed_pairs; ++s) {
        size_t i = size_t(rng.next_u64() % n);
        size_t j = size_t(rng.next_u64() % n);
        if (i == j) continue;
        std::vector<int> si = random_pair_signs(rng, p), sj = random_pair_signs(rng, p);
        std::vector<int8_t> ci = correlation_table(graphs[i], si);
        std::vector<int8_t> cj = correlation_table(graphs[j], sj);
        double z_avg = 0;
        for (uint32_t x = 0; x < states; ++x)
          z_avg += half_exp[size_t(ci[x] + cj[x]) + 2 * kEnumerateMaxVertices];
        double j_div = log_z_from_corr(ci, lambda) + log_z_from_corr(cj, lambda) -
                       2 * std::log(z_avg);
        int match = matching_number(symmetric_difference(graphs[i], graphs[j]));
        double omega = lambda * std::max(max_deg[i], max_deg[j]);
        sgn.add(j_div, matching_bound(match, lambda, omega));
        if (s % 997 == 0) {
          double lib = j_divergence(IsingParams::signed_uniform(graphs[i], lambda, si),
                                    IsingParams::signed_uniform(graphs[j], lambda, sj));
          cross.add(std::abs(j_div - lib), kDualPathTol);
        }
      }
      rep.cases += sgn.n;
      rep.rows.push_back(sgn.row(
          fmt("p=%d lambda=%.3g signed: %llu sampled pairs", p, lambda,
              (unsigned long long)sgn.n)));
    }
  }
  rep.cases += cross.n;
  rep.rows.push_back(cross.row("fast-path J agrees with library J (abs err)"));
  finish(rep);
  return rep;
}

LemmaReport check_conditional_separation(int p_max, const std::vector<double>& lambdas,
                                         uint64_t pair_samples, uint64_t seed) {
  LemmaReport rep;
  rep.id = 11;
  rep.title = "conditional pair divergence >= sinh^2(l/4)/(3e^{2w}+1)";
  if (p_max > kEnumerateMaxVertices) throw TooLarge("class enumeration limited to 8 vertices");
  uint64_t stream = 0;
  for (int p = 4; p <= p_max; ++p) {
    for (double lambda : lambdas) {
      GraphClassSpec spec = degree_two_spec(p, lambda);
      std::vector<Graph> graphs = enumerate_class(spec);
      const size_t n = graphs.size();
      CounterRng rng(CounterRng::derive(seed, ++stream));
      WorstLower worst;
      for (uint64_t sample = 0; sample < pair_samples; ++sample) {
        size_t i = size_t(rng.next_u64() % n);
        size_t j = size_t(rng.next_u64() % n);
        if (i == j) continue;
        bool use_signs = (sample & 1u) != 0;
        auto make = [&](const Graph& g) {
          if (!use_signs) return IsingParams::uniform(g, lambda);
          return IsingParams::signed_uniform(g, lambda, random_pair_signs(rng, p));
        };
        IsingParams a = make(graphs[i]);
        IsingParams b = make(graphs[j]);
        double omega = std::max(a.max_neighborhood_weight(), b.max_neighborhood_weight());
        double bound = matching_bound(1, lambda, omega);
        Graph diff = symmetric_difference(graphs[i], graphs[j]);
        for (auto [s, t] : diff.edge_list()) {
          uint32_t others = 0;
          for (int v = 0; v < p; ++v)
            if (v != s && v != t) others |= uint32_t(1) << v;
          // Every subset of the remaining vertices, every assignment on it.
          for (uint32_t sub = others;; sub = (sub - 1) & others) {
            std::vector<int> verts;
            for (int v = 0; v < p; ++v)
              if (sub >> v & 1u) verts.push_back(v);
            for (uint32_t bits = 0; bits < (uint32_t(1) << verts.size()); ++bits) {
              Assignment cond;
              for (size_t q = 0; q < verts.size(); ++q)
                cond.emplace_back(verts[q], (bits >> q & 1u) ? +1 : -1);
              worst.add(conditional_j(a, b, {s, t}, cond), bound);
            }
            if (sub == 0) break;
          }
        }
      }
      rep.cases += worst.n;
      rep.rows.push_back(worst.row(
          fmt("p=%d lambda=%.3g: %llu conditional evaluations", p, lambda,
              (unsigned long long)worst.n)));
    }
  }
  finish(rep);
  return rep;
}

LemmaReport check_flip_statistic(int p_max, double lambda, uint64_t signed_pairs, uint64_t seed) {
  LemmaReport rep;
  rep.id = 12;
  rep.title = "some flip of (x_s,x_t) moves the likelihood statistic by >= |theta_st|";
  if (p_max > kEnumerateMaxVertices) throw TooLarge("class enumeration limited to 8 vertices");
  uint64_t stream = 0;
  for (int p = 3; p <= p_max; ++p) {
    GraphClassSpec spec = degree_two_spec(p, lambda);
    std::vector<Graph> graphs = enumerate_class(spec);
    const size_t n = graphs.size();
    const uint32_t states = uint32_t(1) << p;

    // Smallest guaranteed move across all states/difference edges; the
    // statement promises >= lambda for uniform-magnitude weights.
    auto scan_pair = [&](const IsingParams& a, const IsingParams& b, const Graph& ga,
                         const Graph& gb, WorstLower& acc) {
      std::vector<double> delta(states);
      for (uint32_t x = 0; x < states; ++x)
        delta[x] = flip_delta(a, b, state_vector(x, p));
      Graph diff = symmetric_difference(ga, gb);
      for (auto [s, t] : diff.edge_list()) {
        const uint32_t bs = uint32_t(1) << s, bt = uint32_t(1) << t;
        for (uint32_t x = 0; x < states; ++x) {
          double d0 = delta[x];
          double move = std::max({std::abs(delta[x ^ bs] - d0), std::abs(delta[x ^ bt] - d0),
                                  std::abs(delta[x ^ bs ^ bt] - d0)});
          acc.add(move, lambda);
        }
      }
    };

    WorstLower uni;
    for (size_t i = 0; i < n; ++i) {
      IsingParams a = IsingParams::uniform(graphs[i], lambda);
      for (size_t j = i + 1; j < n; ++j)
        scan_pair(a, IsingParams::uniform(graphs[j], lambda), graphs[i], graphs[j], uni);
    }
    rep.cases += uni.n;
    rep.rows.push_back(uni.row(
        fmt("p=%d uniform: %llu graphs, exhaustive states and pairs", p, (unsigned long long)n)));

    CounterRng rng(CounterRng::derive(seed, ++stream));
    WorstLower sgn;
    for (uint64_t s = 0; s < signed_pairs; ++s) {
      size_t i = size_t(rng.next_u64() % n);
      size_t j = size_t(rng.next_u64() % n);
      if (i == j) continue;
      auto make = [&](const Graph& g) {
        return IsingParams::signed_uniform(g, lambda, random_pair_signs(rng, p));
      };
      scan_pair(make(graphs[i]), make(graphs[j]), graphs[i], graphs[j], sgn);
    }
    rep.cases += sgn.n;
    rep.rows.push_back(sgn.row(
        fmt("p=%d signed: %llu flip comparisons", p, (unsigned long long)sgn.n)));
  }
  finish(rep);
  return rep;
}

LemmaReport run_lemma_check(int id) {
  switch (id) {
    case 4:
      return check_key_separation({3, 4, 5, 6, 7, 8}, 1e-9);
    case 5:
      return check_degree_ensemble_divergence(
          {{8, 3, 0.7}, {6, 2, 1.0}, {10, 4, 0.5}});
    case 6:
      return check_edge_ensemble_divergence(
          {{3, 0.5}, {3, 2.0 / 3}, {4, 0.5}, {5, 0.5}, {5, 0.4}});
    case 8:
      return check_matching_lower_bound(6, {0.25, 0.5, 1.0}, 2000, 0x8A11CEull);
    case 11:
      return check_conditional_separation(6, {0.25, 0.5, 1.0}, 40, 0xC01D5EEDull);
    case 12:
      return check_flip_statistic(5, 1.0, 2000, 0xF11B5EEDull);
    default:
      throw ValidationError("unknown statement id (valid: 4, 5, 6, 8, 11, 12)");
  }
}

std::string format_report(const LemmaReport& rep) {
  std::ostringstream os;
  os << "statement " << rep.id << ": " << rep.title << "\n";
  size_t width = 0;
  for (const CheckRow& r : rep.rows) width = std::max(width, r.label.size());
  for (const CheckRow& r : rep.rows) {
    os << (r.pass ? "  [ ok ] " : "  [FAIL] ") << r.label
       << std::string(width - r.label.size() + 2, ' ')
       << fmt("lhs=%-14.8g rhs=%-14.8g margin=%.3g", r.lhs, r.rhs, r.margin) << "\n";
  }
  os << (rep.pass ? "PASS" : "FAIL") << " (" << rep.cases << " comparisons)\n";
  return os.str();
}

}  // namespace gmsel
