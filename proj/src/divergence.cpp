#include "gmsel/divergence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace gmsel {

namespace {

void check_same_dim(const IsingParams& a, const IsingParams& b) {
  if (a.p != b.p) throw DimensionMismatch("divergence needs equal vertex counts");
  if (a.p > kExactMaxVertices) throw TooLarge("exact divergences are limited to p <= 16");
}

// (state-consistency mask, required-bits) for an assignment.
std::pair<uint32_t, uint32_t> assignment_masks(int p, const Assignment& cond) {
  uint32_t care = 0, want = 0;
  for (auto [v, s] : cond) {
    if (v < 0 || v >= p) throw DimensionMismatch("conditioned vertex out of range");
    if (s != 1 && s != -1) throw BadSpinValue("conditioned spins must be -1 or +1");
    const uint32_t bit = uint32_t(1) << v;
    if (care & bit) throw PreconditionViolated("vertex conditioned twice");
    care |= bit;
    if (s == 1) want |= bit;
  }
  return {care, want};
}

double logsumexp(const std::vector<double>& v) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : v) mx = std::max(mx, x);
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - mx);
  return mx + std::log(acc);
}

}  // namespace

double kl(const IsingParams& a, const IsingParams& b) {
  check_same_dim(a, b);
  const auto ea = state_energies(a);
  const auto eb = state_energies(b);
  const double lza = log_partition(a);
  const double lzb = log_partition(b);
  double acc = 0.0;
  for (size_t x = 0; x < ea.size(); ++x) {
    const double pa = std::exp(ea[x] - lza);
    acc += pa * ((ea[x] - lza) - (eb[x] - lzb));
  }
  return acc;
}

double sym_kl(const IsingParams& a, const IsingParams& b) { return kl(a, b) + kl(b, a); }

double sym_kl_mean_form(const IsingParams& a, const IsingParams& b) {
  check_same_dim(a, b);
  const auto ma = mean_params_exact(a);
  const auto mb = mean_params_exact(b);
  double acc = 0.0;
  for (int i = 0; i < pair_count(a.p); ++i)
    acc += (a.theta[i] - b.theta[i]) * (ma.mu[i] - mb.mu[i]);
  return acc;
}

double j_divergence(const IsingParams& a, const IsingParams& b) {
  check_same_dim(a, b);
  const IsingParams mid = average_params(a, b);
  return kl(mid, a) + kl(mid, b);
}

double j_divergence_cumulant(const IsingParams& a, const IsingParams& b) {
  check_same_dim(a, b);
  const IsingParams mid = average_params(a, b);
  return log_partition(a) + log_partition(b) - 2.0 * log_partition(mid);
}

namespace {

// Conditional law of the pair (u,v) given the assignment, as 4 probabilities
// indexed by (x_u > 0) + 2*(x_v > 0).
std::array<double, 4> conditional_pair_law(const IsingParams& m, int u, int v, uint32_t care,
                                           uint32_t want) {
  const auto e = state_energies(m);
  std::array<std::vector<double>, 4> buckets;
  for (size_t x = 0; x < e.size(); ++x) {
    if ((uint32_t(x) & care) != want) continue;
    const int idx = int((x >> u) & 1u) + 2 * int((x >> v) & 1u);
    buckets[idx].push_back(e[x]);
  }
  std::array<double, 4> logw;
  for (int i = 0; i < 4; ++i) {
    if (buckets[i].empty()) throw PreconditionViolated("assignment leaves an empty pair cell");
    logw[i] = logsumexp(buckets[i]);
  }
  const double mx = *std::max_element(logw.begin(), logw.end());
  std::array<double, 4> q;
  double tot = 0.0;
  for (int i = 0; i < 4; ++i) {
    q[i] = std::exp(logw[i] - mx);
    tot += q[i];
  }
  for (double& x : q) x /= tot;
  return q;
}

}  // namespace

double conditional_j(const IsingParams& a, const IsingParams& b, std::pair<int, int> e,
                     const Assignment& cond) {
  check_same_dim(a, b);
  auto [u, v] = e;
  if (u == v || u < 0 || v < 0 || u >= a.p || v >= a.p)
    throw DimensionMismatch("pair endpoints out of range");
  auto [care, want] = assignment_masks(a.p, cond);
  if ((care >> u) & 1u || (care >> v) & 1u)
    throw EndpointConditioned("conditioning set must avoid the pair under test");

  const IsingParams mid = average_params(a, b);
  const auto qa = conditional_pair_law(a, u, v, care, want);
  const auto qb = conditional_pair_law(b, u, v, care, want);
  const auto qm = conditional_pair_law(mid, u, v, care, want);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i)
    acc += qm[i] * (2.0 * std::log(qm[i]) - std::log(qa[i]) - std::log(qb[i]));
  return acc;
}

double conditional_j_cumulant(const IsingParams& a, const IsingParams& b, const Assignment& cond) {
  check_same_dim(a, b);
  auto [care, want] = assignment_masks(a.p, cond);
  const IsingParams mid = average_params(a, b);
  auto log_q = [&](const IsingParams& m) {
    const auto e = state_energies(m);
    std::vector<double> consistent;
    for (size_t x = 0; x < e.size(); ++x)
      if ((uint32_t(x) & care) == want) consistent.push_back(e[x]);
    if (consistent.empty()) throw PreconditionViolated("assignment excludes every state");
    return logsumexp(consistent);
  };
  return log_q(a) + log_q(b) - 2.0 * log_q(mid);
}

double flip_delta(const IsingParams& a, const IsingParams& b, const std::vector<int>& x) {
  if (a.p != b.p) throw DimensionMismatch("statistic needs equal vertex counts");
  if (int(x.size()) != a.p) throw DimensionMismatch("spin vector length must equal p");
  for (int v : x)
    if (v != 1 && v != -1) throw BadSpinValue("spins must be -1 or +1");
  double acc = 0.0;
  for (int i = 0; i < pair_count(a.p); ++i) {
    const double dw = a.theta[i] - b.theta[i];
    if (dw == 0.0) continue;
    auto [s, t] = pair_vertices(a.p, i);
    acc += dw * x[s] * x[t];
  }
  return acc;
}

}  // namespace gmsel
