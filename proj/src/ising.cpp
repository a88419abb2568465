#include "gmsel/ising.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <ostream>

#include "gmsel/rng.hpp"

namespace gmsel {

namespace {

constexpr char kSampleMagic[8] = {'G', 'M', 'S', 'S', 'A', 'M', 'P', '1'};

void check_exact_scale(int p) {
  if (p > kExactMaxVertices) throw TooLarge("exact inference is limited to p <= 16");
}

struct EdgeTerm {
  int s, t;
  double w;
};

std::vector<EdgeTerm> edge_terms(const IsingParams& m) {
  std::vector<EdgeTerm> out;
  const int np = pair_count(m.p);
  for (int i = 0; i < np; ++i) {
    if (m.theta[i] != 0.0) {
      auto [s, t] = pair_vertices(m.p, i);
      out.push_back({s, t, m.theta[i]});
    }
  }
  return out;
}

}  // namespace

IsingParams IsingParams::from_theta(int p, std::vector<double> theta) {
  check_vertex_count(p);
  if (int(theta.size()) != pair_count(p))
    throw DimensionMismatch("theta must have C(p,2) entries");
  IsingParams m;
  m.p = p;
  m.theta = std::move(theta);
  m.support = Graph(p);
  for (int i = 0; i < pair_count(p); ++i)
    if (m.theta[i] != 0.0) m.support.edges.set(i);
  return m;
}

IsingParams IsingParams::uniform(const Graph& g, double lambda) {
  std::vector<double> theta(pair_count(g.p), 0.0);
  for (int i = 0; i < pair_count(g.p); ++i)
    if (g.edges.test(i)) theta[i] = lambda;
  return from_theta(g.p, std::move(theta));
}

IsingParams IsingParams::signed_uniform(const Graph& g, double lambda,
                                        const std::vector<int>& sign) {
  if (int(sign.size()) != pair_count(g.p))
    throw DimensionMismatch("sign vector must have C(p,2) entries");
  std::vector<double> theta(pair_count(g.p), 0.0);
  for (int i = 0; i < pair_count(g.p); ++i) {
    if (!g.edges.test(i)) continue;
    if (sign[i] != 1 && sign[i] != -1) throw BadSpinValue("sign entries must be -1 or +1");
    theta[i] = lambda * sign[i];
  }
  return from_theta(g.p, std::move(theta));
}

double IsingParams::weight(int s, int t) const {
  if (s == t || s < 0 || t < 0 || s >= p || t >= p)
    throw DimensionMismatch("pair endpoints out of range");
  if (s > t) std::swap(s, t);
  return theta[pair_index(p, s, t)];
}

double IsingParams::min_edge_magnitude() const {
  double m = std::numeric_limits<double>::infinity();
  for (double w : theta)
    if (w != 0.0) m = std::min(m, std::fabs(w));
  return m;
}

double IsingParams::max_neighborhood_weight() const {
  std::vector<double> load(p, 0.0);
  for (int i = 0; i < pair_count(p); ++i) {
    if (theta[i] == 0.0) continue;
    auto [s, t] = pair_vertices(p, i);
    load[s] += std::fabs(theta[i]);
    load[t] += std::fabs(theta[i]);
  }
  return load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
}

IsingParams average_params(const IsingParams& a, const IsingParams& b) {
  if (a.p != b.p) throw DimensionMismatch("parameter average needs equal vertex counts");
  std::vector<double> theta(pair_count(a.p));
  for (size_t i = 0; i < theta.size(); ++i) theta[i] = 0.5 * (a.theta[i] + b.theta[i]);
  return IsingParams::from_theta(a.p, std::move(theta));
}

std::vector<double> state_energies(const IsingParams& m) {
  check_exact_scale(m.p);
  const auto terms = edge_terms(m);
  const size_t nstates = size_t(1) << m.p;
  std::vector<double> e(nstates, 0.0);
  for (const auto& t : terms) {
    const uint32_t bs = uint32_t(1) << t.s;
    const uint32_t bt = uint32_t(1) << t.t;
    for (size_t x = 0; x < nstates; ++x) {
      // x_s * x_t = +1 iff bits s and t agree.
      const bool agree = ((x & bs) != 0) == ((x & bt) != 0);
      e[x] += agree ? t.w : -t.w;
    }
  }
  return e;
}

double log_partition(const IsingParams& m) {
  check_exact_scale(m.p);
  const auto terms = edge_terms(m);
  const size_t nstates = size_t(1) << m.p;
  // Streaming log-sum-exp with a running max-shift.
  double mx = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (size_t x = 0; x < nstates; ++x) {
    double e = 0.0;
    for (const auto& t : terms) {
      const bool agree = (((x >> t.s) ^ (x >> t.t)) & 1u) == 0;
      e += agree ? t.w : -t.w;
    }
    if (e <= mx) {
      acc += std::exp(e - mx);
    } else {
      acc = acc * std::exp(mx - e) + 1.0;
      mx = e;
    }
  }
  return mx + std::log(acc);
}

double partition_function(const IsingParams& m) { return std::exp(log_partition(m)); }

double probability(const IsingParams& m, const std::vector<int>& x) {
  check_exact_scale(m.p);
  if (int(x.size()) != m.p) throw DimensionMismatch("spin vector length must equal p");
  for (int v : x)
    if (v != 1 && v != -1) throw BadSpinValue("spins must be -1 or +1");
  double e = 0.0;
  for (const auto& t : edge_terms(m)) e += t.w * x[t.s] * x[t.t];
  return std::exp(e - log_partition(m));
}

MeanParams mean_params_exact(const IsingParams& m) {
  check_exact_scale(m.p);
  const auto energies = state_energies(m);
  const double logz = log_partition(m);
  const size_t nstates = energies.size();
  std::vector<double> prob(nstates);
  for (size_t x = 0; x < nstates; ++x) prob[x] = std::exp(energies[x] - logz);

  MeanParams out;
  out.p = m.p;
  out.mu.assign(pair_count(m.p), 0.0);
  for (int i = 0; i < pair_count(m.p); ++i) {
    auto [s, t] = pair_vertices(m.p, i);
    double acc = 0.0;
    for (size_t x = 0; x < nstates; ++x) {
      const bool agree = (((x >> s) ^ (x >> t)) & 1u) == 0;
      acc += agree ? prob[x] : -prob[x];
    }
    out.mu[i] = acc;
  }
  return out;
}

SampleSet sample_exact(const IsingParams& m, int64_t n, uint64_t seed) {
  check_exact_scale(m.p);
  if (n < 0) throw PreconditionViolated("sample count must be nonnegative");
  const auto energies = state_energies(m);
  const double logz = log_partition(m);
  const size_t nstates = energies.size();
  std::vector<double> cum(nstates);
  double acc = 0.0;
  for (size_t x = 0; x < nstates; ++x) {
    acc += std::exp(energies[x] - logz);
    cum[x] = acc;
  }
  cum[nstates - 1] = 1.0;  // close the CDF against rounding

  SampleSet out;
  out.p = m.p;
  out.n = n;
  out.seed = seed;
  out.data.resize(size_t(n) * m.p);
  CounterRng rng(seed);
  for (int64_t i = 0; i < n; ++i) {
    const double u = rng.next_unit();
    const size_t x = std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
    for (int s = 0; s < m.p; ++s)
      out.data[size_t(i) * m.p + s] = ((x >> s) & 1u) ? int8_t(1) : int8_t(-1);
  }
  return out;
}

SampleSet sample_gibbs(const IsingParams& m, int64_t n, uint64_t seed, int64_t burn_in,
                       int64_t thin) {
  if (n < 0) throw PreconditionViolated("sample count must be nonnegative");
  if (burn_in < 0) burn_in = 100 * int64_t(m.p);
  if (thin <= 0) thin = m.p;

  // Neighbor lists once.
  std::vector<std::vector<std::pair<int, double>>> nbrs(m.p);
  for (int i = 0; i < pair_count(m.p); ++i) {
    if (m.theta[i] == 0.0) continue;
    auto [s, t] = pair_vertices(m.p, i);
    nbrs[s].push_back({t, m.theta[i]});
    nbrs[t].push_back({s, m.theta[i]});
  }

  SampleSet out;
  out.p = m.p;
  out.n = n;
  out.seed = seed;
  out.data.resize(size_t(n) * m.p);

  CounterRng rng(CounterRng::derive(seed, 0));  // chain 0 of this seed
  std::vector<int8_t> x(m.p);
  for (int s = 0; s < m.p; ++s) x[s] = (rng.next_u64() & 1u) ? int8_t(1) : int8_t(-1);

  auto sweep = [&]() {
    for (int s = 0; s < m.p; ++s) {
      double h = 0.0;
      for (auto [t, w] : nbrs[s]) h += w * x[t];
      const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * h));
      x[s] = (rng.next_unit() < p_plus) ? int8_t(1) : int8_t(-1);
    }
  };

  for (int64_t b = 0; b < burn_in; ++b) sweep();
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t t = 0; t < thin; ++t) sweep();
    std::memcpy(&out.data[size_t(i) * m.p], x.data(), size_t(m.p));
  }
  return out;
}

void SampleSet::save_binary(std::ostream& os) const {
  os.write(kSampleMagic, 8);
  const uint32_t p32 = uint32_t(p);
  const uint64_t n64 = uint64_t(n);
  os.write(reinterpret_cast<const char*>(&p32), 4);
  os.write(reinterpret_cast<const char*>(&n64), 8);
  os.write(reinterpret_cast<const char*>(&seed), 8);
  const int row_bytes = (p + 7) / 8;
  std::vector<char> row(row_bytes);
  for (int64_t i = 0; i < n; ++i) {
    std::fill(row.begin(), row.end(), 0);
    for (int s = 0; s < p; ++s)
      if (at(i, s) > 0) row[s >> 3] |= char(1u << (s & 7));
    os.write(row.data(), row_bytes);
  }
  if (!os) throw IoError("sample write failed");
}

SampleSet SampleSet::load_binary(std::istream& is) {
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kSampleMagic, 8) != 0)
    throw IoError("not a sample file (bad magic)");
  uint32_t p32 = 0;
  uint64_t n64 = 0, seed64 = 0;
  is.read(reinterpret_cast<char*>(&p32), 4);
  is.read(reinterpret_cast<char*>(&n64), 8);
  is.read(reinterpret_cast<char*>(&seed64), 8);
  if (!is || p32 < 1 || p32 > uint32_t(kMaxVertices)) throw IoError("bad sample header");

  SampleSet out;
  out.p = int(p32);
  out.n = int64_t(n64);
  out.seed = seed64;
  out.data.resize(size_t(out.n) * out.p);
  const int row_bytes = (out.p + 7) / 8;
  std::vector<char> row(row_bytes);
  for (int64_t i = 0; i < out.n; ++i) {
    is.read(row.data(), row_bytes);
    if (!is) throw IoError("truncated sample file");
    for (int s = 0; s < out.p; ++s)
      out.data[size_t(i) * out.p + s] =
          (row[s >> 3] >> (s & 7)) & 1 ? int8_t(1) : int8_t(-1);
  }
  return out;
}

void SampleSet::save_binary_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for write: " + path);
  save_binary(f);
}

SampleSet SampleSet::load_binary_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for read: " + path);
  return load_binary(f);
}

void SampleSet::write_csv(std::ostream& os) const {
  for (int64_t i = 0; i < n; ++i) {
    for (int s = 0; s < p; ++s) {
      if (s) os << ',';
      os << int(at(i, s));
    }
    os << '\n';
  }
}

}  // namespace gmsel
