#pragma once

#include <cstdint>
#include <utility>

#include "gmsel/errors.hpp"

namespace gmsel {

// Hard size limits. Exact routines tighten these further.
inline constexpr int kMaxVertices = 24;
inline constexpr int kMaxPairs = kMaxVertices * (kMaxVertices - 1) / 2;  // 276
inline constexpr int kExactMaxVertices = 16;   // exact inference guard
inline constexpr int kEnumerateMaxVertices = 8;  // class enumeration guard

// Equality tolerance for values computed along two independent paths.
inline constexpr double kDualPathTol = 1e-10;
// Tolerance for checks that a probability vector sums to one.
inline constexpr double kNormTol = 1e-12;

constexpr int pair_count(int p) { return p * (p - 1) / 2; }

// Canonical index of the vertex pair (s, t), s < t, in lexicographic order:
// (0,1), (0,2), ..., (0,p-1), (1,2), ...
constexpr int pair_index(int p, int s, int t) {
  if (s < 0 || s >= t || t >= p) throw DimensionMismatch("pair (s,t) out of range for p");
  return s * p - s * (s + 1) / 2 + (t - s - 1);
}

// Inverse of pair_index.
inline std::pair<int, int> pair_vertices(int p, int idx) {
  if (idx < 0 || idx >= pair_count(p)) throw DimensionMismatch("pair index out of range");
  int s = 0;
  int row = p - 1;  // number of pairs with first vertex s
  while (idx >= row) {
    idx -= row;
    ++s;
    --row;
  }
  return {s, s + 1 + idx};
}

inline void check_vertex_count(int p) {
  if (p < 1 || p > kMaxVertices) throw DimensionMismatch("vertex count out of range");
}

// Binomial coefficient in double precision; exact for values below 2^53.
inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

}  // namespace gmsel
