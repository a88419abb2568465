#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gmsel/errors.hpp"
#include "gmsel/pairs.hpp"

namespace gmsel {

// Fixed-width bitmask over canonical pair indices (bit i = pair i present).
// Word 0 holds bits 0..63; comparisons order masks as one wide integer.
class EdgeMask {
 public:
  static constexpr int kWords = (kMaxPairs + 63) / 64;

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  int count() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  EdgeMask operator^(const EdgeMask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a ^ b; }); }
  EdgeMask operator&(const EdgeMask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a & b; }); }
  EdgeMask operator|(const EdgeMask& o) const { return apply(o, [](uint64_t a, uint64_t b) { return a | b; }); }

  bool operator==(const EdgeMask& o) const { return w_ == o.w_; }

  // Numeric order of the mask as a kWords*64-bit integer.
  std::strong_ordering operator<=>(const EdgeMask& o) const {
    for (int i = kWords - 1; i >= 0; --i) {
      if (w_[i] != o.w_[i]) return w_[i] <=> o.w_[i];
    }
    return std::strong_ordering::equal;
  }

  uint64_t word(int i) const { return w_[i]; }

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  template <class F>
  EdgeMask apply(const EdgeMask& o, F f) const {
    EdgeMask r;
    for (int i = 0; i < kWords; ++i) r.w_[i] = f(w_[i], o.w_[i]);
    return r;
  }

  std::array<uint64_t, kWords> w_{};
};

// Undirected simple graph on vertices 0..p-1, edges as a canonical-pair
// bitmask. 1 <= p <= 24.
struct Graph {
  int p = 1;
  EdgeMask edges;

  Graph() = default;
  explicit Graph(int p_) : p(p_) { check_vertex_count(p); }
  Graph(int p_, const std::vector<std::pair<int, int>>& edge_list);

  bool has_edge(int s, int t) const;
  void add_edge(int s, int t);
  void remove_edge(int s, int t);

  int edge_count() const { return edges.count(); }
  int degree(int v) const;
  int max_degree() const;
  std::vector<std::pair<int, int>> edge_list() const;
  // Bitmask over vertices adjacent to v.
  uint32_t neighbor_mask(int v) const;

  bool operator==(const Graph& o) const { return p == o.p && edges == o.edges; }

  // Text form "p=<int>;edges=<s-t,s-t,...>", edges in canonical order,
  // vertices 0-based. Empty edge set prints "edges=".
  std::string to_text() const;
  static Graph parse_text(const std::string& text);
};

// Edgewise symmetric difference; requires equal vertex counts.
Graph symmetric_difference(const Graph& a, const Graph& b);

// Size of a maximum matching; exact recursion with memoization on the
// active-vertex mask. p <= 24.
int matching_number(const Graph& g);

}  // namespace gmsel
