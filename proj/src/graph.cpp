#include "gmsel/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace gmsel {

namespace {

void check_pair(int p, int s, int t) {
  if (s < 0 || t < 0 || s >= p || t >= p || s == t)
    throw DimensionMismatch("edge endpoints must be distinct vertices in [0, p)");
}

// Canonicalize so s < t.
std::pair<int, int> ordered(int s, int t) { return s < t ? std::pair{s, t} : std::pair{t, s}; }

}  // namespace

Graph::Graph(int p_, const std::vector<std::pair<int, int>>& edge_list) : p(p_) {
  check_vertex_count(p);
  for (auto [s, t] : edge_list) {
    if (has_edge(s, t)) throw ValidationError("duplicate edge in construction list");
    add_edge(s, t);
  }
}

bool Graph::has_edge(int s, int t) const {
  check_pair(p, s, t);
  auto [a, b] = ordered(s, t);
  return edges.test(pair_index(p, a, b));
}

void Graph::add_edge(int s, int t) {
  check_pair(p, s, t);
  auto [a, b] = ordered(s, t);
  edges.set(pair_index(p, a, b));
}

void Graph::remove_edge(int s, int t) {
  check_pair(p, s, t);
  auto [a, b] = ordered(s, t);
  edges.reset(pair_index(p, a, b));
}

int Graph::degree(int v) const {
  int d = 0;
  for (int u = 0; u < p; ++u) {
    if (u == v) continue;
    auto [a, b] = ordered(v, u);
    if (edges.test(pair_index(p, a, b))) ++d;
  }
  return d;
}

int Graph::max_degree() const {
  int m = 0;
  for (int v = 0; v < p; ++v) m = std::max(m, degree(v));
  return m;
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> out;
  const int np = pair_count(p);
  for (int i = 0; i < np; ++i)
    if (edges.test(i)) out.push_back(pair_vertices(p, i));
  return out;
}

uint32_t Graph::neighbor_mask(int v) const {
  uint32_t m = 0;
  for (int u = 0; u < p; ++u) {
    if (u == v) continue;
    auto [a, b] = ordered(v, u);
    if (edges.test(pair_index(p, a, b))) m |= uint32_t(1) << u;
  }
  return m;
}

std::string Graph::to_text() const {
  std::ostringstream os;
  os << "p=" << p << ";edges=";
  bool first = true;
  for (auto [s, t] : edge_list()) {
    if (!first) os << ',';
    os << s << '-' << t;
    first = false;
  }
  return os.str();
}

Graph Graph::parse_text(const std::string& text) {
  auto fail = [&](const char* why) { throw IoError(std::string("bad graph text: ") + why); };
  const std::string p_key = "p=";
  const std::string e_key = ";edges=";
  if (text.rfind(p_key, 0) != 0) fail("missing 'p='");
  size_t epos = text.find(e_key);
  if (epos == std::string::npos) fail("missing ';edges='");

  int p = 0;
  {
    const char* b = text.data() + p_key.size();
    const char* e = text.data() + epos;
    auto [ptr, ec] = std::from_chars(b, e, p);
    if (ec != std::errc() || ptr != e) fail("vertex count not an integer");
  }
  if (p < 1 || p > kMaxVertices) fail("vertex count out of range");

  Graph g(p);
  std::string rest = text.substr(epos + e_key.size());
  if (rest.empty()) return g;
  std::istringstream is(rest);
  std::string tok;
  int last_index = -1;
  while (std::getline(is, tok, ',')) {
    size_t dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 >= tok.size()) fail("edge token not 's-t'");
    int s = 0, t = 0;
    auto r1 = std::from_chars(tok.data(), tok.data() + dash, s);
    auto r2 = std::from_chars(tok.data() + dash + 1, tok.data() + tok.size(), t);
    if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != tok.data() + dash ||
        r2.ptr != tok.data() + tok.size())
      fail("edge endpoints not integers");
    if (s < 0 || t < 0 || s >= p || t >= p || s == t) fail("edge endpoint out of range");
    // The text contract fixes s < t and ascending pair order, which also
    // rules out duplicates.
    if (s > t) fail("edge endpoints must satisfy s < t");
    const int idx = pair_index(p, s, t);
    if (idx <= last_index) fail("edges out of canonical order or duplicated");
    last_index = idx;
    g.add_edge(s, t);
  }
  return g;
}

Graph symmetric_difference(const Graph& a, const Graph& b) {
  if (a.p != b.p) throw DimensionMismatch("symmetric difference needs equal vertex counts");
  Graph r(a.p);
  r.edges = a.edges ^ b.edges;
  return r;
}

namespace {

int matching_rec(const std::array<uint32_t, kMaxVertices>& adj, uint32_t active,
                 std::unordered_map<uint32_t, int>& memo) {
  // First active vertex with an active neighbor.
  uint32_t rest = active;
  int v = -1;
  while (rest) {
    int c = std::countr_zero(rest);
    if (adj[c] & active) {
      v = c;
      break;
    }
    rest &= rest - 1;
  }
  if (v < 0) return 0;

  auto it = memo.find(active);
  if (it != memo.end()) return it->second;

  // v unmatched, or v matched to one of its active neighbors.
  int best = matching_rec(adj, active & ~(uint32_t(1) << v), memo);
  uint32_t nb = adj[v] & active;
  while (nb) {
    int u = std::countr_zero(nb);
    nb &= nb - 1;
    uint32_t next = active & ~(uint32_t(1) << v) & ~(uint32_t(1) << u);
    best = std::max(best, 1 + matching_rec(adj, next, memo));
  }
  memo.emplace(active, best);
  return best;
}

}  // namespace

int matching_number(const Graph& g) {
  std::array<uint32_t, kMaxVertices> adj{};
  for (auto [s, t] : g.edge_list()) {
    adj[s] |= uint32_t(1) << t;
    adj[t] |= uint32_t(1) << s;
  }
  uint32_t active = g.p >= 32 ? ~uint32_t(0) : (uint32_t(1) << g.p) - 1;
  std::unordered_map<uint32_t, int> memo;
  return matching_rec(adj, active, memo);
}

}  // namespace gmsel
