#include "support.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "twi/random.hpp"

namespace twi::testing {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> es;
  for (auto [a, b] : edges) es.push_back({std::min(a, b), std::max(a, b)});
  return Graph(n, es);
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return make_graph(n, e);
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return make_graph(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return make_graph(n, e);
}

Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return make_graph(leaves + 1, e);
}

Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.push_back({i, a + j});
  return make_graph(a + b, e);
}

Graph wheel_graph(int rim) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < rim; ++i) {
    e.push_back({0, 1 + i});
    e.push_back({1 + i, 1 + (i + 1) % rim});
  }
  return make_graph(rim + 1, e);
}

Graph grid_graph(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  return make_graph(rows * cols, e);
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) e.push_back({i, j});
  return make_graph(n, e);
}

const std::vector<NamedGraph>& small_graph_corpus() {
  static const std::vector<NamedGraph> corpus = [] {
    std::vector<NamedGraph> c;
    std::set<std::pair<int, std::vector<Edge>>> seen;
    auto add = [&](std::string name, Graph g) {
      if (seen.insert({g.vertex_count(), g.edges()}).second) c.push_back({std::move(name), std::move(g)});
    };
    for (int n = 1; n <= 3; ++n) add("empty" + std::to_string(n), Graph(n));
    for (int n = 2; n <= 8; ++n) add("path" + std::to_string(n), path_graph(n));
    for (int n = 3; n <= 8; ++n) add("cycle" + std::to_string(n), cycle_graph(n));
    for (int n = 4; n <= 7; ++n) add("complete" + std::to_string(n), complete_graph(n));
    for (int l = 3; l <= 7; ++l) add("star" + std::to_string(l), star_graph(l));
    add("k23", complete_bipartite(2, 3));
    add("k33", complete_bipartite(3, 3));
    add("k24", complete_bipartite(2, 4));
    add("k34", complete_bipartite(3, 4));
    for (int r = 4; r <= 7; ++r) add("wheel" + std::to_string(r), wheel_graph(r));
    add("grid2x3", grid_graph(2, 3));
    add("grid2x4", grid_graph(2, 4));
    add("cube", make_graph(8, {{0, 1}, {1, 3}, {3, 2}, {2, 0}, {4, 5}, {5, 7}, {7, 6}, {6, 4},
                               {0, 4}, {1, 5}, {2, 6}, {3, 7}}));
    add("prism", make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}));
    add("house", make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {3, 4}}));
    add("diamond", make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}));
    add("two_triangles", make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}));
    add("octahedron", make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}, {5, 2}, {5, 3}, {5, 4},
                                     {1, 2}, {2, 3}, {3, 4}, {4, 1}}));
    const double densities[] = {0.25, 0.4, 0.55, 0.7};
    for (std::uint64_t seed = 1; c.size() < 200; ++seed) {
      const int n = 3 + static_cast<int>(seed % 6);
      const double p = densities[(seed / 6) % 4];
      add("random" + std::to_string(seed), random_graph(n, p, 1000 + seed));
    }
    return c;
  }();
  return corpus;
}

std::vector<std::vector<int>> bfs_components(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (comp[v] < 0) {
          comp[v] = comp[s];
          members.push_back(v);
          q.push(v);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  return out;
}

int cycle_rank(const Graph& g) {
  const auto comps = bfs_components(g.vertex_count(), g.edges());
  return g.edge_count() - (g.vertex_count() - static_cast<int>(comps.size()));
}

namespace {

// Treewidth of the graph given by adjacency bitmasks: the best order
// minimises the largest number of uneliminated vertices reachable through
// eliminated ones.
int treewidth_of_masks(const std::vector<std::uint32_t>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return -1;
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  // q(S, v): neighbours of v outside S reachable via paths inside S.
  auto q = [&](std::uint32_t S, int v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      const int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const std::uint32_t nb = adj[u] & ~seen;
      seen |= nb;
      out |= nb & ~S;
      frontier |= nb & S;
    }
    out &= ~(1u << v);
    return std::popcount(out);
  };
  std::vector<int> best(std::size_t{1} << n, 1 << 20);
  best[0] = -1;
  for (std::uint32_t S = 1; S <= full; ++S) {
    int b = 1 << 20;
    for (std::uint32_t rest = S; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const std::uint32_t prev = S & ~(1u << v);
      b = std::min(b, std::max(best[prev], q(prev, v)));
    }
    best[S] = b;
  }
  return best[full];
}

std::vector<std::uint32_t> masks_of(const Graph& g) {
  std::vector<std::uint32_t> adj(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return adj;
}

}  // namespace

int brute_treewidth(const Graph& g) { return treewidth_of_masks(masks_of(g)); }

std::vector<std::uint32_t> feasible_interdictions(const Graph& g, int w) {
  std::vector<std::uint32_t> out;
  const int m = g.edge_count();
  std::map<std::vector<std::uint32_t>, int> memo;
  for (std::uint32_t F = 0; F < (1u << m); ++F) {
    std::vector<std::uint32_t> adj(g.vertex_count(), 0);
    for (int e = 0; e < m; ++e)
      if (!(F >> e & 1)) {
        adj[g.edge(e).u] |= 1u << g.edge(e).v;
        adj[g.edge(e).v] |= 1u << g.edge(e).u;
      }
    auto it = memo.find(adj);
    if (it == memo.end()) it = memo.emplace(adj, treewidth_of_masks(adj)).first;
    if (it->second <= w - 1) out.push_back(F);
  }
  return out;
}

std::vector<double> indicator(const Graph& g, std::uint32_t mask) {
  std::vector<double> x(g.edge_count(), 0.0);
  for (int e = 0; e < g.edge_count(); ++e) x[e] = (mask >> e & 1) ? 1.0 : 0.0;
  return x;
}

int brute_mis(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  // Branch on the lowest remaining vertex: skip it, or take it and drop its
  // neighbours.  A vertex of degree at most one is always taken.
  auto rec = [&](auto&& self, std::uint64_t avail) -> int {
    if (!avail) return 0;
    for (std::uint64_t a = avail; a; a &= a - 1) {
      const int v = std::countr_zero(a);
      if (std::popcount(adj[v] & avail) <= 1) return 1 + self(self, avail & ~(std::uint64_t{1} << v) & ~adj[v]);
    }
    const int v = std::countr_zero(avail);
    const std::uint64_t rest = avail & ~(std::uint64_t{1} << v);
    return std::max(1 + self(self, rest & ~adj[v]), self(self, rest));
  };
  return rec(rec, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

int brute_maxsat(const CnfFormula& phi) {
  int best = 0;
  std::vector<bool> a(phi.num_vars);
  for (std::uint32_t bits = 0; bits < (1u << phi.num_vars); ++bits) {
    for (int v = 0; v < phi.num_vars; ++v) a[v] = bits >> v & 1;
    int count = 0;
    for (const auto& c : phi.clauses)
      for (const auto& lit : c)
        if (a[lit.var] == lit.positive) {
          ++count;
          break;
        }
    best = std::max(best, count);
  }
  return best;
}

bool is_balanced_separator(const Graph& g, std::uint32_t S, std::uint32_t X, double alpha) {
  std::vector<Edge> kept;
  for (const auto& e : g.edges())
    if (!(X >> e.u & 1) && !(X >> e.v & 1)) kept.push_back(e);
  for (const auto& comp : bfs_components(g.vertex_count(), kept)) {
    if (comp.size() == 1 && (X >> comp[0] & 1)) continue;
    int inside = 0;
    for (int v : comp) inside += S >> v & 1;
    if (inside > alpha * std::popcount(S) + 1e-12) return false;
  }
  return true;
}

}  // namespace twi::testing
