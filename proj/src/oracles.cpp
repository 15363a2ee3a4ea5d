#include "twi/oracles.hpp"

#include <algorithm>
#include <bit>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <cstdint>
#include <string>

namespace twi {
namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    adj[e.u] |= Mask{1} << e.v;
    adj[e.v] |= Mask{1} << e.u;
  }
  return adj;
}

// Vertices reachable from `start` inside `allowed` (start must be allowed).
Mask reach(const std::vector<Mask>& adj, Mask allowed, int start) {
  Mask seen = Mask{1} << start;
  Mask frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
    next &= allowed & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

void check_vertices(const Graph& g, int cap, const char* oracle) {
  if (g.vertex_count() > cap)
    throw BudgetExceeded(std::string(oracle) + ": " + std::to_string(g.vertex_count()) +
                         " vertices exceed the budget of " + std::to_string(cap));
}

// Next subset with the same popcount (Gosper's hack).
Mask next_same_size(Mask x) {
  const Mask c = x & (~x + 1);
  const Mask r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

}  // namespace

TreewidthResult exact_treewidth(const Graph& g, const OracleBudget& budget) {
  check_vertices(g, std::min(budget.max_vertices, 24), "exact_treewidth");
  const int n = g.vertex_count();
  TreewidthResult result;
  if (n == 0) {
    result.witness.add_node(-1, {});
    return result;
  }
  const auto adj = adjacency_masks(g);
  const std::size_t states = std::size_t{1} << n;
  // best[S] = min over orders eliminating S first of the largest
  // neighbourhood met while doing so; -1 encodes the empty maximum.
  std::vector<std::int8_t> best(states, 0);
  std::vector<std::int8_t> choice(states, -1);
  best[0] = -1;
  for (std::size_t s = 1; s < states; ++s) {
    int value = 127;
    for (Mask rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const Mask before = s & ~(Mask{1} << v);
      if (best[before] >= value) continue;
      Mask comp = reach(adj, before | (Mask{1} << v), v);
      Mask q = 0;
      for (Mask c = comp; c; c &= c - 1) q |= adj[std::countr_zero(c)];
      q &= ~(before | (Mask{1} << v));
      const int cost = std::max<int>(best[before], std::popcount(q));
      if (cost < value) {
        value = cost;
        choice[s] = static_cast<std::int8_t>(v);
      }
    }
    best[s] = static_cast<std::int8_t>(value);
  }
  Mask s = states - 1;
  std::vector<Vertex> reversed;
  while (s) {
    const int v = choice[s];
    reversed.push_back(v);
    s &= ~(Mask{1} << v);
  }
  result.width = best[states - 1];
  result.elimination_order.assign(reversed.rbegin(), reversed.rend());
  result.witness = decomposition_from_elimination_order(g, result.elimination_order);
  return result;
}

std::vector<Vertex> exact_mis(const Graph& g, const OracleBudget& budget) {
  check_vertices(g, std::min(budget.max_vertices, 64), "exact_mis");
  const int n = g.vertex_count();
  const auto adj = adjacency_masks(g);
  Mask best_set = 0;
  int best_size = -1;

  auto solve = [&](auto&& self, Mask avail, Mask chosen) -> void {
    const int size = std::popcount(chosen);
    if (size + std::popcount(avail) <= best_size) return;
    if (!avail) {
      best_size = size;
      best_set = chosen;
      return;
    }
    // A vertex of degree <= 1 in the remaining graph is always safe to take.
    int pivot = -1, pivot_deg = -1;
    for (Mask a = avail; a; a &= a - 1) {
      const int v = std::countr_zero(a);
      const int d = std::popcount(adj[v] & avail);
      if (d <= 1) {
        self(self, avail & ~adj[v] & ~(Mask{1} << v), chosen | (Mask{1} << v));
        return;
      }
      if (d > pivot_deg) {
        pivot = v;
        pivot_deg = d;
      }
    }
    const Mask bit = Mask{1} << pivot;
    self(self, avail & ~adj[pivot] & ~bit, chosen | bit);
    self(self, avail & ~bit, chosen);
  };
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  solve(solve, all, 0);
  std::vector<Vertex> out;
  for (Mask s = best_set; s; s &= s - 1) out.push_back(std::countr_zero(s));
  return out;
}

MaxSatResult exact_maxsat(const CnfFormula& phi, const OracleBudget& budget) {
  if (phi.num_vars > std::min(budget.max_variables, 30))
    throw BudgetExceeded("exact_maxsat: " + std::to_string(phi.num_vars) +
                         " variables exceed the budget");
  struct Masks {
    Mask pos = 0, neg = 0;
  };
  std::vector<Masks> clauses;
  for (const auto& c : phi.clauses) {
    Masks m;
    for (const auto& lit : c) (lit.positive ? m.pos : m.neg) |= Mask{1} << lit.var;
    clauses.push_back(m);
  }
  const Mask total = Mask{1} << phi.num_vars;
  int best = -1;
  Mask best_a = 0;
  for (Mask a = 0; a < total; ++a) {
    int count = 0;
    for (const auto& c : clauses) count += ((a & c.pos) | (~a & c.neg)) ? 1 : 0;
    if (count > best) {
      best = count;
      best_a = a;
    }
  }
  MaxSatResult r;
  r.satisfied = best;
  r.assignment.resize(phi.num_vars);
  for (int v = 0; v < phi.num_vars; ++v) r.assignment[v] = (best_a >> v) & 1;
  return r;
}

namespace {

bool is_separator(const std::vector<Mask>& adj, int n, Mask X, Mask S, double limit) {
  const Mask all = (Mask{1} << n) - 1;
  Mask left = all & ~X;
  while (left) {
    const Mask comp = reach(adj, left, std::countr_zero(left));
    if (std::popcount(comp & S) > limit + 1e-9) return false;
    left &= ~comp;
  }
  return true;
}

}  // namespace

std::vector<Vertex> exact_balanced_separator(const Graph& g, const std::vector<Vertex>& S,
                                             double alpha, const OracleBudget& budget) {
  check_vertices(g, std::min(budget.max_vertices, 30), "exact_balanced_separator");
  const int n = g.vertex_count();
  const auto adj = adjacency_masks(g);
  Mask smask = 0;
  for (Vertex v : S) {
    if (v < 0 || v >= n) throw std::invalid_argument("separator set outside the graph");
    smask |= Mask{1} << v;
  }
  const double limit = alpha * std::popcount(smask);
  std::uint64_t tried = 0;
  for (int k = 0; k <= n; ++k) {
    if (k == 0) {
      if (is_separator(adj, n, 0, smask, limit)) return {};
      continue;
    }
    for (Mask x = (Mask{1} << k) - 1; x < (Mask{1} << n); x = next_same_size(x)) {
      if (++tried > budget.max_subsets) throw BudgetExceeded("exact_balanced_separator: subset budget");
      if (is_separator(adj, n, x, smask, limit)) {
        std::vector<Vertex> out;
        for (Mask s = x; s; s &= s - 1) out.push_back(std::countr_zero(s));
        return out;
      }
    }
  }
  throw std::logic_error("V itself always separates");
}

LinkednessResult linkedness(const Graph& g, const OracleBudget& budget) {
  check_vertices(g, std::min(budget.max_vertices, 12), "linkedness");
  const int n = g.vertex_count();
  const auto adj = adjacency_masks(g);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<Mask>> comps(subsets);
  for (Mask x = 0; x < subsets; ++x) {
    Mask left = (subsets - 1) & ~x;
    while (left) {
      const Mask comp = reach(adj, left, std::countr_zero(left));
      comps[x].push_back(comp);
      left &= ~comp;
    }
  }
  // Candidate separators in order of size so the first hit is minimum.
  std::vector<Mask> by_size(subsets);
  for (Mask x = 0; x < subsets; ++x) by_size[x] = x;
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  LinkednessResult r;
  for (Mask s = 1; s < subsets; ++s) {
    const double limit = std::popcount(s) / 2.0;
    for (Mask x : by_size) {
      bool ok = true;
      for (Mask c : comps[x])
        if (std::popcount(c & s) > limit) {
          ok = false;
          break;
        }
      if (!ok) continue;
      if (std::popcount(x) > r.link) {
        r.link = std::popcount(x);
        r.witness.clear();
        for (Mask t = s; t; t &= t - 1) r.witness.push_back(std::countr_zero(t));
      }
      break;
    }
  }
  return r;
}

InterdictionOracleResult exact_interdiction(const Graph& g, int w, const OracleBudget& budget) {
  if (w < 1) throw std::invalid_argument("exact_interdiction needs w >= 1");
  check_vertices(g, budget.max_vertices, "exact_interdiction");
  const int m = g.edge_count();
  if (m > std::min(budget.max_edges, 30))
    throw BudgetExceeded("exact_interdiction: " + std::to_string(m) + " edges exceed the budget");
  std::uint64_t tried = 0;
  for (int k = 0; k <= m; ++k) {
    Mask f = k == 0 ? 0 : (Mask{1} << k) - 1;
    while (f < (Mask{1} << m)) {
      if (++tried > budget.max_subsets) throw BudgetExceeded("exact_interdiction: subset budget");
      std::vector<EdgeId> F;
      for (Mask s = f; s; s &= s - 1) F.push_back(std::countr_zero(s));
      const Graph rest = remove_edges(g, F);
      auto tw = exact_treewidth(rest, budget);
      if (tw.width <= w - 1) return {F, std::move(tw.witness)};
      if (k == 0) break;
      f = next_same_size(f);
    }
  }
  throw std::logic_error("deleting every edge always suffices");
}

bool is_planar(const Graph& g) {
  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                            boost::property<boost::vertex_index_t, int>>;
  BoostGraph bg(g.vertex_count());
  for (const auto& e : g.edges()) boost::add_edge(e.u, e.v, bg);
  return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace twi
