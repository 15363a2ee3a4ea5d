#include "twi/bsi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <tuple>

#include "twi/random.hpp"

namespace twi {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t r) {
  // splitmix64 over the three inputs
  std::uint64_t z = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (r * 0xD1B54A32D192ED03ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void sort_pieces(std::vector<std::vector<Vertex>>& pieces) {
  for (auto& p : pieces) std::sort(p.begin(), p.end());
  std::sort(pieces.begin(), pieces.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
}

}  // namespace

std::vector<std::vector<Vertex>> enumerate_pieces(const Graph& g, int s, bool connected_only,
                                                  std::size_t budget) {
  if (s < 1) throw std::invalid_argument("piece size bound must be >= 1");
  const int n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  auto emit = [&](const std::vector<Vertex>& p) {
    if (out.size() >= budget)
      throw BsiError("piece family exceeds the enumeration budget of " + std::to_string(budget));
    out.push_back(p);
  };

  if (!connected_only) {
    std::vector<Vertex> cur;
    std::function<void(int)> rec = [&](int from) {
      if (!cur.empty()) emit(cur);
      if (static_cast<int>(cur.size()) == s) return;
      for (int v = from; v < n; ++v) {
        cur.push_back(v);
        rec(v + 1);
        cur.pop_back();
      }
    };
    rec(0);
    sort_pieces(out);
    return out;
  }

  // Connected sets with smallest vertex `root`, each generated once by
  // extending only through exclusive neighbours.
  std::vector<char> in_sub(n, 0), near_sub(n, 0);
  std::vector<Vertex> sub;
  std::function<void(std::vector<Vertex>, Vertex)> extend = [&](std::vector<Vertex> ext,
                                                                Vertex root) {
    emit(sub);
    if (static_cast<int>(sub.size()) == s) return;
    while (!ext.empty()) {
      const Vertex w = ext.back();
      ext.pop_back();
      std::vector<Vertex> next = ext;
      std::vector<Vertex> marked;
      for (Vertex u : g.neighbors(w))
        if (u > root && !in_sub[u] && !near_sub[u]) {
          if (std::find(next.begin(), next.end(), u) == next.end()) next.push_back(u);
        }
      sub.push_back(w);
      in_sub[w] = 1;
      for (Vertex u : g.neighbors(w))
        if (!near_sub[u]) {
          near_sub[u] = 1;
          marked.push_back(u);
        }
      extend(std::move(next), root);
      for (Vertex u : marked) near_sub[u] = 0;
      in_sub[w] = 0;
      sub.pop_back();
    }
  };
  for (Vertex root = 0; root < n; ++root) {
    sub = {root};
    in_sub[root] = 1;
    std::vector<Vertex> marked;
    for (Vertex u : g.neighbors(root))
      if (!near_sub[u]) {
        near_sub[u] = 1;
        marked.push_back(u);
      }
    near_sub[root] = 1;
    marked.push_back(root);
    std::vector<Vertex> ext;
    for (Vertex u : g.neighbors(root))
      if (u > root) ext.push_back(u);
    extend(std::move(ext), root);
    for (Vertex u : marked) near_sub[u] = 0;
    in_sub[root] = 0;
  }
  sort_pieces(out);
  return out;
}

ConfigLp build_config_lp(const Graph& g, int s, double a, bool connected_only,
                         std::size_t budget) {
  if (a < 0) throw std::invalid_argument("budget a must be >= 0");
  ConfigLp c;
  c.pieces = enumerate_pieces(g, s, connected_only, budget);
  const int n = g.vertex_count();
  c.layout = {g.edge_count(), n, static_cast<int>(c.pieces.size())};
  auto& lp = c.lp;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    lp.add_variable(0.0, 1.0, 1.0, "x" + std::to_string(e));
  for (Vertex v = 0; v < n; ++v) lp.add_variable(0.0, 1.0, 0.0, "y" + std::to_string(v));
  for (int p = 0; p < c.layout.pieces; ++p) lp.add_variable(0.0, 1.0, 0.0, "z" + std::to_string(p));

  SparseRow budget_row;
  for (Vertex v = 0; v < n; ++v) budget_row.emplace_back(c.layout.y(v), 1.0);
  if (n > 0) lp.add_constraint(std::move(budget_row), Relation::less_equal, a, "budget");

  std::vector<std::vector<int>> containing(n);
  for (int p = 0; p < c.layout.pieces; ++p)
    for (Vertex v : c.pieces[p]) containing[v].push_back(p);
  for (Vertex v = 0; v < n; ++v) {
    SparseRow row{{c.layout.y(v), 1.0}};
    for (int p : containing[v]) row.emplace_back(c.layout.z(p), 1.0);
    lp.add_constraint(std::move(row), Relation::equal, 1.0, "cover" + std::to_string(v));
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (int side = 0; side < 2; ++side) {
      const Vertex u = side == 0 ? ed.u : ed.v;
      const Vertex v = side == 0 ? ed.v : ed.u;
      SparseRow row{{c.layout.x(e), -1.0}, {c.layout.y(v), -1.0}};
      for (int p : containing[u])
        if (!std::binary_search(c.pieces[p].begin(), c.pieces[p].end(), v))
          row.emplace_back(c.layout.z(p), 1.0);
      lp.add_constraint(std::move(row), Relation::less_equal, 0.0,
                        "cut" + std::to_string(u) + "_" + std::to_string(v));
    }
  }
  return c;
}

double ConfigLpSolution::max_violation(const Graph& g) const {
  const int n = g.vertex_count();
  double worst = 0;
  double ysum = 0;
  for (double v : y) ysum += v;
  worst = std::max(worst, ysum - a);
  std::vector<double> cover(n, 0.0);
  for (std::size_t p = 0; p < pieces.size(); ++p)
    for (Vertex v : pieces[p]) cover[v] += z[p];
  for (Vertex v = 0; v < n; ++v) worst = std::max(worst, std::abs(cover[v] + y[v] - 1.0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    for (int side = 0; side < 2; ++side) {
      const Vertex u = side == 0 ? ed.u : ed.v;
      const Vertex v = side == 0 ? ed.v : ed.u;
      double lhs = 0;
      for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto& P = pieces[p];
        if (std::binary_search(P.begin(), P.end(), u) && !std::binary_search(P.begin(), P.end(), v))
          lhs += z[p];
      }
      worst = std::max(worst, lhs - x[e] - y[v]);
    }
  }
  return worst;
}

ConfigLpSolution solve_config_lp(const Graph& g, int s, double a, bool connected_only,
                                 const SimplexOptions& options) {
  ConfigLp c = build_config_lp(g, s, a, connected_only);
  LpSolution sol = solve(c.lp, options);
  if (!sol.optimal())
    throw BsiError("configuration LP ended with status " + to_string(sol.status));
  ConfigLpSolution out;
  out.s = s;
  out.a = a;
  out.objective = sol.objective;
  out.iterations = sol.iterations;
  const auto& L = c.layout;
  for (EdgeId e = 0; e < L.edges; ++e) out.x.push_back(sol.primal[L.x(e)]);
  for (Vertex v = 0; v < L.vertices; ++v) out.y.push_back(sol.primal[L.y(v)]);
  for (int p = 0; p < L.pieces; ++p) out.z.push_back(sol.primal[L.z(p)]);
  out.pieces = std::move(c.pieces);
  return out;
}

int phase_cap(int n) {
  return static_cast<int>(std::ceil(100.0 * std::log2(std::max(n, 2))));
}

namespace {

std::vector<EdgeId> edges_between_pieces(const Graph& g, const std::vector<std::vector<Vertex>>& pieces) {
  std::vector<int> owner(g.vertex_count(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (Vertex v : pieces[i]) owner[v] = static_cast<int>(i);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int a = owner[g.edge(e).u], b = owner[g.edge(e).v];
    if (a >= 0 && b >= 0 && a != b) out.push_back(e);
  }
  return out;
}

}  // namespace

BsiResult round_bsi(const Graph& g, const ConfigLpSolution& sol, double beta, std::uint64_t seed) {
  if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("beta must lie in (0, 1]");
  const int n = g.vertex_count();
  BsiResult r;
  r.seed = seed;
  r.a = sol.a;
  r.beta = beta;
  r.covered_in_phase.assign(n, -1);

  if (beta > 0.5) {
    r.fallback = true;
    for (Vertex v = 0; v < n; v += sol.s) {
      std::vector<Vertex> piece;
      for (Vertex u = v; u < std::min(n, v + sol.s); ++u) {
        piece.push_back(u);
        r.covered_in_phase[u] = 1;
      }
      r.pieces.push_back(std::move(piece));
    }
    r.phase_count = n > 0 ? 1 : 0;
    r.cross_edges = edges_between_pieces(g, r.pieces);
    r.cut_edges_by_sampling = r.cross_edges;
    return r;
  }

  std::vector<char> uncovered(n, 1);
  int remaining = n;
  for (Vertex v = 0; v < n; ++v)
    if (sol.y[v] >= beta) {
      r.X.push_back(v);
      r.covered_in_phase[v] = 0;
      uncovered[v] = 0;
      --remaining;
    }
  r.preprocessed = static_cast<int>(r.X.size());

  std::vector<int> support;
  for (std::size_t p = 0; p < sol.z.size(); ++p)
    if (sol.z[p] > 0) support.push_back(static_cast<int>(p));
  Rng rng(seed);
  const int cap = phase_cap(n);
  while (remaining > 0 && r.phase_count < cap) {
    ++r.phase_count;
    for (int p : support) {
      if (!rng.bernoulli(std::min(1.0, sol.z[p]))) continue;
      std::vector<Vertex> piece;
      for (Vertex v : sol.pieces[p])
        if (uncovered[v]) {
          piece.push_back(v);
          uncovered[v] = 0;
          r.covered_in_phase[v] = r.phase_count;
          --remaining;
        }
      if (!piece.empty()) r.pieces.push_back(std::move(piece));
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (uncovered[v]) {
      r.X.push_back(v);
      ++r.leftover;
    }
  std::sort(r.X.begin(), r.X.end());
  r.cross_edges = edges_between_pieces(g, r.pieces);
  r.cut_edges_by_sampling = r.cross_edges;
  return r;
}

ProperSeparator properize(const Graph& g, const BsiResult& result) {
  ProperSeparator out;
  // Greedy cover of the cross edges: repeatedly move the endpoint that
  // still touches the most uncovered cross edges (ties: smaller id).
  std::vector<int> load(g.vertex_count(), 0);
  for (EdgeId e : result.cross_edges) {
    ++load[g.edge(e).u];
    ++load[g.edge(e).v];
  }
  std::vector<char> moved(g.vertex_count(), 0);
  std::vector<char> covered(g.edge_count(), 0);
  for (;;) {
    Vertex pick = -1;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (load[v] > 0 && (pick < 0 || load[v] > load[pick])) pick = v;
    if (pick < 0) break;
    moved[pick] = 1;
    out.moved.push_back(pick);
    for (EdgeId e : result.cross_edges) {
      const Edge& ed = g.edge(e);
      if (covered[e] || (ed.u != pick && ed.v != pick)) continue;
      covered[e] = 1;
      --load[ed.u];
      --load[ed.v];
    }
  }
  out.X = result.X;
  out.X.insert(out.X.end(), out.moved.begin(), out.moved.end());
  std::sort(out.X.begin(), out.X.end());
  for (const auto& piece : result.pieces) {
    std::vector<Vertex> kept;
    for (Vertex v : piece)
      if (!moved[v]) kept.push_back(v);
    if (!kept.empty()) out.pieces.push_back(std::move(kept));
  }
  return out;
}

std::vector<int> a_grid(int n, const BsiOptions& options) {
  if (options.fixed_a >= 0) return {options.fixed_a};
  std::vector<int> grid{0};
  for (int a = 1; a < n; a *= 2) grid.push_back(a);
  if (n > 0) grid.push_back(n);
  return grid;
}

void check_bsi_result(const Graph& g, const BsiResult& r, int s) {
  const int n = g.vertex_count();
  std::vector<int> owner(n, -1);
  for (Vertex v : r.X) {
    if (owner[v] != -1) throw BsiError("vertex " + std::to_string(v) + " listed twice");
    owner[v] = -2;
  }
  for (std::size_t i = 0; i < r.pieces.size(); ++i) {
    if (static_cast<int>(r.pieces[i].size()) > s)
      throw BsiError("piece of size " + std::to_string(r.pieces[i].size()) + " exceeds s");
    for (Vertex v : r.pieces[i]) {
      if (owner[v] != -1) throw BsiError("vertex " + std::to_string(v) + " covered twice");
      owner[v] = static_cast<int>(i);
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (owner[v] == -1) throw BsiError("vertex " + std::to_string(v) + " left uncovered");
  if (edges_between_pieces(g, r.pieces) != r.cross_edges)
    throw BsiError("cross edges do not match the pieces");
}

BsiSolveResult bsi_solve(const Graph& g, int s, double beta, const BsiOptions& options) {
  if (options.repeats < 1) throw std::invalid_argument("need at least one repetition");
  BsiSolveResult out;
  out.grid = a_grid(g.vertex_count(), options);
  bool have = false;
  std::tuple<double, int, double, int> best_key;
  for (int a : out.grid) {
    ConfigLpSolution lp = solve_config_lp(g, s, a, options.connected_only, options.simplex);
    bool improved = false;
    for (int rep = 0; rep < options.repeats; ++rep) {
      const std::uint64_t seed = mix_seed(options.seed, static_cast<std::uint64_t>(a), rep);
      BsiResult r = round_bsi(g, lp, beta, seed);
      check_bsi_result(g, r, s);
      if (!r.fallback && r.preprocessed > a / beta + 1e-9)
        throw BsiError("preprocessing put more than a/beta vertices into X'");
      ProperSeparator p = properize(g, r);
      BsiRun run{static_cast<double>(a), lp.objective, rep, seed,
                 static_cast<int>(p.X.size()), static_cast<int>(r.cross_edges.size()),
                 static_cast<int>(r.X.size())};
      run.score = options.score ? options.score(r, p) : run.separator_size;
      out.runs.push_back(run);
      const auto key = std::make_tuple(run.score, run.cross_edges, run.a, rep);
      if (!have || key < best_key) {
        have = true;
        best_key = key;
        out.best = std::move(r);
        out.proper = std::move(p);
        improved = true;
      }
    }
    if (improved) out.lp = std::move(lp);
  }
  return out;
}

}  // namespace twi
