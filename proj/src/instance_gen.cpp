#include "twi/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "twi/random.hpp"

namespace twi {
namespace {

std::vector<Point> random_points(int n, Rng& rng) {
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = rng.uniform();
    p.y = rng.uniform();
  }
  return pts;
}

std::vector<Edge> triangle_edges(const std::vector<std::array<int, 3>>& tris) {
  std::set<Edge> edges;
  for (const auto& t : tris)
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  return {edges.begin(), edges.end()};
}

// Disjoint-set forest for the random spanning tree.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::size_t noise_count(double delta, int size) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
  return static_cast<std::size_t>(std::floor(delta * size + 1e-9));
}

}  // namespace

NoiseMode parse_noise_mode(const std::string& name) {
  if (name == "uniform") return NoiseMode::uniform;
  if (name == "expander") return NoiseMode::expander;
  if (name == "clustered") return NoiseMode::clustered;
  throw std::invalid_argument("unknown noise mode '" + name + "'");
}

std::string to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::uniform: return "uniform";
    case NoiseMode::expander: return "expander";
    case NoiseMode::clustered: return "clustered";
  }
  return "uniform";
}

std::vector<std::array<int, 3>> delaunay_triangles(const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) return {};
  std::vector<Point> pts = points;
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const auto& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double span = std::max({maxx - minx, maxy - miny, 1e-9});
  const double cx = (minx + maxx) / 2, cy = (miny + maxy) / 2;
  pts.push_back({cx - 40 * span, cy - 40 * span});
  pts.push_back({cx + 40 * span, cy - 40 * span});
  pts.push_back({cx, cy + 40 * span});

  struct Tri {
    std::array<int, 3> v;
    double ccx, ccy, r2;
  };
  auto make = [&](int a, int b, int c) {
    const auto &A = pts[a], &B = pts[b], &C = pts[c];
    const double d = 2 * (A.x * (B.y - C.y) + B.x * (C.y - A.y) + C.x * (A.y - B.y));
    const double a2 = A.x * A.x + A.y * A.y, b2 = B.x * B.x + B.y * B.y, c2 = C.x * C.x + C.y * C.y;
    const double ux = (a2 * (B.y - C.y) + b2 * (C.y - A.y) + c2 * (A.y - B.y)) / d;
    const double uy = (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d;
    return Tri{{a, b, c}, ux, uy, (A.x - ux) * (A.x - ux) + (A.y - uy) * (A.y - uy)};
  };

  std::vector<Tri> tris{make(n, n + 1, n + 2)};
  for (int p = 0; p < n; ++p) {
    const auto& P = pts[p];
    std::vector<Tri> keep;
    std::map<std::pair<int, int>, int> boundary;
    for (const auto& t : tris) {
      const double dx = P.x - t.ccx, dy = P.y - t.ccy;
      if (dx * dx + dy * dy < t.r2) {
        for (int i = 0; i < 3; ++i) {
          int a = t.v[i], b = t.v[(i + 1) % 3];
          ++boundary[{std::min(a, b), std::max(a, b)}];
        }
      } else {
        keep.push_back(t);
      }
    }
    for (const auto& [e, count] : boundary)
      if (count == 1) keep.push_back(make(e.first, e.second, p));
    tris = std::move(keep);
  }
  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris) {
    if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
    auto v = t.v;
    std::sort(v.begin(), v.end());
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph gen_grid(int k) {
  if (k < 1) throw std::invalid_argument("grid side must be at least 1");
  std::vector<Edge> edges;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      const int v = r * k + c;
      if (c + 1 < k) edges.push_back({v, v + 1});
      if (r + 1 < k) edges.push_back({v, v + k});
    }
  return Graph(k * k, std::move(edges));
}

Graph gen_random_planar(int n, std::uint64_t seed, double keep_probability) {
  if (n < 3) throw std::invalid_argument("random planar generator needs n >= 3");
  Rng rng(seed);
  const auto pts = random_points(n, rng);
  auto edges = triangle_edges(delaunay_triangles(pts));
  rng.shuffle(edges);
  UnionFind uf(n);
  std::vector<Edge> kept;
  std::vector<Edge> rest;
  for (const auto& e : edges) (uf.unite(e.u, e.v) ? kept : rest).push_back(e);
  for (const auto& e : rest)
    if (rng.bernoulli(keep_probability)) kept.push_back(e);
  return Graph(n, std::move(kept));
}

NoisyGraph add_noise_edges(const Graph& g, const NoiseSpec& spec) {
  const int n = g.vertex_count();
  const std::size_t count = noise_count(spec.delta, n);
  const long long non_edges = static_cast<long long>(n) * (n - 1) / 2 - g.edge_count();
  if (static_cast<long long>(count) > non_edges)
    throw std::invalid_argument("requested " + std::to_string(count) + " noisy edges but only " +
                                std::to_string(non_edges) + " non-edges exist");
  if (count == 0) return {g, {}};

  Rng rng(spec.seed);
  std::set<Edge> added;
  auto try_add = [&](Vertex a, Vertex b) {
    if (a == b || added.size() >= count) return;
    Edge e{std::min(a, b), std::max(a, b)};
    if (!g.has_edge(e.u, e.v)) added.insert(e);
  };
  // Random non-edges among `pool` until `count` are chosen or the pool is exhausted.
  auto fill_from = [&](const std::vector<Vertex>& pool) {
    std::vector<Edge> candidates;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        Edge e{std::min(pool[i], pool[j]), std::max(pool[i], pool[j])};
        if (!g.has_edge(e.u, e.v) && !added.count(e)) candidates.push_back(e);
      }
    rng.shuffle(candidates);
    for (const auto& e : candidates) try_add(e.u, e.v);
  };

  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);

  switch (spec.mode) {
    case NoiseMode::uniform:
      fill_from(all);
      break;
    case NoiseMode::expander: {
      // A cycle through a random patch plus random chords: 2/3 of the patch
      // size in cycle edges and the rest in chords gives average degree ~3.
      std::vector<Vertex> order = all;
      rng.shuffle(order);
      const std::size_t p =
          std::min<std::size_t>(n, std::max<std::size_t>(3, (2 * count + 2) / 3));
      std::vector<Vertex> patch(order.begin(), order.begin() + p);
      for (std::size_t i = 0; i < p; ++i) try_add(patch[i], patch[(i + 1) % p]);
      std::vector<Vertex> half = patch;
      rng.shuffle(half);
      for (std::size_t i = 0; i + 1 < half.size(); i += 2) try_add(half[i], half[i + 1]);
      fill_from(patch);
      fill_from(all);
      break;
    }
    case NoiseMode::clustered: {
      // Grow a BFS ball from a random vertex until it holds enough non-edges.
      const Vertex root = static_cast<Vertex>(rng.below(n));
      std::vector<char> seen(n, 0);
      std::vector<Vertex> ball{root};
      seen[root] = 1;
      auto inner_non_edges = [&] {
        long long k = static_cast<long long>(ball.size());
        long long inside = 0;
        for (Vertex v : ball)
          for (Vertex u : g.neighbors(v)) inside += seen[u] ? 1 : 0;
        return k * (k - 1) / 2 - inside / 2;
      };
      std::size_t head = 0;
      while (inner_non_edges() < static_cast<long long>(count)) {
        if (head < ball.size()) {
          for (Vertex u : g.neighbors(ball[head]))
            if (!seen[u]) {
              seen[u] = 1;
              ball.push_back(u);
            }
          ++head;
        } else {
          // Disconnected remainder: jump to the lowest unseen vertex.
          Vertex next = static_cast<Vertex>(std::find(seen.begin(), seen.end(), 0) - seen.begin());
          seen[next] = 1;
          ball.push_back(next);
        }
      }
      fill_from(ball);
      break;
    }
  }
  if (added.size() != count) throw std::logic_error("noise generator fell short");
  std::vector<Edge> edges = g.edges();
  edges.insert(edges.end(), added.begin(), added.end());
  return {Graph(n, std::move(edges), g.roles()), {added.begin(), added.end()}};
}

CnfFormula gen_planar_cnf(int n, int m, int k, std::uint64_t seed) {
  if (k < 1 || k > 3) throw std::invalid_argument("planar CNF generator supports k in {1,2,3}");
  if (n < k || m < 0) throw std::invalid_argument("infeasible CNF parameters");
  Rng rng(seed);
  std::vector<std::vector<int>> supports;
  if (k == 1) {
    for (int i = 0; i < m; ++i) supports.push_back({static_cast<int>(rng.below(n))});
  } else {
    if (n < 3) {
      if (k == 2 && m <= 1) supports.push_back({0, 1});
    } else {
      const auto tris = delaunay_triangles(random_points(n, rng));
      if (k == 3)
        for (const auto& t : tris) supports.push_back({t[0], t[1], t[2]});
      else
        for (const auto& e : triangle_edges(tris)) supports.push_back({e.u, e.v});
    }
    if (static_cast<int>(supports.size()) < m)
      throw std::invalid_argument("infeasible CNF parameters: only " +
                                  std::to_string(supports.size()) + " planar clause slots for m=" +
                                  std::to_string(m));
    rng.shuffle(supports);
    supports.resize(m);
  }
  CnfFormula phi;
  phi.num_vars = n;
  for (const auto& sup : supports) {
    Clause c;
    for (int v : sup) c.push_back({v, rng.bernoulli(0.5)});
    phi.clauses.push_back(std::move(c));
  }
  return normalized(std::move(phi));
}

NoisyFormula add_noise_clauses(const CnfFormula& phi, const NoiseSpec& spec) {
  const std::size_t count = noise_count(spec.delta, phi.clause_count());
  const int k = phi.max_arity();
  if (count > 0 && (k < 1 || k > phi.num_vars))
    throw std::invalid_argument("cannot build noisy clauses of arity " + std::to_string(k));
  Rng rng(spec.seed);
  std::vector<int> pool(phi.num_vars);
  std::iota(pool.begin(), pool.end(), 0);
  if (spec.mode != NoiseMode::uniform) {
    // Concentrate the noise on a small random set of variables.
    rng.shuffle(pool);
    pool.resize(std::min<std::size_t>(pool.size(), std::max(2 * k, k + 1)));
  }
  std::vector<Clause> noisy;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<int> vars = pool;
    rng.shuffle(vars);
    Clause c;
    for (int j = 0; j < k; ++j) c.push_back({vars[j], rng.bernoulli(0.5)});
    noisy.push_back(std::move(c));
  }
  // Interleave the noisy clauses at random positions so their indices carry
  // no signal.
  NoisyFormula out;
  out.formula.num_vars = phi.num_vars;
  const std::size_t total = phi.clauses.size() + noisy.size();
  std::vector<char> is_noisy(total, 0);
  for (std::size_t i = 0; i < noisy.size(); ++i) is_noisy[i] = 1;
  std::vector<char> order = is_noisy;
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::size_t next_base = 0, next_noisy = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (order[i]) {
      out.noisy_clauses.push_back(static_cast<int>(i));
      out.formula.clauses.push_back(noisy[next_noisy++]);
    } else {
      out.formula.clauses.push_back(phi.clauses[next_base++]);
    }
  }
  out.formula = normalized(std::move(out.formula));
  return out;
}

}  // namespace twi
