#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <variant>

#include "doctest.h"
#include "support.hpp"
#include "twi/random.hpp"
#include "twi/region_growing.hpp"
#include "twi/sep_lp.hpp"

using namespace twi;
using namespace twi::testing;

namespace {

// v1..v4 as 0..3 with edge lengths and weights chosen to match the worked
// example: d(v1)=0.1, d(v2)=0.7, d(v3)=0.9 with y(v3)=0.5, d(v4)=1.1.
struct WorkedExample {
  Graph g = make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}});
  EdgeLengths x;
  VertexWeights y{0.1, 0.5, 0.5, 0.1};
  WorkedExample() {
    x.assign(4, 0.0);
    x[*g.edge_id(0, 1)] = 0.1;
    x[*g.edge_id(0, 2)] = 0.3;
    x[*g.edge_id(0, 3)] = 0.9;
    x[*g.edge_id(1, 3)] = 0.3;
  }
};

std::vector<std::vector<double>> all_pairs(const Graph& g, const EdgeLengths& x, const VertexWeights& y) {
  const int n = g.vertex_count();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInfinity));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    d[u][v] = d[v][u] = std::min(d[u][v], x[e] + (y[u] + y[v]) / 2);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] += (y[i] + y[j]) / 2;
  return d;
}

struct DirectBall {
  std::set<Vertex> ball, cut;
  std::set<EdgeId> cut_edges;
  double lp_cost = 0, wt = 0;
};

// Evaluates the ball definitions straight from all-pairs distances.
DirectBall direct_ball(const Graph& g, const EdgeLengths& x, const VertexWeights& y, Vertex s, double r) {
  const auto d = all_pairs(g, x, y)[s];
  DirectBall b;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (d[v] <= r) {
      b.ball.insert(v);
      b.wt += y[v];
    } else if (d[v] - y[v] < r) {
      b.cut.insert(v);
      b.wt += r - (d[v] - y[v]);
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(e);
    if (!b.ball.count(u)) std::swap(u, v);
    if (!b.ball.count(u)) continue;
    if (b.ball.count(v) || b.cut.count(v)) {
      b.lp_cost += x[e];
    } else {
      b.cut_edges.insert(e);
      b.lp_cost += r - d[u];
    }
  }
  return b;
}

double sum(const EdgeLengths& x) {
  double s = 0;
  for (double v : x) s += v;
  return s;
}

}  // namespace

TEST_SUITE("region-growing") {
  TEST_CASE("worked example at radius 0.8") {
    const WorkedExample f;
    const Subgraph h(f.g);
    const BallProfile p(h, f.x, f.y, 0, sum(f.x), 4, 1.0);
    const BallState st = p.at(0.8);
    // B(v1, 0.8) as listed in the example is the ball together with its
    // cut vertex v3.
    std::vector<Vertex> removed = st.ball;
    removed.insert(removed.end(), st.cut_vertices.begin(), st.cut_vertices.end());
    std::sort(removed.begin(), removed.end());
    CHECK(removed == std::vector<Vertex>{0, 1, 2});
    CHECK(st.cut_vertices == std::vector<Vertex>{2});
    std::set<EdgeId> cut(st.cut_edges.begin(), st.cut_edges.end());
    CHECK(cut == std::set<EdgeId>{*f.g.edge_id(1, 3), *f.g.edge_id(0, 3)});

    std::map<EdgeId, double> edge_share(st.edge_contribution.begin(), st.edge_contribution.end());
    CHECK(std::abs(edge_share[*f.g.edge_id(0, 1)] - 0.1) <= 1e-9);
    CHECK(std::abs(edge_share[*f.g.edge_id(0, 2)] - 0.3) <= 1e-9);
    CHECK(std::abs(edge_share[*f.g.edge_id(0, 3)] - 0.7) <= 1e-9);
    CHECK(std::abs(edge_share[*f.g.edge_id(1, 3)] - 0.1) <= 1e-9);
    std::map<Vertex, double> vertex_share(st.vertex_contribution.begin(), st.vertex_contribution.end());
    CHECK(std::abs(vertex_share[0] - 0.1) <= 1e-9);
    CHECK(std::abs(vertex_share[1] - 0.5) <= 1e-9);
    CHECK(std::abs(vertex_share[2] - 0.4) <= 1e-9);
    CHECK(vertex_share.count(3) == 0);
    CHECK(std::abs(st.lp_cost - 1.2) <= 1e-9);
    CHECK(std::abs(st.wt - 1.0) <= 1e-9);
  }

  TEST_CASE("radius zero") {
    const WorkedExample f;
    const BallProfile p(Subgraph(f.g), f.x, f.y, 0, sum(f.x), 4, 1.0);
    // Both cut inequalities are strict, so at r = 0 a weighted centre is
    // neither inside nor cut; any positive radius cuts it.
    const BallState st = p.at(0.0);
    CHECK(st.ball.empty());
    CHECK(st.cut_vertices.empty());
    CHECK(st.wt == 0.0);
    const BallState tiny = p.at(1e-6);
    CHECK(tiny.cut_vertices == std::vector<Vertex>{0});
    CHECK(tiny.wt == doctest::Approx(1e-6));

    const VertexWeights no_weight(4, 0.0);
    const BallProfile q(Subgraph(f.g), f.x, no_weight, 0, sum(f.x), 4, 1.0);
    CHECK(q.at(0.0).ball == std::vector<Vertex>{0});
    CHECK(q.at(0.0).cut_vertices.empty());
  }

  TEST_CASE("breakpoint count is at most 2|V| + 2|E|") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = random_graph(10, 0.3, 40 + trial);
      EdgeLengths x(g.edge_count());
      VertexWeights y(g.vertex_count());
      for (auto& v : x) v = rng.uniform() * 0.1;
      for (auto& v : y) v = rng.uniform() * 0.05;
      const BallProfile p(Subgraph(g), x, y, 0, sum(x), 10, 2.0);
      CHECK(p.breakpoints().size() <= static_cast<std::size_t>(2 * g.vertex_count() + 2 * g.edge_count()));
      CHECK(std::is_sorted(p.breakpoints().begin(), p.breakpoints().end()));
    }
  }

  TEST_CASE("profile agrees with direct evaluation at 100 radii") {
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
      const Graph g = random_graph(8, 0.4, 60 + trial);
      EdgeLengths x(g.edge_count());
      VertexWeights y(g.vertex_count());
      for (auto& v : x) v = rng.uniform() * 0.3;
      for (auto& v : y) v = rng.uniform() * 0.2;
      const Vertex s = static_cast<Vertex>(rng.below(8));
      const int n = 8;
      const double w = 2.0, total = sum(x);
      const BallProfile p(Subgraph(g), x, y, s, total, n, w);
      for (int k = 0; k < 100; ++k) {
        const double r = rng.uniform() * 0.8;
        const BallState st = p.at(r);
        const DirectBall b = direct_ball(g, x, y, s, r);
        CHECK(std::set<Vertex>(st.ball.begin(), st.ball.end()) == b.ball);
        CHECK(std::set<Vertex>(st.cut_vertices.begin(), st.cut_vertices.end()) == b.cut);
        CHECK(std::set<int>(st.cut_edges.begin(), st.cut_edges.end()) == std::set<int>(b.cut_edges.begin(), b.cut_edges.end()));
        CHECK(st.lp_cost == doctest::Approx(b.lp_cost).epsilon(1e-9));
        CHECK(st.wt == doctest::Approx(b.wt).epsilon(1e-9));
        CHECK(st.vol_x == doctest::Approx(total / (n * n) + b.lp_cost).epsilon(1e-9));
        CHECK(st.vol_y == doctest::Approx(1.0 / w + b.wt).epsilon(1e-9));
        CHECK_FALSE(st.degenerate);
      }
    }
  }

  TEST_CASE("without weights the vertex inequality holds at every radius") {
    const Graph g = grid_graph(3, 3);
    const EdgeLengths x(g.edge_count(), 0.02);
    const VertexWeights y(9, 0.0);
    const BallProfile p(Subgraph(g), x, y, 4, sum(x), 9, 1.0);
    for (const auto& st : p.states()) {
      CHECK(st.cut_vertices.empty());
      CHECK(test_radius(p, st).vertices_ok);
    }
  }

  TEST_CASE("chosen radius is the smallest qualifying breakpoint") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 4 + trial % 5;
      const Graph g = trial % 2 ? complete_graph(n) : random_graph(n, 0.5, 70 + trial);
      EdgeLengths x(g.edge_count(), 0.0);
      if (trial % 4 >= 2)
        for (auto& v : x) v = rng.uniform() * 0.05;
      VertexWeights y(n, 0.0);
      for (auto& v : y) v = rng.uniform() * 0.1;
      const double w = 2.0;
      const BallProfile p(Subgraph(g), x, y, 0, sum(x), n, w);
      auto qualifies = [&](const BallState& st) {
        return st.removes(0) && !st.degenerate && test_radius(p, st).good();
      };
      const BallState chosen = find_good_radius(p);
      CHECK(qualifies(chosen));
      CHECK(chosen.radius <= p.constants().max_radius);
      for (double r : p.breakpoints())
        if (r < chosen.radius) CHECK_FALSE(qualifies(p.at(r)));
    }
  }

  TEST_CASE("worked example with a feasible weighting finds a radius") {
    const WorkedExample f;
    const BallProfile p(Subgraph(f.g), f.x, f.y, 0, sum(f.x), 4, 2.0);
    const BallState st = find_good_radius(p);
    CHECK(st.removes(0));
    CHECK(test_radius(p, st).good());
  }

  TEST_CASE("a single S vertex gives one region around it") {
    const Graph g = path_graph(4);
    const EdgeLengths x(3, 0.0);
    // A lone S vertex needs weight 1/2 for its own spreading row.
    VertexWeights y(4, 0.0);
    y[2] = 0.5;
    const auto r = partition(Subgraph(g), {2}, x, y, 1.0, 0.0, 4);
    REQUIRE(r.regions.size() == 1);
    CHECK(r.regions[0].center == 2);
  }

  TEST_CASE("path of six with the middle weighted") {
    const Graph g = path_graph(6);
    const EdgeLengths x(5, 0.0);
    VertexWeights y(6, 0.0);
    y[2] = 1.0;
    const std::vector<Vertex> S{0, 1, 2, 3, 4, 5};
    const auto fw = all_pairs(g, x, y);
    PairDistances d(6, std::vector<double>(6));
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) d[i][j] = i == j ? 0.0 : fw[i][j];
    REQUIRE_FALSE(separate_spreading(d, 1e-9).has_value());
    const auto r = partition(Subgraph(g), S, x, y, 1.0, 0.0, 6, d);
    std::vector<Edge> kept;
    std::set<Vertex> X(r.X.begin(), r.X.end());
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (!std::count(r.D.begin(), r.D.end(), e) && !X.count(g.edge(e).u) && !X.count(g.edge(e).v))
        kept.push_back(g.edge(e));
    for (const auto& comp : bfs_components(6, kept)) {
      if (comp.size() == 1 && X.count(comp[0])) continue;
      CHECK(comp.size() <= 4);
    }
    CHECK(X.count(2) == 1);
  }

  TEST_CASE("partition post-conditions on sep-LP solutions") {
    Rng rng(19);
    int runs = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const Graph g = random_graph(9, 0.35, 200 + trial);
      EdgeLengths x(g.edge_count());
      for (auto& v : x) v = rng.uniform() * 0.4;
      std::vector<Vertex> S;
      for (int v = 0; v < 9; ++v)
        if (rng.bernoulli(0.6)) S.push_back(v);
      if (S.size() < 3) continue;
      const double w = 1.0 + trial % 3;
      const Subgraph h(g);
      const auto out = solve_sep_lp(h, x, S, w);
      if (!std::holds_alternative<SeparatorSolution>(out)) continue;
      const auto& sol = std::get<SeparatorSolution>(out);
      const auto r = partition(h, S, x, sol.y, w, sum(x), 9, sol.d);
      ++runs;

      std::set<Vertex> X(r.X.begin(), r.X.end());
      std::set<EdgeId> D(r.D.begin(), r.D.end());
      std::vector<Edge> kept;
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!D.count(e) && !X.count(g.edge(e).u) && !X.count(g.edge(e).v)) kept.push_back(g.edge(e));
      for (const auto& comp : bfs_components(9, kept)) {
        if (comp.size() == 1 && X.count(comp[0])) continue;
        int inside = 0;
        for (Vertex v : comp) inside += std::count(S.begin(), S.end(), v);
        CHECK(3 * inside <= 2 * static_cast<int>(S.size()));
      }
      CHECK(r.X.size() <= 48 * std::log(w * w + 1) * (w + S.size() / w));
      double d_bound = 0;
      const double lnln = std::log(std::log(std::exp(1.0) * 10));
      for (const auto& reg : r.regions)
        d_bound += 48 * lnln * std::log(std::exp(1.0) * r.vol_x_h / reg.vol_x) * reg.vol_x;
      CHECK(r.D.size() <= d_bound + 1e-9);

      std::set<Vertex> in_balls;
      for (const auto& reg : r.regions) in_balls.insert(reg.ball.begin(), reg.ball.end());
      for (const auto& piece : r.pieces) {
        bool contained = std::none_of(piece.vertices().begin(), piece.vertices().end(),
                                      [&](Vertex v) { return in_balls.count(v) > 0; });
        for (const auto& reg : r.regions) {
          std::set<Vertex> removed(reg.ball.begin(), reg.ball.end());
          removed.insert(reg.cut_vertices.begin(), reg.cut_vertices.end());
          contained = contained || std::all_of(piece.vertices().begin(), piece.vertices().end(),
                                               [&](Vertex v) { return removed.count(v) > 0; });
        }
        CHECK(contained);
      }
    }
    CHECK(runs >= 10);
  }

  TEST_CASE("small-diameter sets never hold two thirds of S") {
    Rng rng(29);
    int feasible = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const int l = 3 + static_cast<int>(rng.below(6));
      // Half the trials place S in tight clusters that are far apart, so
      // that small-diameter sets actually occur.
      std::vector<int> cluster(l);
      for (auto& c : cluster) c = static_cast<int>(rng.below(trial % 2 ? 3 : l));
      PairDistances d(l, std::vector<double>(l, 0.0));
      for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
          d[i][j] = d[j][i] = cluster[i] == cluster[j] ? rng.uniform() * 0.15 : 0.4 + rng.uniform() * 0.8;
      if (separate_spreading(d, 0.0)) continue;
      ++feasible;
      std::vector<Vertex> S(l);
      for (int i = 0; i < l; ++i) S[i] = i;
      std::vector<Vertex> U;
      const int pick = cluster[rng.below(l)];
      for (int i = 0; i < l; ++i)
        if (trial % 4 < 2 ? cluster[i] == pick : rng.bernoulli(0.7)) U.push_back(i);
      CHECK(check_radius_diameter(U, d, S));
      CHECK(check_radius_diameter({0}, d, S));
    }
    CHECK(feasible >= 50);
  }

  TEST_CASE("balls of radius 1/12 have diameter at most 1/6") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      const Graph g = random_graph(10, 0.4, 400 + trial);
      EdgeLengths x(g.edge_count());
      VertexWeights y(10);
      for (auto& v : x) v = rng.uniform() * 0.08;
      for (auto& v : y) v = rng.uniform() * 0.02;
      const auto d = all_pairs(g, x, y);
      const BallState st = BallProfile(Subgraph(g), x, y, 0, sum(x), 10, 1.0).at(1.0 / 12);
      for (Vertex a : st.ball)
        for (Vertex b : st.ball) CHECK(d[a][b] <= 1.0 / 6 + 1e-12);
    }
  }
}
