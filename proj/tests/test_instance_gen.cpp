#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "twi/instance_gen.hpp"
#include "twi/oracles.hpp"

using namespace twi;
using namespace twi::testing;

namespace {

std::vector<Edge> noise_only(const NoisyGraph& ng) { return ng.noisy_edges; }

}  // namespace

TEST_SUITE("instance-gen") {
  TEST_CASE("grid shape") {
    const Graph g = gen_grid(4);
    CHECK(g.vertex_count() == 16);
    CHECK(g.edge_count() == 24);
    CHECK(g == grid_graph(4, 4));
  }

  TEST_CASE("three points give at most a triangle") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Graph g = gen_random_planar(3, seed);
      CHECK(g.vertex_count() == 3);
      CHECK(g.edge_count() >= 2);
      CHECK(g.edge_count() <= 3);
    }
  }

  TEST_CASE("planar generator is deterministic") {
    CHECK(gen_random_planar(40, 9) == gen_random_planar(40, 9));
    CHECK(gen_planar_cnf(15, 12, 3, 4) == gen_planar_cnf(15, 12, 3, 4));
  }

  TEST_CASE("planar generator output is planar and connected") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Graph g = gen_random_planar(5 + seed % 40, seed);
      CHECK(is_planar(g));
      CHECK(bfs_components(g.vertex_count(), g.edges()).size() == 1);
    }
  }

  TEST_CASE("Delaunay triangle count follows Euler's formula") {
    // A triangulation of n points with h on the hull has 2n - 2 - h faces.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = gen_random_planar(30, seed, 1.0);
      const int n = g.vertex_count(), m = g.edge_count();
      const int hull = 3 * n - 3 - m;
      CHECK(hull >= 3);
      CHECK(is_planar(g));
    }
  }

  TEST_CASE("zero noise leaves the graph unchanged") {
    const Graph g = gen_grid(5);
    const NoisyGraph ng = add_noise_edges(g, {0.0, 3, NoiseMode::uniform});
    CHECK(ng.graph == g);
    CHECK(ng.noisy_edges.empty());
  }

  TEST_CASE("uniform noise adds exactly floor(delta n) new edges") {
    const Graph g = gen_random_planar(100, 1);
    const NoisyGraph ng = add_noise_edges(g, {0.1, 5, NoiseMode::uniform});
    CHECK(ng.noisy_edges.size() == 10);
    CHECK(ng.graph.edge_count() == g.edge_count() + 10);
    for (const auto& e : ng.noisy_edges) {
      CHECK_FALSE(g.has_edge(e.u, e.v));
      CHECK(ng.graph.has_edge(e.u, e.v));
    }
  }

  TEST_CASE("expander noise forms one connected patch of average degree near three") {
    const Graph g = gen_random_planar(100, 2);
    const NoisyGraph ng = add_noise_edges(g, {0.1, 8, NoiseMode::expander});
    const auto noisy = noise_only(ng);
    REQUIRE(noisy.size() == 10);
    std::set<int> touched;
    for (const auto& e : noisy) touched.insert(e.u), touched.insert(e.v);
    const std::vector<int> ids(touched.begin(), touched.end());
    std::vector<Edge> local;
    for (const auto& e : noisy) {
      const int a = std::lower_bound(ids.begin(), ids.end(), e.u) - ids.begin();
      const int b = std::lower_bound(ids.begin(), ids.end(), e.v) - ids.begin();
      local.push_back({a, b});
    }
    CHECK(bfs_components(static_cast<int>(ids.size()), local).size() == 1);
    const double avg_degree = 2.0 * noisy.size() / ids.size();
    CHECK(avg_degree >= 2.5);
    CHECK(avg_degree <= 3.5);
  }

  TEST_CASE("clustered noise has the requested count") {
    const Graph g = gen_grid(6);
    const NoisyGraph ng = add_noise_edges(g, {0.1, 4, NoiseMode::clustered});
    CHECK(ng.noisy_edges.size() == 3);
    CHECK(ng.graph.edge_count() == g.edge_count() + 3);
  }

  TEST_CASE("single clause formula") {
    const CnfFormula phi = gen_planar_cnf(4, 1, 3, 0);
    CHECK(phi.clause_count() == 1);
    CHECK(is_planar(build_factor_graph(phi)));
  }

  TEST_CASE("planar CNF has a planar factor graph") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const int k = 2 + seed % 2;
      const CnfFormula phi = gen_planar_cnf(16, 18, k, seed);
      CHECK(phi.clause_count() == 18);
      CHECK(phi.max_arity() == k);
      CHECK(is_planar(build_factor_graph(phi)));
    }
  }

  TEST_CASE("infeasible CNF parameters are rejected") {
    CHECK_THROWS_AS(gen_planar_cnf(5, 40, 3, 0), std::invalid_argument);
  }

  TEST_CASE("noisy clauses have full arity and the forced count") {
    const CnfFormula phi = gen_planar_cnf(16, 20, 3, 3);
    const NoisyFormula nf = add_noise_clauses(phi, {0.1, 6, NoiseMode::uniform});
    CHECK(nf.noisy_clauses.size() == 2);
    CHECK(nf.formula.clause_count() == 22);
    for (int c : nf.noisy_clauses) {
      std::set<int> vars;
      for (const auto& lit : nf.formula.clauses[c]) vars.insert(lit.var);
      CHECK(vars.size() == 3);
    }
    for (int c = 0; c < phi.clause_count(); ++c)
      if (!std::count(nf.noisy_clauses.begin(), nf.noisy_clauses.end(), c))
        CHECK(std::count(phi.clauses.begin(), phi.clauses.end(), nf.formula.clauses[c]) == 1);
  }
}
