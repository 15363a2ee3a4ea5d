#include <bit>

#include "doctest.h"
#include "support.hpp"
#include "twi/instance_gen.hpp"
#include "twi/oracles.hpp"

using namespace twi;
using namespace twi::testing;

namespace {

// Largest w such that some S has no 1/2-separator of size < w, by brute force.
int brute_linkedness(const Graph& g) {
  const int n = g.vertex_count();
  int best = 0;
  for (std::uint32_t S = 1; S < (1u << n); ++S) {
    int smallest = n;
    for (std::uint32_t X = 0; X < (1u << n); ++X)
      if (std::popcount(X) < smallest && is_balanced_separator(g, S, X, 0.5))
        smallest = std::popcount(X);
    best = std::max(best, smallest);
  }
  return best;
}

}  // namespace

TEST_SUITE("exact-oracles") {
  TEST_CASE("named treewidths") {
    CHECK(exact_treewidth(path_graph(5)).width == 1);
    CHECK(exact_treewidth(cycle_graph(6)).width == 2);
    CHECK(exact_treewidth(complete_graph(5)).width == 4);
    CHECK(exact_treewidth(gen_grid(4)).width == 4);
    CHECK(exact_treewidth(Graph(3)).width == 0);
  }

  TEST_CASE("treewidth witness is valid and matches a brute-force order search") {
    for (const auto& [name, g] : small_graph_corpus()) {
      const auto r = exact_treewidth(g);
      CAPTURE(name);
      CHECK(r.width == brute_treewidth(g));
      CHECK(validate(r.witness, g).ok());
      CHECK(width(r.witness) == r.width);
    }
  }

  TEST_CASE("treewidth budget") {
    CHECK_THROWS_AS(exact_treewidth(gen_grid(5), {.max_vertices = 20}), BudgetExceeded);
  }

  TEST_CASE("independent sets") {
    CHECK(exact_mis(complete_graph(6)).size() == 1);
    CHECK(exact_mis(cycle_graph(5)).size() == 2);
    CHECK(exact_mis(gen_grid(5)).size() == 13);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Graph g = random_graph(14, 0.3, seed);
      const auto mis = exact_mis(g);
      CHECK(static_cast<int>(mis.size()) == brute_mis(g));
      for (std::size_t i = 0; i < mis.size(); ++i)
        for (std::size_t j = i + 1; j < mis.size(); ++j) CHECK_FALSE(g.has_edge(mis[i], mis[j]));
    }
  }

  TEST_CASE("max-sat") {
    CHECK(exact_maxsat({1, {{{0, true}}}}).satisfied == 1);
    CHECK(exact_maxsat({1, {{{0, true}}, {{0, false}}}}).satisfied == 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const CnfFormula phi = gen_planar_cnf(12, 14, 3, seed);
      const auto r = exact_maxsat(phi);
      CHECK(r.satisfied == brute_maxsat(phi));
      CHECK(count_satisfied(phi, r.assignment) == r.satisfied);
    }
  }

  TEST_CASE("balanced separators") {
    const Graph edge = path_graph(2);
    CHECK(exact_balanced_separator(edge, {0, 1}, 0.5).size() == 1);
    const Graph p3 = path_graph(3);
    CHECK(exact_balanced_separator(p3, {0, 1, 2}, 0.5) == std::vector<Vertex>{1});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = random_graph(7, 0.4, seed);
      std::vector<Vertex> S;
      std::uint32_t mask = 0;
      for (int v = 0; v < 7; ++v)
        if ((seed >> (v % 4)) & 1 || v == 0) S.push_back(v), mask |= 1u << v;
      const auto X = exact_balanced_separator(g, S, 0.5);
      std::uint32_t xmask = 0;
      for (Vertex v : X) xmask |= 1u << v;
      CHECK(is_balanced_separator(g, mask, xmask, 0.5));
      for (std::uint32_t Y = 0; Y < 128; ++Y)
        if (std::popcount(Y) < static_cast<int>(X.size())) CHECK_FALSE(is_balanced_separator(g, mask, Y, 0.5));
    }
  }

  TEST_CASE("linkedness matches a brute-force search") {
    int checked = 0;
    for (const auto& [name, g] : small_graph_corpus()) {
      if (g.vertex_count() > 6) continue;
      CAPTURE(name);
      CHECK(linkedness(g).link == brute_linkedness(g));
      ++checked;
    }
    CHECK(checked > 40);
  }

  TEST_CASE("interdiction") {
    // tw <= w-1 already: nothing to delete.
    CHECK(exact_interdiction(path_graph(6), 2).F.empty());
    // For w = 2 the target is a forest, so the optimum is the cycle rank;
    // for w = 1 the target is edgeless.
    for (const auto& [name, g] : small_graph_corpus()) {
      if (g.edge_count() > 12) continue;
      CAPTURE(name);
      const auto two = exact_interdiction(g, 2);
      CHECK(static_cast<int>(two.F.size()) == cycle_rank(g));
      CHECK(validate(two.certificate, remove_edges(g, two.F)).ok());
      CHECK(width(two.certificate) <= 1);
      CHECK(static_cast<int>(exact_interdiction(g, 1).F.size()) == g.edge_count());
    }
    CHECK(exact_interdiction(complete_graph(4), 2).F.size() == 3);
    CHECK(exact_interdiction(cycle_graph(4), 1).F.size() == 4);
    CHECK(exact_interdiction(complete_graph(5), 4).F.size() == 1);
  }

  TEST_CASE("planarity") {
    CHECK(is_planar(complete_graph(4)));
    CHECK_FALSE(is_planar(complete_graph(5)));
    CHECK_FALSE(is_planar(complete_bipartite(3, 3)));
    CHECK(is_planar(gen_grid(6)));
  }
}
