#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twi/cnf.hpp"
#include "twi/graph.hpp"
#include "twi/lp.hpp"
#include "twi/tree_decomposition.hpp"

// Graph builders and brute-force checks shared by the unit and acceptance
// suites.  Nothing here calls into the solver under test, so the helpers
// can serve as independent references.
namespace twi::testing {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph complete_bipartite(int a, int b);
Graph wheel_graph(int rim);
Graph grid_graph(int rows, int cols);
Graph random_graph(int n, double p, std::uint64_t seed);

struct NamedGraph {
  std::string name;
  Graph graph;
};

// 200 graphs on at most 8 vertices: named families first, then seeded
// Erdos-Renyi graphs.  Fixed forever; tests depend on its exact contents.
const std::vector<NamedGraph>& small_graph_corpus();

// Components by breadth-first search over an edge list, each sorted, the
// list sorted by smallest member.
std::vector<std::vector<int>> bfs_components(int n, const std::vector<Edge>& edges);

// Number of edges minus the size of a spanning forest.
int cycle_rank(const Graph& g);

// All edge subsets F (as bitmasks over edge ids) with tw(G - F) <= w - 1,
// decided by an elimination-order search written for the tests.
std::vector<std::uint32_t> feasible_interdictions(const Graph& g, int w);

// Treewidth by brute force over elimination orders (memoised on the set of
// eliminated vertices).  At most 12 vertices.
int brute_treewidth(const Graph& g);

// Indicator vector of an edge bitmask.
std::vector<double> indicator(const Graph& g, std::uint32_t mask);

// Maximum independent set size by bitmask branching, at most 64 vertices.
int brute_mis(const Graph& g);

// Best clause count over all assignments, at most 20 variables.
int brute_maxsat(const CnfFormula& phi);

// Every component of G - X holds at most alpha*|S| vertices of S.
bool is_balanced_separator(const Graph& g, std::uint32_t S, std::uint32_t X, double alpha);

}  // namespace twi::testing
