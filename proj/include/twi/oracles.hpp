#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "twi/cnf.hpp"
#include "twi/graph.hpp"
#include "twi/tree_decomposition.hpp"

namespace twi {

// Hard caps; an oracle asked to go beyond them throws BudgetExceeded
// instead of running for an unbounded time.
struct OracleBudget {
  int max_vertices = 20;
  int max_edges = 20;
  int max_variables = 25;
  std::uint64_t max_subsets = std::uint64_t{1} << 26;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TreewidthResult {
  int width = -1;
  std::vector<Vertex> elimination_order;
  TreeDecomposition witness;
};

// Subset dynamic programme over elimination orders.
TreewidthResult exact_treewidth(const Graph& g, const OracleBudget& budget = {});

// Branch and bound; at most 64 vertices.
std::vector<Vertex> exact_mis(const Graph& g, const OracleBudget& budget = {.max_vertices = 64});

struct MaxSatResult {
  int satisfied = 0;
  std::vector<bool> assignment;
};
MaxSatResult exact_maxsat(const CnfFormula& phi, const OracleBudget& budget = {});

// Smallest X (ties: lexicographically first) such that every component of
// G - X holds at most alpha*|S| vertices of S.
std::vector<Vertex> exact_balanced_separator(const Graph& g, const std::vector<Vertex>& S,
                                             double alpha, const OracleBudget& budget = {});

struct LinkednessResult {
  int link = 0;
  std::vector<Vertex> witness;  // a link-linked set
};
// Largest w such that some S has no 1/2-separator smaller than w.
LinkednessResult linkedness(const Graph& g, const OracleBudget& budget = {.max_vertices = 10});

struct InterdictionOracleResult {
  std::vector<EdgeId> F;
  TreeDecomposition certificate;  // decomposition of G - F of width <= w-1
};
// Minimum F with tw(G - F) <= w - 1, by edge subsets of increasing size.
InterdictionOracleResult exact_interdiction(const Graph& g, int w,
                                            const OracleBudget& budget = {});

bool is_planar(const Graph& g);

}  // namespace twi
