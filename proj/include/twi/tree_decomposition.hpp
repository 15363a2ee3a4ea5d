#pragma once

#include <string>
#include <vector>

#include "twi/graph.hpp"

namespace twi {

// Rooted tree of bags.  parent[i] == -1 marks the root; bags are sorted.
struct TreeDecomposition {
  std::vector<int> parent;
  std::vector<std::vector<Vertex>> bags;

  int node_count() const { return static_cast<int>(bags.size()); }
  int add_node(int parent_node, std::vector<Vertex> bag);
};

// Width = max bag size - 1 (so -1 for a decomposition with only empty bags).
int width(const TreeDecomposition& t);

struct ValidationReport {
  enum class Kind {
    ok,
    malformed_tree,
    vertex_out_of_range,
    vertex_missing,
    edge_uncovered,
    subtree_disconnected
  };
  Kind kind = Kind::ok;
  std::string message;
  Vertex vertex = -1;
  Edge edge{-1, -1};

  bool ok() const { return kind == Kind::ok; }
};

// Checks tree shape, that every vertex occurs, that every edge is covered and
// that each vertex's bags are connected.  Reports the first failure found in
// that order (edges and vertices scanned by increasing id).
ValidationReport validate(const TreeDecomposition& t, const Graph& g);

// Elimination-order construction: the bag of v is v plus its later
// neighbours in the fill-in graph.  Components are chained under one root.
TreeDecomposition decomposition_from_elimination_order(const Graph& g,
                                                       const std::vector<Vertex>& order);

// Greedy min-fill order (ties: smaller degree, then smaller id).  Vertices
// flagged in `last` are eliminated after all others.
std::vector<Vertex> min_fill_order(const Graph& g, const std::vector<char>& last = {});

TreeDecomposition heuristic_decomposition(const Graph& g);

// Same tree re-rooted at `node`.
TreeDecomposition reroot(const TreeDecomposition& t, int node);

// Merges every node whose bag is contained in a neighbour's bag.  Width and
// validity are preserved; afterwards the node count is at most |V| (or 1).
TreeDecomposition compress(const TreeDecomposition& t);

// Applies a vertex renaming; vertices mapped to -1 are dropped from bags.
TreeDecomposition remap(const TreeDecomposition& t, const std::vector<Vertex>& new_id);

// Replaces every leaf bag by a min-fill decomposition of the graph it
// induces in g, with the interface to the parent bag kept together.  Never
// increases the width.
TreeDecomposition refine_leaf_bags(const TreeDecomposition& t, const Graph& g);

enum class NiceKind { leaf, introduce, forget, join };

struct NiceNode {
  NiceKind kind = NiceKind::leaf;
  Vertex vertex = -1;  // for introduce / forget
  std::vector<int> children;
  std::vector<Vertex> bag;
};

// Children always precede their parent in `nodes`; the root has an empty bag.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  TreeDecomposition plain() const;
};

int width(const NiceTreeDecomposition& t);
NiceTreeDecomposition make_nice(const TreeDecomposition& t);

// One record per Interdict call.
struct TraceNode {
  int parent = -1;
  std::vector<Vertex> vertices;  // V(H)
  std::vector<EdgeId> edges;     // E(H) as ids of the input graph
  std::vector<Vertex> S;
  std::vector<Vertex> X;
  std::vector<EdgeId> D;
  std::vector<int> children;
  bool leaf = false;
  // S was widened beyond V(H) & (X_parent | S_parent): `seeded` when that
  // intersection was empty, `padded` when the child would have repeated its
  // parent exactly.
  bool seeded = false;
  bool padded = false;
};

struct RecursionTrace {
  std::vector<TraceNode> nodes;  // node 0 is the root call
};

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One tree node per trace node; internal bags are S | X, leaf bags V(H).
TreeDecomposition assemble(const RecursionTrace& trace);

}  // namespace twi
